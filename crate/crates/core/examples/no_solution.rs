// A step forcing that leaves the half-linear problem without solutions,
// and the same step with the opposite sign, which does not.
//
//     cargo run --release --example no_solution

use jumpspec::shoot::{lattice_starts, solve_halflinear, Forcing, ShootOptions};
use jumpspec::solvability::{nonsolvable_forcing, ForcingFunction};
use jumpspec::ProblemSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ProblemSpec::dirichlet();
    let (a, b, lambda) = (4.0, 1.0, 1.0);
    let h = nonsolvable_forcing(&spec, a, b, lambda)?;
    println!("step forcing: h = {} on [{}, 1]", h.level, h.x0);

    let starts = lattice_starts(11, 10.0);
    let opts = ShootOptions::default();
    let none = solve_halflinear(&spec, a, b, lambda, &Forcing::Step(h), &starts, &opts)?;
    println!("solutions found: {}", none.len());

    let flipped = Forcing::Step(ForcingFunction { x0: h.x0, level: -h.level });
    for s in solve_halflinear(&spec, a, b, lambda, &flipped, &starts, &opts)? {
        println!("opposite sign: u'(-1) = {:+.6}, max |u| = {:.6}", s.state.d, s.trajectory.amplitude());
    }
    Ok(())
}
