// Follows the branch bifurcating from lambda_1 / f'(0) and reads off a
// positive solution of -u'' = f(u) where it crosses lambda = 1.
//
//     cargo run --release --example nodal_branch

use jumpspec::shoot::{continue_branch, find_nodal, Nonlinearity};
use jumpspec::{ProblemSpec, Sign};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ProblemSpec::dirichlet();
    let nl = Nonlinearity::rational_bump(10.0, 1.0)?;
    let pts = continue_branch(&spec, &nl, 1, Sign::Plus, 60)?;
    for p in pts.iter().step_by(6) {
        println!("lambda = {:.6}, max |u| = {:.6}", p.lambda, p.amplitude);
    }
    let sol = find_nodal(&spec, &nl, 1, Sign::Plus, 2000)?;
    println!(
        "at lambda = 1: u'(-1) = {:.10}, max |u| = {:.10}, residual {:.1e}",
        sol.state.d,
        sol.trajectory.amplitude(),
        sol.state.max_residual()
    );
    Ok(())
}
