// Two distinct solutions for a sign-definite forcing in a split interval.
//
//     cargo run --release --example multiplicity

use std::f64::consts::FRAC_PI_2;

use jumpspec::shoot::{default_starts, solve_halflinear, trajectory_nodal_class, Forcing, ShootOptions};
use jumpspec::ProblemSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ProblemSpec::dirichlet();
    let h = Forcing::custom(|x| -(FRAC_PI_2 * x).cos());
    let sols = solve_halflinear(&spec, 4.0, 1.0, 1.0, &h, &default_starts(), &ShootOptions::default())?;
    for (i, s) in sols.iter().enumerate() {
        let (k, nu) = trajectory_nodal_class(&s.trajectory);
        println!(
            "#{i}: u(-1) = {:.1e}, u'(-1) = {:+.8}, u(0) = {:+.8}, derivative class ({k},{nu})",
            s.state.c,
            s.state.d,
            s.trajectory.value_at(0.0)
        );
    }
    Ok(())
}
