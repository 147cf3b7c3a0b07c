//! Golden checks of the two boundary-data examples outside the cone `A_+`.
//!
//! The first has an explicit half-eigenfunction with a critical point at
//! `x = 1`, so it sits on the boundary of `T_{1,+}`. The second has no
//! half-eigenfunction in `T_{2,+}` at all.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::profile::JumpingProfile;
use crate::spectrum;
use crate::Sign;

pub const EXPLICIT_TOL: f64 = 1e-12;
pub const SCAN_DELTA: f64 = 0.05;
pub const SCAN_S_MAX: f64 = 200.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn within(name: &str, error: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            passed: error <= tol,
            detail: format!("error {error:.3e} (tol {tol:.0e})"),
        }
    }
}

/// The explicit half-eigenfunction: a `2 pi / 3` sine up to `x = 1/2`,
/// then a `pi` cosine arc. Returns `(phi, phi', phi'')`.
pub fn boundary_example_phi(x: f64) -> (f64, f64, f64) {
    let g = 2.0 * PI / 3.0;
    if x < 0.5 {
        let t = g * (x + 1.0);
        (t.sin() / g, t.cos(), -g * t.sin())
    } else {
        let t = PI * (x - 1.0);
        (-t.cos() / PI, t.sin(), PI * t.cos())
    }
}

fn boundary_example_problem() -> Result<ProblemSpec> {
    ProblemSpec::new(vec![], vec![], vec![-2.0 / 3.0], vec![-0.25])
}

pub fn boundary_example_checks() -> Result<Vec<Check>> {
    let (a, b) = ((2.0 * PI / 3.0).powi(2), PI * PI);
    let phi = boundary_example_phi;
    let grid: Vec<f64> = (0..=400).map(|i| -1.0 + i as f64 / 200.0).collect();

    // -phi'' = a phi^+ - b phi^- on each piece
    let ode = grid
        .iter()
        .map(|&x| {
            let (u, _, upp) = phi(x);
            (-upp - (a * u.max(0.0) - b * (-u).max(0.0))).abs()
        })
        .fold(0.0, f64::max);

    let left = {
        let g = 2.0 * PI / 3.0;
        let t = g * 1.5;
        (t.sin() / g, t.cos())
    };
    let right = phi(0.5);
    let join = (left.0 - right.0).abs().max((left.1 - right.1).abs());

    let spec = boundary_example_problem()?;
    let (u1, du1, _) = phi(1.0);
    let bc_rhs = -2.0 / 3.0 * phi(-0.25).0;
    let bc = spec.plus().residual(u1, |x| phi(x).0).abs();

    // the same function as a translate of the jumping profile
    let p = JumpingProfile::from_coefficients(a, b)?;
    let delta = p.phase(-1.0);
    let profile = grid
        .iter()
        .map(|&x| (p.w_value(1.0, delta, x) - phi(x).0).abs())
        .fold(0.0, f64::max);
    let on_boundary = matches!(p.nodal_class(1.0, delta), Err(Error::BoundaryCriticalPoint { endpoint }) if endpoint == 1.0);

    Ok(vec![
        Check::within("boundary example: ODE on both pieces", ode, EXPLICIT_TOL),
        Check::within("boundary example: C1 join at x = 1/2", join, EXPLICIT_TOL),
        Check::within("boundary example: phi(1) = -1/pi", (u1 + 1.0 / PI).abs(), EXPLICIT_TOL),
        Check::within("boundary example: -(2/3) phi(-1/4) = -1/pi", (bc_rhs + 1.0 / PI).abs(), EXPLICIT_TOL),
        Check::within("boundary example: three-point condition", bc, EXPLICIT_TOL),
        Check::within("boundary example: phi(-1) = 0", phi(-1.0).0.abs(), EXPLICIT_TOL),
        Check::within("boundary example: phi'(1) = 0", du1.abs(), EXPLICIT_TOL),
        Check::within("boundary example: matches profile translate", profile, EXPLICIT_TOL),
        Check {
            name: "boundary example: critical point at x = 1".into(),
            passed: on_boundary,
            detail: format!("{:?}", p.nodal_class(1.0, delta)),
        },
    ])
}

/// Coefficients and boundary data of the missing-eigenfunction example.
pub fn missing_example_problem(delta: f64) -> Result<(ProblemSpec, f64, f64)> {
    let spec = ProblemSpec::new(vec![], vec![], vec![-0.5], vec![0.0])?;
    Ok((spec, (PI / 2.0 + delta).powi(2), delta.powi(-2)))
}

pub fn missing_example_check(delta: f64, s_max: f64) -> Result<Check> {
    let (spec, a, b) = missing_example_problem(delta)?;
    let roots = spectrum::scan_half_eigenvalues(&spec, a, b, s_max)?;
    let hits: Vec<f64> = roots
        .iter()
        .filter(|r| r.class == Some((2, Sign::Plus)))
        .map(|r| r.lambda)
        .collect();
    Ok(Check {
        name: format!("missing example: no (2,+) half-eigenvalue for s in (0, {s_max}] at delta = {delta}"),
        passed: hits.is_empty(),
        detail: format!("{} roots scanned, (2,+) hits at lambda = {hits:?}", roots.len()),
    })
}

/// All golden checks, in a fixed order.
pub fn run_all() -> Result<Vec<Check>> {
    let mut out = boundary_example_checks()?;
    out.push(missing_example_check(SCAN_DELTA, SCAN_S_MAX)?);
    Ok(out)
}
