//! Two-parameter shooting from `x = -1` with damped Newton on `(c, d)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::shoot::forcing::{Forcing, Nonlinearity};
use crate::shoot::integrate::{integrate_with_breaks, Trajectory};
use crate::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingState {
    /// `u(-1)`.
    pub c: f64,
    /// `u'(-1)`.
    pub d: f64,
    pub residual_minus: f64,
    pub residual_plus: f64,
}

impl ShootingState {
    pub fn max_residual(&self) -> f64 {
        self.residual_minus.abs().max(self.residual_plus.abs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub state: ShootingState,
    pub trajectory: Trajectory,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootOptions {
    /// Nominal RK4 step.
    pub step: f64,
    pub max_iter: usize,
    /// Convergence when `max |R| <= tol * (1 + amplitude)`.
    pub tol: f64,
    /// Convergence also needs the last Newton step below `step_tol * (1 + |c| + |d|)`.
    pub step_tol: f64,
    /// Finite-difference perturbation relative to `1 + |c| + |d|`.
    pub fd_rel: f64,
    /// Halvings of the Newton step before a trial is abandoned.
    pub max_halvings: usize,
    /// Solutions closer than `dedup_tol * (1 + amplitude)` in sup-distance are merged.
    pub dedup_tol: f64,
    pub dedup_points: usize,
}

impl Default for ShootOptions {
    fn default() -> Self {
        ShootOptions {
            step: 2e-3,
            max_iter: 40,
            tol: 1e-10,
            step_tol: 1e-9,
            fd_rel: 1e-7,
            max_halvings: 12,
            dedup_tol: 1e-6,
            dedup_points: 201,
        }
    }
}

/// `n x n` equispaced starts over `[-half_width, half_width]^2`.
pub fn lattice_starts(n: usize, half_width: f64) -> Vec<(f64, f64)> {
    let coord = |i: usize| {
        if n == 1 {
            0.0
        } else {
            -half_width + 2.0 * half_width * i as f64 / (n - 1) as f64
        }
    };
    (0..n).flat_map(|i| (0..n).map(move |j| (coord(i), coord(j)))).collect()
}

/// The default multistart lattice: 21 x 21 over `[-10, 10]^2`.
pub fn default_starts() -> Vec<(f64, f64)> {
    lattice_starts(21, 10.0)
}

/// Integrates `u'' = -rhs(x, u)` and evaluates both boundary residuals.
/// Boundary nodes are integration breakpoints, so `u(eta)` is read off the grid.
pub(crate) fn shoot(
    spec: &ProblemSpec,
    rhs: &(impl Fn(f64, f64) -> f64 + Sync),
    breaks: &[f64],
    c: f64,
    d: f64,
    step: f64,
) -> Result<(Trajectory, ShootingState)> {
    let traj = integrate_with_breaks(rhs, c, d, step, breaks)?;
    let u = |x: f64| traj.value_at(x);
    let residual_minus = spec.minus().residual(c, u);
    let residual_plus = spec.plus().residual(traj.endpoint().0, u);
    Ok((
        traj,
        ShootingState {
            c,
            d,
            residual_minus,
            residual_plus,
        },
    ))
}

fn breakpoints(spec: &ProblemSpec, h: &Forcing) -> Vec<f64> {
    let mut b: Vec<f64> = spec.all_nodes().chain(h.breakpoints()).collect();
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

fn solve_2x2(j: [[f64; 2]; 2], r: [f64; 2]) -> Option<[f64; 2]> {
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let scale = j.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if !(det.abs() > 1e-300 && det.abs() > 1e-14 * scale * scale) {
        return None;
    }
    Some([
        (r[0] * j[1][1] - r[1] * j[0][1]) / det,
        (j[0][0] * r[1] - j[1][0] * r[0]) / det,
    ])
}

/// Damped Newton from one start; `None` when the iteration fails.
///
/// Convergence needs a small residual and a small last step, so that
/// ill-conditioned problems are not stopped far from the root.
fn newton(
    spec: &ProblemSpec,
    rhs: &(impl Fn(f64, f64) -> f64 + Sync),
    breaks: &[f64],
    start: (f64, f64),
    opts: &ShootOptions,
) -> Option<Solution> {
    let run = |c: f64, d: f64| shoot(spec, rhs, breaks, c, d, opts.step).ok();
    let (mut traj, mut state) = run(start.0, start.1)?;
    let mut last_step = f64::INFINITY;
    for _ in 0..=opts.max_iter {
        let norm = state.max_residual();
        let (c, d) = (state.c, state.d);
        let small = norm <= opts.tol * (1.0 + traj.amplitude());
        if small && (norm == 0.0 || last_step <= opts.step_tol * (1.0 + c.abs() + d.abs())) {
            return Some(Solution { state, trajectory: traj });
        }
        let eps = opts.fd_rel * (1.0 + c.abs() + d.abs());
        let (_, sc) = run(c + eps, d)?;
        let (_, sd) = run(c, d + eps)?;
        let jac = [
            [
                (sc.residual_minus - state.residual_minus) / eps,
                (sd.residual_minus - state.residual_minus) / eps,
            ],
            [
                (sc.residual_plus - state.residual_plus) / eps,
                (sd.residual_plus - state.residual_plus) / eps,
            ],
        ];
        let Some([dc, dd]) = solve_2x2(jac, [state.residual_minus, state.residual_plus]) else {
            return small.then_some(Solution { state, trajectory: traj });
        };
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            if let Some((tr, st)) = run(c - t * dc, d - t * dd) {
                if st.max_residual() < norm {
                    accepted = Some((tr, st));
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some(next) => (traj, state) = next,
            // stalled at round-off
            None => return small.then_some(Solution { state, trajectory: traj }),
        }
        last_step = t * dc.abs().max(dd.abs());
    }
    None
}

fn dedup(found: Vec<Solution>, opts: &ShootOptions) -> Vec<Solution> {
    let mut out: Vec<Solution> = Vec::new();
    for s in found {
        let amp = s.trajectory.amplitude();
        let dup = out.iter().any(|o| {
            let scale = 1.0 + amp.max(o.trajectory.amplitude());
            s.trajectory.sup_distance(&o.trajectory, opts.dedup_points) < opts.dedup_tol * scale
        });
        if !dup {
            out.push(s);
        }
    }
    out
}

/// Runs Newton from every start in parallel and returns the distinct
/// converged solutions, in order of first discovery.
pub fn solve_with(
    spec: &ProblemSpec,
    rhs: impl Fn(f64, f64) -> f64 + Sync,
    breaks: &[f64],
    starts: &[(f64, f64)],
    opts: &ShootOptions,
) -> Result<Vec<Solution>> {
    if starts.is_empty() {
        return Err(Error::InvalidArgument("no shooting starts".into()));
    }
    let found: Vec<Solution> = starts
        .par_iter()
        .filter_map(|&s| newton(spec, &rhs, breaks, s, opts))
        .collect();
    Ok(dedup(found, opts))
}

/// Solutions of `-u'' = lambda (a u^+ - b u^-) + h` with the boundary
/// conditions of `spec`. An empty result means none was found from `starts`,
/// not that none exists.
pub fn solve_halflinear(
    spec: &ProblemSpec,
    a: f64,
    b: f64,
    lambda: f64,
    h: &Forcing,
    starts: &[(f64, f64)],
    opts: &ShootOptions,
) -> Result<Vec<Solution>> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidArgument(format!("a and b must be positive, got {a} and {b}")));
    }
    let rhs = |x: f64, u: f64| lambda * (a * u.max(0.0) - b * (-u).max(0.0)) + h.eval(x);
    solve_with(spec, rhs, &breakpoints(spec, h), starts, opts)
}

/// Solutions of `-u'' = f(u) + h`.
pub fn solve_nonlinear(
    spec: &ProblemSpec,
    nl: &Nonlinearity,
    h: &Forcing,
    starts: &[(f64, f64)],
    opts: &ShootOptions,
) -> Result<Vec<Solution>> {
    let rhs = |x: f64, u: f64| nl.eval(u) + h.eval(x);
    solve_with(spec, rhs, &breakpoints(spec, h), starts, opts)
}

/// `(k, nu)`: sign changes of the sampled derivative inside `(-1, 1)` and
/// the sign of `u'(-1)`.
pub fn trajectory_nodal_class(t: &Trajectory) -> (usize, Sign) {
    let der = t.derivatives();
    let n = der.len();
    let mut k = 0;
    let mut last = 0.0;
    for &v in &der[..n - 1] {
        if v != 0.0 {
            if last * v < 0.0 {
                k += 1;
            }
            last = v;
        }
    }
    (k, Sign::of(der[0]))
}
