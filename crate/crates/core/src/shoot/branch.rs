//! Continuation of the bifurcating branches of `-u'' = lambda f(u)` and the
//! nodal solutions they carry across `lambda = 1`.
//!
//! The unknowns are `X = (lambda, c, d)` and the equations are the two
//! boundary residuals. The curve leaves the trivial branch at
//! `(lambda_k / f0, 0, 0)` along the linear eigenfunction. Points are
//! advanced by a secant predictor and a Newton corrector on the augmented
//! system `F(X) = 0`, `tau . (X - X_pred) = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::profile::JumpingProfile;
use crate::shoot::forcing::Nonlinearity;
use crate::shoot::integrate::Trajectory;
use crate::shoot::solve::{shoot, trajectory_nodal_class, ShootOptions, ShootingState, Solution};
use crate::spectrum;
use crate::Sign;

/// Starting offset `|d|` along the eigenfunction.
pub const START_OFFSET: f64 = 1e-3;
/// Continuation stops once the amplitude exceeds this.
pub const AMPLITUDE_CAP: f64 = 1e6;
pub const MIN_STEP: f64 = 1e-8;
pub const MAX_STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub lambda: f64,
    pub amplitude: f64,
    pub c: f64,
    pub d: f64,
}

struct Branch<'a> {
    spec: &'a ProblemSpec,
    nl: &'a Nonlinearity,
    breaks: Vec<f64>,
    opts: ShootOptions,
}

impl Branch<'_> {
    fn eval(&self, x: [f64; 3]) -> Option<(Trajectory, ShootingState)> {
        let [lambda, c, d] = x;
        let rhs = |_: f64, u: f64| lambda * self.nl.eval(u);
        shoot(self.spec, &rhs, &self.breaks, c, d, self.opts.step).ok()
    }

    fn converged(&self, traj: &Trajectory, st: &ShootingState) -> bool {
        st.max_residual() <= self.opts.tol * (1.0 + traj.amplitude())
    }

    /// Newton on `F(X) = 0` plus one linear constraint `row . X = rhs`.
    fn correct(&self, mut x: [f64; 3], row: [f64; 3], rhs: f64) -> Option<([f64; 3], Trajectory, usize)> {
        let (mut traj, mut st) = self.eval(x)?;
        for it in 0..self.opts.max_iter {
            let g = dot(row, x) - rhs;
            if self.converged(&traj, &st) && g.abs() <= 1e-12 * (1.0 + norm(x)) {
                return Some((x, traj, it));
            }
            let eps = self.opts.fd_rel * (1.0 + x[1].abs() + x[2].abs());
            let mut jac = [[0.0; 3]; 3];
            for j in 0..3 {
                let mut xp = x;
                xp[j] += eps;
                let (_, sp) = self.eval(xp)?;
                jac[0][j] = (sp.residual_minus - st.residual_minus) / eps;
                jac[1][j] = (sp.residual_plus - st.residual_plus) / eps;
            }
            jac[2] = row;
            let dx = solve_3x3(jac, [st.residual_minus, st.residual_plus, g])?;
            for j in 0..3 {
                x[j] -= dx[j];
            }
            (traj, st) = self.eval(x)?;
        }
        (self.converged(&traj, &st) && (dot(row, x) - rhs).abs() <= 1e-10 * (1.0 + norm(x))).then_some((x, traj, self.opts.max_iter))
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

fn solve_3x3(m: [[f64; 3]; 3], r: [f64; 3]) -> Option<[f64; 3]> {
    let mut a = [[0.0; 4]; 3];
    for i in 0..3 {
        a[i][..3].copy_from_slice(&m[i]);
        a[i][3] = r[i];
    }
    let scale = m.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs()));
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if !(a[piv][col].abs() > 1e-14 * scale) {
            return None;
        }
        a.swap(col, piv);
        let pivot_row = a[col];
        for row in a.iter_mut().skip(col + 1) {
            let f = row[col] / pivot_row[col];
            for (v, p) in row.iter_mut().zip(pivot_row).skip(col) {
                *v -= f * p;
            }
        }
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let s: f64 = (i + 1..3).map(|j| a[i][j] * x[j]).sum();
        x[i] = (a[i][3] - s) / a[i][i];
    }
    Some(x)
}

fn point(x: [f64; 3], traj: &Trajectory) -> BranchPoint {
    BranchPoint {
        lambda: x[0],
        amplitude: traj.amplitude(),
        c: x[1],
        d: x[2],
    }
}

fn check_inputs(spec: &ProblemSpec, nl: &Nonlinearity, k: usize) -> Result<f64> {
    spec.require_cone()?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    match nl.f0() {
        Some(f0) if f0 > 0.0 => Ok(f0),
        _ => Err(Error::InvalidArgument(format!("{} needs a positive f0", nl.name()))),
    }
}

/// Traces the branch until `max_steps` points, the amplitude cap, or `stop`
/// returns true for a pair of consecutive points.
fn trace(
    spec: &ProblemSpec,
    nl: &Nonlinearity,
    k: usize,
    nu: Sign,
    max_steps: usize,
    stop: impl Fn(&BranchPoint, &BranchPoint) -> bool,
) -> Result<Vec<BranchPoint>> {
    let f0 = check_inputs(spec, nl, k)?;
    let br = Branch {
        spec,
        nl,
        breaks: spec.all_nodes().collect(),
        opts: ShootOptions::default(),
    };
    let lin = spectrum::half_eigenvalue(spec, 1.0, 1.0, k, nu)?;
    let p = JumpingProfile::new(1.0, 1.0)?;
    let (w0, dw0) = p.w(lin.s, lin.delta, -1.0);
    let scale = START_OFFSET / dw0.abs();
    let lambda0 = lin.lambda / f0;

    // two seeds at fixed d give the first secant
    let mut pts = Vec::new();
    let mut xs = Vec::new();
    for m in [1.0, 2.0] {
        let guess = [lambda0, m * scale * w0, m * scale * dw0];
        let (x, traj, _) = br
            .correct(guess, [0.0, 0.0, 1.0], guess[2])
            .ok_or(Error::BranchLost { lambda: lambda0, step: 0.0 })?;
        if trajectory_nodal_class(&traj) != (k, nu) {
            return Err(Error::BranchLost { lambda: x[0], step: 0.0 });
        }
        pts.push(point(x, &traj));
        xs.push(x);
    }

    let mut step = (10.0 * START_OFFSET).min(MAX_STEP);
    while pts.len() < max_steps {
        let n = xs.len();
        let (x0, x1) = (xs[n - 2], xs[n - 1]);
        let sec = [x1[0] - x0[0], x1[1] - x0[1], x1[2] - x0[2]];
        let len = norm(sec);
        let tau = [sec[0] / len, sec[1] / len, sec[2] / len];
        let accepted = loop {
            let pred = [x1[0] + step * tau[0], x1[1] + step * tau[1], x1[2] + step * tau[2]];
            let ok = br
                .correct(pred, tau, dot(tau, pred))
                .filter(|(_, traj, _)| trajectory_nodal_class(traj) == (k, nu));
            match ok {
                Some(found) => break found,
                None => {
                    step *= 0.5;
                    if step < MIN_STEP {
                        return Err(Error::BranchLost { lambda: x1[0], step });
                    }
                }
            }
        };
        let (x, traj, iters) = accepted;
        let bp = point(x, &traj);
        let done = stop(&pts[n - 1], &bp) || bp.amplitude > AMPLITUDE_CAP;
        pts.push(bp);
        xs.push(x);
        if done {
            break;
        }
        if iters <= 3 {
            step = (step * 1.5).min(MAX_STEP);
        }
    }
    Ok(pts)
}

/// Points along the branch bifurcating from `(lambda_k / f0, 0)` whose
/// solutions have nodal class `(k, nu)`.
pub fn continue_branch(spec: &ProblemSpec, nl: &Nonlinearity, k: usize, nu: Sign, max_steps: usize) -> Result<Vec<BranchPoint>> {
    trace(spec, nl, k, nu, max_steps, |_, _| false)
}

/// A solution of `-u'' = f(u)` with nodal class `(k, nu)`.
///
/// Exists when `(lambda_k / f0 - 1)(lambda_{k,nu}(f_inf, f_-inf) - 1) < 0`;
/// found by following the branch until it crosses `lambda = 1`.
pub fn find_nodal(spec: &ProblemSpec, nl: &Nonlinearity, k: usize, nu: Sign, max_steps: usize) -> Result<Solution> {
    let f0 = check_inputs(spec, nl, k)?;
    if !nl.sign_condition_holds() {
        return Err(Error::InvalidArgument(format!("{} violates s f(s) > 0", nl.name())));
    }
    let lambda_k = spectrum::half_eigenvalue(spec, 1.0, 1.0, k, nu)?.lambda;
    let at_infinity = spectrum::half_eigenvalue(spec, nl.f_plus_inf(), nl.f_minus_inf(), k, nu)?.lambda;
    let product = (lambda_k / f0 - 1.0) * (at_infinity - 1.0);
    if product >= 0.0 {
        return Err(Error::ConditionFails { k, nu, product });
    }
    let pts = trace(spec, nl, k, nu, max_steps, |a, b| (a.lambda - 1.0) * (b.lambda - 1.0) <= 0.0)?;
    let n = pts.len();
    let (a, b) = (pts[n - 2], pts[n - 1]);
    if (a.lambda - 1.0) * (b.lambda - 1.0) > 0.0 {
        return Err(Error::BranchLost { lambda: b.lambda, step: 0.0 });
    }
    let t = if a.lambda == b.lambda { 0.0 } else { (1.0 - a.lambda) / (b.lambda - a.lambda) };
    let guess = [1.0, a.c + t * (b.c - a.c), a.d + t * (b.d - a.d)];
    let br = Branch {
        spec,
        nl,
        breaks: spec.all_nodes().collect(),
        opts: ShootOptions::default(),
    };
    let (x, traj, _) = br
        .correct(guess, [1.0, 0.0, 0.0], 1.0)
        .ok_or(Error::BranchLost { lambda: 1.0, step: 0.0 })?;
    if trajectory_nodal_class(&traj) != (k, nu) {
        return Err(Error::BranchLost { lambda: 1.0, step: 0.0 });
    }
    let (_, state) = br.eval(x).ok_or(Error::BlowUp { x: 1.0 })?;
    Ok(Solution { state, trajectory: traj })
}
