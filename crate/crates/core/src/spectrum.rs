//! Half-eigenvalues `lambda_{k,nu}(a, b)` and their half-eigenfunctions.
//!
//! With `lambda = s^2`, a half-eigenfunction is a translate `w(s, delta)` that
//! satisfies both boundary conditions. The phase roots of the left condition
//! give two branches `s -> delta_nu(s)`; half-eigenvalues are the zeros of the
//! right residual along each branch. The enumeration sweeps `s` over a bracket
//! large enough to contain every nodal class up to `k_max`, bisects each sign
//! change, and classifies the resulting eigenfunction.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::profile::{JumpingProfile, PhasePoint};
use crate::residual::{self, DeltaRoots, RootOptions};
use crate::Sign;

pub const RESIDUAL_TOL: f64 = 1e-11;
/// Relative gap below which `lambda_{k,+}` and `lambda_{k,-}` count as equal.
pub const COINCIDENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfEigenvalue {
    pub k: usize,
    pub nu: Sign,
    pub lambda: f64,
    pub s: f64,
    pub delta: PhasePoint,
    /// `|Gamma^+|` at the accepted root.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    pub roots: RootOptions,
    pub residual_tol: f64,
    /// How many times the sweep step may be halved before giving up.
    pub refinements: u32,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            roots: RootOptions::default(),
            residual_tol: RESIDUAL_TOL,
            refinements: 3,
        }
    }
}

/// A zero of `s -> Gamma^+(s, delta_nu(s))` located by the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchRoot {
    pub nu: Sign,
    pub s: f64,
    pub delta: PhasePoint,
    pub residual: f64,
}

/// Sweep step that keeps consecutive samples within a quarter bump.
pub fn sweep_step(p: &JumpingProfile) -> f64 {
    PI / (8.0 * p.gamma_max())
}

/// Upper end of the sweep: every function in `T_k` with `k <= k_max`
/// has `s` below it.
pub fn sweep_upper(p: &JumpingProfile, k_max: usize) -> f64 {
    1.05 * (k_max as f64 + 2.0) * PI / (2.0 * p.gamma_min())
}

fn sweep_points(step: f64, s_max: f64) -> Vec<f64> {
    let mut pts: Vec<f64> = (1..=30).rev().map(|j| step * 0.5f64.powi(j)).collect();
    let n = (s_max / step).ceil() as usize;
    pts.extend((1..=n).map(|i| i as f64 * step));
    pts
}

struct Sample {
    s: f64,
    roots: DeltaRoots,
    g: [f64; 2],
}

fn branch_values(p: &JumpingProfile, roots: &DeltaRoots, spec: &ProblemSpec) -> [f64; 2] {
    [
        residual::branch_residual(p, roots, spec, Sign::Plus),
        residual::branch_residual(p, roots, spec, Sign::Minus),
    ]
}

fn nu_index(nu: Sign) -> usize {
    match nu {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

/// Bisects the branch residual between two samples with opposite signs.
fn refine_root(
    p: &JumpingProfile,
    spec: &ProblemSpec,
    opts: &RootOptions,
    nu: Sign,
    lo: &Sample,
    hi: &Sample,
) -> Result<BranchRoot> {
    let i = nu_index(nu);
    let eval = |s: f64| -> Result<(f64, DeltaRoots)> {
        let roots = residual::delta_roots_with(p, s, spec, opts)?;
        Ok((residual::branch_residual(p, &roots, spec, nu), roots))
    };
    let mut a = (lo.s, lo.g[i], lo.roots);
    let mut b = (hi.s, hi.g[i], hi.roots);
    let sign_a = Sign::of(a.1);
    for _ in 0..200 {
        let mid = 0.5 * (a.0 + b.0);
        if mid <= a.0 || mid >= b.0 || b.0 - a.0 <= 4.0 * f64::EPSILON * b.0 {
            break;
        }
        let (g, roots) = eval(mid)?;
        if g == 0.0 {
            a = (mid, g, roots);
            b = a;
            break;
        }
        if Sign::of(g) == sign_a {
            a = (mid, g, roots);
        } else {
            b = (mid, g, roots);
        }
    }
    let best = if a.1.abs() <= b.1.abs() { a } else { b };
    Ok(BranchRoot {
        nu,
        s: best.0,
        delta: best.2.get(nu),
        residual: best.1.abs(),
    })
}

/// All sign changes of both branch residuals for `s` in `(0, s_max]`.
///
/// Samples where the phase roots cannot be resolved are skipped when
/// `tolerate_root_failures` is set, otherwise the error is returned.
pub fn sweep_branch_roots(
    spec: &ProblemSpec,
    p: &JumpingProfile,
    s_max: f64,
    step: f64,
    opts: &RootOptions,
    tolerate_root_failures: bool,
) -> Result<Vec<BranchRoot>> {
    let samples: Vec<Result<Sample>> = sweep_points(step, s_max)
        .into_par_iter()
        .map(|s| {
            let roots = residual::delta_roots_with(p, s, spec, opts)?;
            Ok(Sample {
                s,
                g: branch_values(p, &roots, spec),
                roots,
            })
        })
        .collect();
    let mut ok = Vec::with_capacity(samples.len());
    for sample in samples {
        match sample {
            Ok(x) => ok.push(Some(x)),
            Err(_) if tolerate_root_failures => ok.push(None),
            Err(e) => return Err(e),
        }
    }
    let mut tasks = Vec::new();
    for pair in ok.windows(2) {
        if let [Some(lo), Some(hi)] = pair {
            for nu in Sign::BOTH {
                let i = nu_index(nu);
                if Sign::of(lo.g[i]) != Sign::of(hi.g[i]) {
                    tasks.push((nu, lo, hi));
                }
            }
        }
    }
    let roots: Vec<Result<BranchRoot>> = tasks
        .into_par_iter()
        .map(|(nu, lo, hi)| refine_root(p, spec, opts, nu, lo, hi))
        .collect();
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        match r {
            Ok(r) => out.push(r),
            Err(_) if tolerate_root_failures => {}
            Err(e) => return Err(e),
        }
    }
    out.sort_by(|x, y| x.s.total_cmp(&y.s));
    Ok(out)
}

pub fn half_eigenvalues(spec: &ProblemSpec, a: f64, b: f64, k_max: usize) -> Result<Vec<HalfEigenvalue>> {
    half_eigenvalues_with(spec, a, b, k_max, &SpectrumOptions::default())
}

/// Every half-eigenvalue with `k <= k_max`, two per `k`, sorted by `lambda`.
pub fn half_eigenvalues_with(
    spec: &ProblemSpec,
    a: f64,
    b: f64,
    k_max: usize,
    opts: &SpectrumOptions,
) -> Result<Vec<HalfEigenvalue>> {
    spec.require_cone()?;
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let p = JumpingProfile::from_coefficients(a, b)?;
    let s_max = sweep_upper(&p, k_max);
    let mut step = sweep_step(&p);
    let mut last_problem = String::new();
    for _ in 0..=opts.refinements {
        let roots = sweep_branch_roots(spec, &p, s_max, step, &opts.roots, false)?;
        match collect_records(&p, &roots, k_max, opts.residual_tol) {
            Ok(records) => return Ok(records),
            Err(msg) => last_problem = msg,
        }
        step *= 0.5;
    }
    Err(Error::IncompleteSpectrum(last_problem))
}

fn collect_records(
    p: &JumpingProfile,
    roots: &[BranchRoot],
    k_max: usize,
    residual_tol: f64,
) -> std::result::Result<Vec<HalfEigenvalue>, String> {
    let mut slots: Vec<Vec<HalfEigenvalue>> = vec![Vec::new(); 2 * k_max];
    for r in roots {
        let (k, nu) = p
            .nodal_class(r.s, r.delta)
            .map_err(|e| format!("root at s = {} is degenerate: {e}", r.s))?;
        if nu != r.nu {
            return Err(format!("root at s = {} has slope label {} but class sign {nu}", r.s, r.nu));
        }
        if k == 0 || k > k_max {
            continue;
        }
        if r.residual > residual_tol {
            return Err(format!(
                "root ({k}, {nu}) at s = {} has residual {:e}",
                r.s, r.residual
            ));
        }
        slots[2 * (k - 1) + nu_index(nu)].push(HalfEigenvalue {
            k,
            nu,
            lambda: r.s * r.s,
            s: r.s,
            delta: r.delta,
            residual: r.residual,
        });
    }
    let mut records = Vec::with_capacity(2 * k_max);
    for (i, slot) in slots.into_iter().enumerate() {
        let (k, nu) = (i / 2 + 1, Sign::BOTH[i % 2]);
        match slot.len() {
            1 => records.push(slot[0]),
            0 => return Err(format!("no half-eigenvalue found for ({k}, {nu})")),
            n => return Err(format!("{n} half-eigenvalues found for ({k}, {nu})")),
        }
    }
    records.sort_by(|x, y| x.lambda.total_cmp(&y.lambda));
    for x in &records {
        for y in &records {
            if y.k > x.k && y.lambda <= x.lambda {
                return Err(format!(
                    "ordering violated: lambda_({},{}) = {} >= lambda_({},{}) = {}",
                    x.k, x.nu, x.lambda, y.k, y.nu, y.lambda
                ));
            }
        }
    }
    Ok(records)
}

/// The record for one `(k, nu)`.
pub fn half_eigenvalue(spec: &ProblemSpec, a: f64, b: f64, k: usize, nu: Sign) -> Result<HalfEigenvalue> {
    half_eigenvalues(spec, a, b, k)?
        .into_iter()
        .find(|r| r.k == k && r.nu == nu)
        .ok_or_else(|| Error::IncompleteSpectrum(format!("({k}, {nu}) missing")))
}

/// `lambda_{k,min}` and `lambda_{k,max}` for each `k`, in order.
pub fn pairs_by_k(records: &[HalfEigenvalue]) -> Vec<(f64, f64)> {
    let k_max = records.iter().map(|r| r.k).max().unwrap_or(0);
    (1..=k_max)
        .map(|k| {
            let ls = records.iter().filter(|r| r.k == k).map(|r| r.lambda);
            let lo = ls.clone().fold(f64::INFINITY, f64::min);
            let hi = ls.fold(f64::NEG_INFINITY, f64::max);
            (lo, hi)
        })
        .collect()
}

/// Whether the two branches at one `k` coincide.
pub fn coincident(lambda_plus: f64, lambda_minus: f64) -> bool {
    (lambda_plus - lambda_minus).abs() < COINCIDENCE_TOL * lambda_plus.max(lambda_minus)
}

/// Eigenvalues `lambda_k` of the linear problem `-u'' = lambda u`.
pub fn linear_eigenvalues(spec: &ProblemSpec, k_max: usize) -> Result<Vec<f64>> {
    let records = half_eigenvalues(spec, 1.0, 1.0, k_max)?;
    (1..=k_max)
        .map(|k| {
            let get = |nu| {
                records
                    .iter()
                    .find(|r| r.k == k && r.nu == nu)
                    .map(|r| r.lambda)
                    .expect("complete spectrum")
            };
            let (plus, minus) = (get(Sign::Plus), get(Sign::Minus));
            if !coincident(plus, minus) {
                return Err(Error::BranchMismatch { k, plus, minus });
            }
            Ok(0.5 * (plus + minus))
        })
        .collect()
}

/// Samples `(x, phi(x), phi'(x))` of the half-eigenfunction, scaled to
/// sup-norm one on `[-1, 1]`.
pub fn eigenfunction_samples(p: &JumpingProfile, he: &HalfEigenvalue, grid: &[f64]) -> Vec<(f64, f64, f64)> {
    let scale = 1.0 / p.sup_norm(he.s, he.delta, -1.0, 1.0);
    grid.iter()
        .map(|&x| {
            let (v, d) = p.w(he.s, he.delta, x);
            (x, scale * v, scale * d)
        })
        .collect()
}

/// Outcome of a diagnostic scan, for boundary data outside the cone.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRoot {
    pub root: BranchRoot,
    pub lambda: f64,
    /// `None` when the eigenfunction has a critical point at an endpoint.
    pub class: Option<(usize, Sign)>,
}

/// Every half-eigenvalue candidate with `s` in `(0, s_max]`, without the
/// cone requirement or completeness checks.
pub fn scan_half_eigenvalues(spec: &ProblemSpec, a: f64, b: f64, s_max: f64) -> Result<Vec<ScanRoot>> {
    let p = JumpingProfile::from_coefficients(a, b)?;
    let opts = RootOptions::default();
    let roots = sweep_branch_roots(spec, &p, s_max, sweep_step(&p), &opts, true)?;
    Ok(roots
        .into_iter()
        .map(|root| ScanRoot {
            root,
            lambda: root.s * root.s,
            class: p.nodal_class(root.s, root.delta).ok(),
        })
        .collect())
}
