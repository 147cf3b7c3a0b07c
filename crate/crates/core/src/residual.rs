//! Boundary residuals of the translates `w(s, delta)` and their phase roots.
//!
//! For fixed `s` the left residual `delta -> Gamma^-(s, delta)` has exactly two
//! simple zeros on the phase circle when the coefficients lie in the
//! nonnegative cone. They are labelled by the sign of `w'(-1)`. Evaluating the
//! right residual `Gamma^+` along those two roots gives the half-eigenvalue
//! condition, and the product of the two values is the indicator `B(lambda)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::profile::{JumpingProfile, PhasePoint};
use crate::Sign;

pub const DEFAULT_CIRCLE_SAMPLES: usize = 64;
pub const MAX_CIRCLE_SAMPLES: usize = 4096;
/// Phase bisection stops at this fraction of the period.
pub const PHASE_TOL: f64 = 1e-13;

/// `w(s, delta)(eta0) - sum_i alpha_i w(s, delta)(eta_i)`.
pub fn gamma(
    p: &JumpingProfile,
    s: f64,
    delta: PhasePoint,
    eta0: f64,
    eta: &[f64],
    alpha: &[f64],
) -> f64 {
    debug_assert_eq!(eta.len(), alpha.len());
    let lead = p.w_value(s, delta, eta0);
    lead - alpha
        .iter()
        .zip(eta)
        .map(|(a, &e)| a * p.w_value(s, delta, e))
        .sum::<f64>()
}

/// `Gamma^+` (condition at `x = 1`) or `Gamma^-` (condition at `x = -1`).
pub fn gamma_pm(p: &JumpingProfile, s: f64, delta: PhasePoint, spec: &ProblemSpec, side: Sign) -> f64 {
    let bc = spec.side_at(side);
    gamma(p, s, delta, side.value(), &bc.eta, &bc.alpha)
}

/// The two zeros of `delta -> Gamma^-(s, delta)` on the circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaRoots {
    pub s: f64,
    /// Root where `w'(-1) > 0`.
    pub delta_plus: PhasePoint,
    /// Root where `w'(-1) < 0`.
    pub delta_minus: PhasePoint,
}

impl DeltaRoots {
    pub fn get(&self, nu: Sign) -> PhasePoint {
        match nu {
            Sign::Plus => self.delta_plus,
            Sign::Minus => self.delta_minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    pub circle_samples: usize,
    pub max_circle_samples: usize,
    pub phase_tol: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            circle_samples: DEFAULT_CIRCLE_SAMPLES,
            max_circle_samples: MAX_CIRCLE_SAMPLES,
            phase_tol: PHASE_TOL,
        }
    }
}

/// A zero of `Gamma^-(s, .)` together with the sign of `w'(-1)` there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRoot {
    pub delta: PhasePoint,
    pub slope: Sign,
}

/// Every sign change of `Gamma^-(s, .)` on the circle, refined by bisection.
///
/// The sampling is doubled while the count is odd or below two.
pub fn phase_roots(p: &JumpingProfile, s: f64, spec: &ProblemSpec, opts: &RootOptions) -> Vec<PhaseRoot> {
    let period = p.period();
    let f = |d: f64| gamma_pm(p, s, p.phase(d), spec, Sign::Minus);
    let mut n = opts.circle_samples.max(4);
    loop {
        let h = period / n as f64;
        let vals: Vec<f64> = (0..n).map(|j| f(j as f64 * h)).collect();
        let mut brackets = Vec::new();
        for j in 0..n {
            let (fa, fb) = (vals[j], vals[(j + 1) % n]);
            if Sign::of(fa) != Sign::of(fb) {
                brackets.push((j as f64 * h, (j + 1) as f64 * h, fa));
            }
        }
        let count = brackets.len();
        if (count < 2 || count % 2 == 1) && n < opts.max_circle_samples {
            n *= 2;
            continue;
        }
        return brackets
            .into_iter()
            .map(|(lo, hi, flo)| {
                let d = bisect(f, lo, hi, flo, opts.phase_tol * period);
                let delta = p.phase(d);
                let (_, slope) = p.w(s, delta, -1.0);
                PhaseRoot {
                    delta,
                    slope: Sign::of(slope),
                }
            })
            .collect();
    }
}

/// Bisection for a sign change of `f` on `[lo, hi]`, with `f(lo) = flo`.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, flo: f64, tol: f64) -> f64 {
    let s_lo = Sign::of(flo);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if Sign::of(f(mid)) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The two labelled phase roots at `s`.
pub fn delta_roots(p: &JumpingProfile, s: f64, spec: &ProblemSpec) -> Result<DeltaRoots> {
    delta_roots_with(p, s, spec, &RootOptions::default())
}

pub fn delta_roots_with(
    p: &JumpingProfile,
    s: f64,
    spec: &ProblemSpec,
    opts: &RootOptions,
) -> Result<DeltaRoots> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidArgument(format!("s must be positive, got {s}")));
    }
    let roots = phase_roots(p, s, spec, opts);
    let plus: Vec<_> = roots.iter().filter(|r| r.slope == Sign::Plus).collect();
    let minus: Vec<_> = roots.iter().filter(|r| r.slope == Sign::Minus).collect();
    if roots.len() != 2 || plus.len() != 1 || minus.len() != 1 {
        return Err(Error::RootCountMismatch {
            s,
            count: roots.len(),
        });
    }
    Ok(DeltaRoots {
        s,
        delta_plus: plus[0].delta,
        delta_minus: minus[0].delta,
    })
}

/// `Gamma^+` along the phase root with label `nu`.
pub fn branch_residual(p: &JumpingProfile, roots: &DeltaRoots, spec: &ProblemSpec, nu: Sign) -> f64 {
    gamma_pm(p, roots.s, roots.get(nu), spec, Sign::Plus)
}

/// `B(lambda)` with `lambda = s^2`.
pub fn b_value(p: &JumpingProfile, s: f64, spec: &ProblemSpec) -> Result<f64> {
    let roots = delta_roots(p, s, spec)?;
    Ok(branch_residual(p, &roots, spec, Sign::Minus) * branch_residual(p, &roots, spec, Sign::Plus))
}
