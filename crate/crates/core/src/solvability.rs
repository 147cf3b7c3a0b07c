//! Location of `lambda` relative to the half-eigenvalues, the degree value
//! attached to each interval, and the forcing term that defeats solvability
//! on split intervals.
//!
//! The intervals are
//! `Lambda_k^1 = (lambda_{k,max}, lambda_{k+1,min})` (gaps, with
//! `Lambda_0^1 = (-inf, lambda_{1,min})`) and
//! `Lambda_k^0 = (lambda_{k,min}, lambda_{k,max})` (splits). On a gap the
//! Leray-Schauder degree of the half-linear operator is `(-1)^k` and every
//! forcing term admits a solution; on a split the degree is `0`. The degree is
//! reported from this rule, never computed. `B(lambda)` gives an independent
//! check: it is negative on gaps and positive on splits.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::profile::JumpingProfile;
use crate::residual;
use crate::spectrum::{self, HalfEigenvalue};
use crate::Sign;

/// Relative distance below which `lambda` is treated as a half-eigenvalue.
pub const NEAR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntervalKind {
    /// `Lambda_k^1`.
    Gap(usize),
    /// `Lambda_k^0`.
    Split(usize),
    NearHalfEigenvalue(usize, Sign),
}

impl IntervalKind {
    pub fn k(&self) -> usize {
        match *self {
            IntervalKind::Gap(k) | IntervalKind::Split(k) | IntervalKind::NearHalfEigenvalue(k, _) => k,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            IntervalKind::Gap(_) => "gap",
            IntervalKind::Split(_) => "split",
            IntervalKind::NearHalfEigenvalue(..) => "near_half_eigenvalue",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaClassification {
    pub kind: IntervalKind,
    /// `(-1)^k` on gaps, `0` on splits, absent at half-eigenvalues.
    pub degree: Option<i32>,
    /// Sign of `B(lambda)`; absent for `lambda <= 0` and at half-eigenvalues.
    pub b_sign: Option<Sign>,
    /// Interval endpoints; `None` stands for `-infinity`.
    pub lower: Option<f64>,
    pub upper: f64,
}

/// Enumerates half-eigenvalues until `lambda_{k_max,min}` exceeds `lambda`.
fn enclosing_records(spec: &ProblemSpec, a: f64, b: f64, lambda: f64) -> Result<Vec<HalfEigenvalue>> {
    let mut k_max = 4;
    loop {
        let recs = spectrum::half_eigenvalues(spec, a, b, k_max)?;
        let top_min = recs
            .iter()
            .filter(|r| r.k == k_max)
            .map(|r| r.lambda)
            .fold(f64::INFINITY, f64::min);
        if top_min > lambda * (1.0 + 2.0 * NEAR_TOL) + NEAR_TOL || k_max >= 4096 {
            return Ok(recs);
        }
        k_max *= 2;
    }
}

pub fn classify_lambda(spec: &ProblemSpec, a: f64, b: f64, lambda: f64) -> Result<LambdaClassification> {
    spec.require_cone()?;
    if !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!("lambda must be finite, got {lambda}")));
    }
    let recs = enclosing_records(spec, a, b, lambda.max(0.0))?;
    if let Some(r) = recs
        .iter()
        .find(|r| (lambda - r.lambda).abs() < NEAR_TOL * lambda.abs().max(1.0))
    {
        return Ok(LambdaClassification {
            kind: IntervalKind::NearHalfEigenvalue(r.k, r.nu),
            degree: None,
            b_sign: None,
            lower: Some(r.lambda),
            upper: r.lambda,
        });
    }
    let pairs = spectrum::pairs_by_k(&recs);
    let (kind, lower, upper) = if lambda < pairs[0].0 {
        (IntervalKind::Gap(0), None, pairs[0].0)
    } else {
        let mut found = None;
        for (i, &(lo, hi)) in pairs.iter().enumerate() {
            let k = i + 1;
            if lambda > lo && lambda < hi {
                found = Some((IntervalKind::Split(k), Some(lo), hi));
                break;
            }
            if let Some(&(next_lo, _)) = pairs.get(i + 1) {
                if lambda > hi && lambda < next_lo {
                    found = Some((IntervalKind::Gap(k), Some(hi), next_lo));
                    break;
                }
            }
        }
        found.ok_or_else(|| Error::IncompleteSpectrum(format!("lambda = {lambda} not bracketed")))?
    };
    let degree = match kind {
        IntervalKind::Gap(k) => Some(if k % 2 == 0 { 1 } else { -1 }),
        _ => Some(0),
    };
    let b_sign = if lambda > 0.0 {
        let p = JumpingProfile::from_coefficients(a, b)?;
        Some(Sign::of(residual::b_value(&p, lambda.sqrt(), spec)?))
    } else {
        None
    };
    Ok(LambdaClassification {
        kind,
        degree,
        b_sign,
        lower,
        upper,
    })
}

/// Step forcing `h = 0` on `[-1, x0)` and `h = level` on `[x0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForcingFunction {
    pub x0: f64,
    pub level: f64,
}

impl ForcingFunction {
    pub fn eval(&self, x: f64) -> f64 {
        if x >= self.x0 {
            self.level
        } else {
            0.0
        }
    }
}

/// A forcing term for which the half-linear problem has no solution.
///
/// Requires `lambda` in a split interval, where both solutions of the left
/// condition overshoot (or both undershoot) the right condition. The step is
/// placed past every interior node and past the last zero of both left
/// solutions, close enough to `x = 1` that the forced solution cannot turn
/// around; its sign pushes the endpoint further in the direction of the
/// overshoot.
pub fn nonsolvable_forcing(spec: &ProblemSpec, a: f64, b: f64, lambda: f64) -> Result<ForcingFunction> {
    let class = classify_lambda(spec, a, b, lambda)?;
    if !matches!(class.kind, IntervalKind::Split(_)) {
        return Err(Error::NotSplitInterval(lambda));
    }
    let p = JumpingProfile::from_coefficients(a, b)?;
    let s = lambda.sqrt();
    let roots = residual::delta_roots(&p, s, spec)?;
    let overshoot = residual::branch_residual(&p, &roots, spec, Sign::Plus);

    let mut x0 = 1.0 - (0.1f64).min(PI / (4.0 * (lambda * a.max(b) + 1.0).sqrt()));
    if let Some(node) = spec.all_nodes().reduce(f64::max) {
        x0 = x0.max(node + 0.5 * (1.0 - node));
    }
    for nu in Sign::BOTH {
        if let Some(&z) = p.zeros(s, roots.get(nu), -1.0, 1.0).last() {
            x0 = x0.max(z + 0.5 * (1.0 - z));
        }
    }
    Ok(ForcingFunction {
        x0,
        level: -Sign::of(overshoot).value(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirichlet_gap_example() {
        let c = classify_lambda(&ProblemSpec::dirichlet(), 1.0, 1.0, 5.0).unwrap();
        assert_eq!(c.kind, IntervalKind::Gap(1));
        assert_eq!(c.degree, Some(-1));
        assert_eq!(c.b_sign, Some(Sign::Minus));
        assert!((c.lower.unwrap() - PI * PI / 4.0).abs() < 1e-9);
        assert!((c.upper - PI * PI).abs() < 1e-9);
    }

    #[test]
    fn dirichlet_split_example() {
        let c = classify_lambda(&ProblemSpec::dirichlet(), 4.0, 1.0, 1.0).unwrap();
        assert_eq!(c.kind, IntervalKind::Split(1));
        assert_eq!(c.degree, Some(0));
        assert_eq!(c.b_sign, Some(Sign::Plus));
        assert!((c.lower.unwrap() - PI * PI / 16.0).abs() < 1e-9);
        assert!((c.upper - PI * PI / 4.0).abs() < 1e-9);
    }

    #[test]
    fn exact_eigenvalue_is_near() {
        let c = classify_lambda(&ProblemSpec::dirichlet(), 1.0, 1.0, PI * PI / 4.0).unwrap();
        assert!(matches!(c.kind, IntervalKind::NearHalfEigenvalue(1, _)));
        assert_eq!(c.degree, None);
    }

    #[test]
    fn nonpositive_lambda_is_left_gap() {
        let c = classify_lambda(&ProblemSpec::dirichlet(), 2.0, 3.0, -4.0).unwrap();
        assert_eq!(c.kind, IntervalKind::Gap(0));
        assert_eq!(c.degree, Some(1));
        assert_eq!(c.b_sign, None);
        assert_eq!(c.lower, None);
    }

    #[test]
    fn large_lambda_is_bracketed() {
        let c = classify_lambda(&ProblemSpec::dirichlet(), 1.0, 1.0, 1000.0).unwrap();
        // (k pi / 2)^2 < 1000 < ((k + 1) pi / 2)^2 for k = 20
        assert_eq!(c.kind, IntervalKind::Gap(20));
        assert_eq!(c.degree, Some(1));
    }

    #[test]
    fn forcing_examples() {
        let f = nonsolvable_forcing(&ProblemSpec::dirichlet(), 4.0, 1.0, 1.0).unwrap();
        assert!((f.x0 - 0.9).abs() < 1e-12);
        // both left solutions end negative at x = 1, so the step pushes upward
        assert_eq!(f.level, 1.0);
        assert_eq!(f.eval(0.5), 0.0);
        assert_eq!(f.eval(0.95), 1.0);

        let spec = ProblemSpec::new(vec![], vec![], vec![0.3], vec![0.5]).unwrap();
        let (lo, hi) = spectrum::pairs_by_k(&spectrum::half_eigenvalues(&spec, 4.0, 1.0, 1).unwrap())[0];
        let f = nonsolvable_forcing(&spec, 4.0, 1.0, 0.5 * (lo + hi)).unwrap();
        assert!(f.x0 >= 0.75);
        assert_eq!(
            nonsolvable_forcing(&ProblemSpec::dirichlet(), 1.0, 1.0, 5.0),
            Err(Error::NotSplitInterval(5.0))
        );
    }
}
