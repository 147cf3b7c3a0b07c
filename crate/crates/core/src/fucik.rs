//! Fučík curves `sigma_{F,k,nu} = { lambda_{k,nu}(theta) (sin theta, cos theta) }`.
//!
//! A point `(a, b)` lies on the Fučík spectrum exactly when `1` is a
//! half-eigenvalue for `(a, b)`, so each curve is traced along rays from the
//! origin by positive homogeneity.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::spectrum;
use crate::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FucikSample {
    pub theta: f64,
    pub lambda: f64,
    pub point_a: f64,
    pub point_b: f64,
}

/// `n` Chebyshev-Lobatto points on `[margin, pi/2 - margin]`, increasing.
pub fn chebyshev_theta_grid(n: usize, margin: f64) -> Vec<f64> {
    let (lo, hi) = (margin, FRAC_PI_2 - margin);
    let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    if n == 1 {
        return vec![mid];
    }
    (0..n)
        .map(|j| mid - half * (PI * j as f64 / (n - 1) as f64).cos())
        .collect()
}

/// The default grid: 101 points with a 0.02 margin.
pub fn default_theta_grid() -> Vec<f64> {
    chebyshev_theta_grid(101, 0.02)
}

pub fn trace_curve(spec: &ProblemSpec, k: usize, nu: Sign, theta_grid: &[f64]) -> Result<Vec<FucikSample>> {
    if let Some(t) = theta_grid.iter().find(|t| !(**t > 0.0 && **t < FRAC_PI_2)) {
        return Err(Error::InvalidArgument(format!("theta = {t} is not inside (0, pi/2)")));
    }
    theta_grid
        .par_iter()
        .map(|&theta| {
            let (a, b) = (theta.sin(), theta.cos());
            let lambda = spectrum::half_eigenvalue(spec, a, b, k, nu)?.lambda;
            Ok(FucikSample {
                theta,
                lambda,
                point_a: lambda * a,
                point_b: lambda * b,
            })
        })
        .collect()
}

/// A traced curve with its `(k, nu)` label.
pub type LabelledCurve = ((usize, Sign), Vec<FucikSample>);

/// Both curves for every `k <= k_max`, keyed by `(k, nu)`.
pub fn trace_all(spec: &ProblemSpec, k_max: usize, theta_grid: &[f64]) -> Result<Vec<LabelledCurve>> {
    if let Some(t) = theta_grid.iter().find(|t| !(**t > 0.0 && **t < FRAC_PI_2)) {
        return Err(Error::InvalidArgument(format!("theta = {t} is not inside (0, pi/2)")));
    }
    // one enumeration per theta serves every curve
    let per_theta: Vec<Vec<spectrum::HalfEigenvalue>> = theta_grid
        .par_iter()
        .map(|&t| spectrum::half_eigenvalues(spec, t.sin(), t.cos(), k_max))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(2 * k_max);
    for k in 1..=k_max {
        for nu in Sign::BOTH {
            let curve = theta_grid
                .iter()
                .zip(&per_theta)
                .map(|(&theta, recs)| {
                    let lambda = recs
                        .iter()
                        .find(|r| r.k == k && r.nu == nu)
                        .map(|r| r.lambda)
                        .expect("complete spectrum");
                    FucikSample {
                        theta,
                        lambda,
                        point_a: lambda * theta.sin(),
                        point_b: lambda * theta.cos(),
                    }
                })
                .collect();
            out.push(((k, nu), curve));
        }
    }
    Ok(out)
}

/// Where `sigma_{F,k,+}` and `sigma_{F,k,-}` meet the diagonal: `(lambda_k, lambda_k)`.
pub fn diagonal_crossing(spec: &ProblemSpec, k: usize) -> Result<(f64, f64)> {
    let lambda_k = spectrum::linear_eigenvalues(spec, k)?[k - 1];
    let theta = [FRAC_PI_4];
    for nu in Sign::BOTH {
        let traced = trace_curve(spec, k, nu, &theta)?[0];
        for coord in [traced.point_a, traced.point_b] {
            if (coord - lambda_k).abs() > 1e-9 * lambda_k {
                return Err(Error::DiagonalMismatch {
                    k,
                    linear: lambda_k,
                    traced: coord,
                });
            }
        }
    }
    Ok((lambda_k, lambda_k))
}
