//! The fundamental jumping solution `Psi` and its scaled translates.
//!
//! `Psi` solves `-Psi'' = gp^2 Psi^+ - gm^2 Psi^-` with `Psi(0) = 0`,
//! `Psi'(0) = 1`. It is a periodic chain of sinusoidal bumps: a positive bump
//! of length `pi/gp` followed by a negative bump of length `pi/gm`. Every
//! quantity here is evaluated in closed form.
//!
//! Half-eigenfunctions are the translates `w(s, delta)(x) = Psi(s x - delta)`,
//! where the phase `delta` lives on the circle of circumference `period()`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Sign;

/// Relative tolerance for the endpoint-derivative test in [`JumpingProfile::nodal_class`].
pub const ENDPOINT_DERIVATIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpingProfile {
    gamma_plus: f64,
    gamma_minus: f64,
}

/// A phase on the circle `[0, period)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct PhasePoint(f64);

impl PhasePoint {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl JumpingProfile {
    pub fn new(gamma_plus: f64, gamma_minus: f64) -> Result<Self> {
        let ok = |g: f64| g.is_finite() && g > 0.0;
        if !ok(gamma_plus) || !ok(gamma_minus) {
            return Err(Error::NonPositiveGamma {
                plus: gamma_plus,
                minus: gamma_minus,
            });
        }
        Ok(JumpingProfile {
            gamma_plus,
            gamma_minus,
        })
    }

    /// Profile for the jumping coefficients `a = gp^2`, `b = gm^2`.
    pub fn from_coefficients(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::NonPositiveGamma { plus: a, minus: b });
        }
        Self::new(a.sqrt(), b.sqrt())
    }

    pub fn gamma_plus(&self) -> f64 {
        self.gamma_plus
    }

    pub fn gamma_minus(&self) -> f64 {
        self.gamma_minus
    }

    pub fn a(&self) -> f64 {
        self.gamma_plus * self.gamma_plus
    }

    pub fn b(&self) -> f64 {
        self.gamma_minus * self.gamma_minus
    }

    pub fn gamma_max(&self) -> f64 {
        self.gamma_plus.max(self.gamma_minus)
    }

    pub fn gamma_min(&self) -> f64 {
        self.gamma_plus.min(self.gamma_minus)
    }

    /// Length of the positive bump.
    pub fn positive_len(&self) -> f64 {
        PI / self.gamma_plus
    }

    /// Length of the negative bump.
    pub fn negative_len(&self) -> f64 {
        PI / self.gamma_minus
    }

    pub fn period(&self) -> f64 {
        self.positive_len() + self.negative_len()
    }

    pub fn phase(&self, delta: f64) -> PhasePoint {
        let p = self.period();
        let r = delta.rem_euclid(p);
        // rem_euclid can round up to p itself
        PhasePoint(if r >= p { 0.0 } else { r })
    }

    /// Wrap-aware distance between two phases.
    pub fn phase_distance(&self, x: PhasePoint, y: PhasePoint) -> f64 {
        let d = (x.0 - y.0).abs();
        d.min(self.period() - d)
    }

    /// `(Psi(x), Psi'(x))`.
    pub fn psi(&self, x: f64) -> (f64, f64) {
        let r = x.rem_euclid(self.period());
        let half = self.positive_len();
        if r < half {
            let t = self.gamma_plus * r;
            (t.sin() / self.gamma_plus, t.cos())
        } else {
            let t = self.gamma_minus * (r - half);
            (-t.sin() / self.gamma_minus, -t.cos())
        }
    }

    /// `(w(x), w'(x))` for `w(s, delta)(x) = Psi(s x - delta)`.
    pub fn w(&self, s: f64, delta: PhasePoint, x: f64) -> (f64, f64) {
        let (v, dv) = self.psi(s * x - delta.0);
        (v, s * dv)
    }

    pub fn w_value(&self, s: f64, delta: PhasePoint, x: f64) -> f64 {
        self.psi(s * x - delta.0).0
    }

    /// Preimages in the open interval `(lo, hi)` of the lattice
    /// `offsets + period Z` under `x -> s x - delta`, in increasing order.
    fn preimages(&self, offsets: &[f64], s: f64, delta: PhasePoint, lo: f64, hi: f64) -> Vec<f64> {
        let p = self.period();
        let mut out = Vec::new();
        for &c in offsets {
            // s x - delta = c + n p
            let n_lo = ((s * lo - delta.0 - c) / p).floor() as i64 - 1;
            let n_hi = ((s * hi - delta.0 - c) / p).ceil() as i64 + 1;
            for n in n_lo..=n_hi {
                let x = (c + n as f64 * p + delta.0) / s;
                if x > lo && x < hi {
                    out.push(x);
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }

    /// Zeros of `w(s, delta)'` in `(lo, hi)`: the bump midpoints.
    pub fn critical_points(&self, s: f64, delta: PhasePoint, lo: f64, hi: f64) -> Vec<f64> {
        let mids = [
            0.5 * self.positive_len(),
            self.positive_len() + 0.5 * self.negative_len(),
        ];
        self.preimages(&mids, s, delta, lo, hi)
    }

    /// Zeros of `w(s, delta)` in `(lo, hi)`.
    pub fn zeros(&self, s: f64, delta: PhasePoint, lo: f64, hi: f64) -> Vec<f64> {
        self.preimages(&[0.0, self.positive_len()], s, delta, lo, hi)
    }

    /// `max |w(s, delta)|` over `[lo, hi]`.
    pub fn sup_norm(&self, s: f64, delta: PhasePoint, lo: f64, hi: f64) -> f64 {
        self.critical_points(s, delta, lo, hi)
            .into_iter()
            .chain([lo, hi])
            .map(|x| self.w_value(s, delta, x).abs())
            .fold(0.0, f64::max)
    }

    /// Nodal class `(k, nu)` of `w(s, delta)` on `[-1, 1]`.
    ///
    /// `k` counts the interior critical points and `nu` is the sign of
    /// `w'(-1)`. Fails when `w'` vanishes at either endpoint.
    pub fn nodal_class(&self, s: f64, delta: PhasePoint) -> Result<(usize, Sign)> {
        let tol = ENDPOINT_DERIVATIVE_TOL * s * self.gamma_max();
        let (_, d_left) = self.w(s, delta, -1.0);
        let (_, d_right) = self.w(s, delta, 1.0);
        for (endpoint, d) in [(-1.0, d_left), (1.0, d_right)] {
            if d.abs() < tol {
                return Err(Error::BoundaryCriticalPoint { endpoint });
            }
        }
        let k = self.critical_points(s, delta, -1.0, 1.0).len();
        Ok((k, Sign::of(d_left)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn period_examples() {
        assert!(close(JumpingProfile::new(1.0, 1.0).unwrap().period(), 2.0 * PI, 1e-15));
        assert!(close(JumpingProfile::new(2.0, 1.0).unwrap().period(), 1.5 * PI, 1e-15));
        assert!(matches!(
            JumpingProfile::new(0.0, 1.0),
            Err(Error::NonPositiveGamma { .. })
        ));
        assert!(JumpingProfile::new(1.0, f64::NAN).is_err());
        assert!(JumpingProfile::from_coefficients(-1.0, 1.0).is_err());
    }

    #[test]
    fn psi_peak_and_trough() {
        let p = JumpingProfile::new(2.0, 1.0).unwrap();
        let (v, d) = p.psi(PI / 4.0);
        assert!(close(v, 0.5, 1e-15) && close(d, 0.0, 1e-15));
        let (v, d) = p.psi(PI);
        assert!(close(v, -1.0, 1e-15) && close(d, 0.0, 1e-15));
    }

    #[test]
    fn psi_is_continuous_at_bump_joins() {
        let p = JumpingProfile::new(3.0, 0.7).unwrap();
        for x in [p.positive_len(), p.period()] {
            let (l, dl) = p.psi(x - 1e-12);
            let (r, dr) = p.psi(x + 1e-12);
            assert!(close(l, r, 1e-10));
            assert!(close(dl, dr, 1e-10));
        }
    }

    #[test]
    fn w_examples() {
        let p = JumpingProfile::new(1.0, 1.0).unwrap();
        let (v, d) = p.w(1.0, p.phase(0.0), PI / 2.0);
        assert!(close(v, 1.0, 1e-15) && close(d, 0.0, 1e-15));

        let q = JumpingProfile::new(2.0, 1.0).unwrap();
        let (v, d) = q.w(2.0, q.phase(PI / 2.0), PI / 2.0);
        assert!(close(v, 0.0, 1e-15) && close(d, -2.0, 1e-15));
    }

    #[test]
    fn critical_point_examples() {
        let p = JumpingProfile::new(1.0, 1.0).unwrap();
        let cps = p.critical_points(1.0, p.phase(0.0), 0.0, 2.0 * PI);
        assert_eq!(cps.len(), 2);
        assert!(close(cps[0], PI / 2.0, 1e-14) && close(cps[1], 1.5 * PI, 1e-14));

        let q = JumpingProfile::new(2.0, 1.0).unwrap();
        let cps = q.critical_points(1.0, q.phase(0.0), 0.0, 1.5 * PI);
        assert_eq!(cps.len(), 2);
        assert!(close(cps[0], PI / 4.0, 1e-14) && close(cps[1], PI, 1e-14));
    }

    #[test]
    fn nodal_class_of_dirichlet_modes() {
        let p = JumpingProfile::new(1.0, 1.0).unwrap();
        assert_eq!(
            p.nodal_class(PI / 2.0, p.phase(-PI / 2.0)).unwrap(),
            (1, Sign::Plus)
        );
        assert_eq!(p.nodal_class(PI, p.phase(-PI)).unwrap(), (2, Sign::Plus));
        assert_eq!(p.nodal_class(PI, p.phase(0.0)).unwrap(), (2, Sign::Minus));
    }

    #[test]
    fn boundary_critical_point_is_reported() {
        // The degenerate profile with gp = 2 pi / 3, gm = pi, s = 1, aligned so
        // that w(-1) = 0 with positive slope: w'(1) = 0.
        let p = JumpingProfile::new(2.0 * PI / 3.0, PI).unwrap();
        let delta = p.phase(-1.0);
        assert_eq!(
            p.nodal_class(1.0, delta),
            Err(Error::BoundaryCriticalPoint { endpoint: 1.0 })
        );
    }

    #[test]
    fn sup_norm_of_sine() {
        let p = JumpingProfile::new(1.0, 1.0).unwrap();
        let n = p.sup_norm(PI / 2.0, p.phase(-PI / 2.0), -1.0, 1.0);
        assert!(close(n, 1.0, 1e-15));
    }
}
