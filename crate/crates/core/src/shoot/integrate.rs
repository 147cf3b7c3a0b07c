//! Fixed-step RK4 for `u'' = -rhs(x, u)` on `[-1, 1]`.
//!
//! Jumping right-hand sides are only Lipschitz in `u` at `u = 0`, and forcing
//! terms may jump in `x`. Steps are therefore cut at every zero of `u` (found
//! by bisection on the step length) and at caller-supplied breakpoints, so no
//! RK stage straddles a kink.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integration aborts once `|u|` exceeds this.
pub const BLOW_UP: f64 = 1e12;
/// Zero crossings are located to this accuracy in `x`.
pub const CROSSING_TOL: f64 = 1e-12;

/// Grid samples of `u` and `u'` on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    grid: Vec<f64>,
    values: Vec<f64>,
    derivatives: Vec<f64>,
}

impl Trajectory {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn derivatives(&self) -> &[f64] {
        &self.derivatives
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// `(u(1), u'(1))`.
    pub fn endpoint(&self) -> (f64, f64) {
        let n = self.len() - 1;
        (self.values[n], self.derivatives[n])
    }

    /// `sup |u|` over the grid.
    pub fn amplitude(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `u(x)` by cubic Hermite interpolation; exact at grid points.
    pub fn value_at(&self, x: f64) -> f64 {
        let i = match self.grid.binary_search_by(|g| g.total_cmp(&x)) {
            Ok(i) => return self.values[i],
            Err(i) => i.clamp(1, self.len() - 1),
        };
        let (x0, x1) = (self.grid[i - 1], self.grid[i]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.values[i - 1]
            + h10 * h * self.derivatives[i - 1]
            + h01 * self.values[i]
            + h11 * h * self.derivatives[i]
    }

    /// `sup |u - v|` over `n` equispaced points.
    pub fn sup_distance(&self, other: &Trajectory, n: usize) -> f64 {
        (0..n)
            .map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64)
            .map(|x| (self.value_at(x) - other.value_at(x)).abs())
            .fold(0.0, f64::max)
    }
}

fn rk4_step(rhs: &impl Fn(f64, f64) -> f64, x: f64, u: f64, v: f64, h: f64, seg_end: f64) -> (f64, f64) {
    // stages at the segment end see the left limit of rhs
    let inside = |t: f64| t.min(seg_end.next_down());
    let half = h * 0.5;
    let k1u = v;
    let k1v = -rhs(x, u);
    let k2u = v + half * k1v;
    let k2v = -rhs(inside(x + half), u + half * k1u);
    let k3u = v + half * k2v;
    let k3v = -rhs(inside(x + half), u + half * k2u);
    let k4u = v + h * k3v;
    let k4v = -rhs(inside(x + h), u + h * k3u);
    (
        u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
        v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    )
}

/// Integrates from `(-1, c, d)` to `x = 1` with nominal step `step`.
pub fn integrate(rhs: impl Fn(f64, f64) -> f64, c: f64, d: f64, step: f64) -> Result<Trajectory> {
    integrate_with_breaks(rhs, c, d, step, &[])
}

/// As [`integrate`], additionally landing exactly on every point of `breaks`
/// inside `(-1, 1)`.
pub fn integrate_with_breaks(
    rhs: impl Fn(f64, f64) -> f64,
    c: f64,
    d: f64,
    step: f64,
    breaks: &[f64],
) -> Result<Trajectory> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    if !(c.is_finite() && d.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite start ({c}, {d})")));
    }
    let mut stops: Vec<f64> = breaks.iter().copied().filter(|b| *b > -1.0 && *b < 1.0).collect();
    stops.push(1.0);
    stops.sort_by(f64::total_cmp);
    stops.dedup();

    let cap = (2.0 / step).ceil() as usize + 2 * stops.len() + 16;
    let mut grid = Vec::with_capacity(cap);
    let mut values = Vec::with_capacity(cap);
    let mut derivatives = Vec::with_capacity(cap);
    let (mut x, mut u, mut v) = (-1.0, c, d);
    grid.push(x);
    values.push(u);
    derivatives.push(v);

    for &stop in &stops {
        while x < stop {
            let mut h = step.min(stop - x);
            // avoid a sliver step at the end of the segment
            if stop - (x + h) < 1e-3 * step {
                h = stop - x;
            }
            let (mut u1, mut v1) = rk4_step(&rhs, x, u, v, h, stop);
            let mut x1 = if h == stop - x { stop } else { x + h };
            if u * u1 < 0.0 {
                let (mut lo, mut hi) = (0.0, h);
                while hi - lo > CROSSING_TOL {
                    let mid = 0.5 * (lo + hi);
                    let (um, _) = rk4_step(&rhs, x, u, v, mid, stop);
                    if um * u > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                if hi < h {
                    let (_, vc) = rk4_step(&rhs, x, u, v, hi, stop);
                    u1 = 0.0;
                    v1 = vc;
                    x1 = x + hi;
                }
            }
            if !(u1.abs() <= BLOW_UP) || !v1.is_finite() {
                return Err(Error::BlowUp { x: x1 });
            }
            x = x1;
            u = u1;
            v = v1;
            grid.push(x);
            values.push(u);
            derivatives.push(v);
        }
    }
    Ok(Trajectory {
        grid,
        values,
        derivatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::JumpingProfile;

    #[test]
    fn constant_forcing_gives_parabola() {
        let t = integrate(|_, _| 1.0, 0.0, 1.0, 1e-3).unwrap();
        for (x, u) in t.grid().iter().zip(t.values()) {
            assert!((u - (1.0 - x * x) / 2.0).abs() < 1e-10);
        }
        assert_eq!(*t.grid().last().unwrap(), 1.0);
    }

    #[test]
    fn linear_sine_endpoint() {
        let t = integrate(|_, u| u, 0.0, 1.0, 1e-3).unwrap();
        let (u1, _) = t.endpoint();
        assert!((u1 - 2f64.sin()).abs() < 1e-8);
    }

    #[test]
    fn jumping_rhs_tracks_exact_profile() {
        let p = JumpingProfile::new(2.0, 1.0).unwrap();
        let (c, d) = p.psi(-1.0);
        let rhs = |_: f64, u: f64| 4.0 * u.max(0.0) - (-u).max(0.0);
        let t = integrate(rhs, c, d, 1e-3).unwrap();
        for ((x, u), du) in t.grid().iter().zip(t.values()).zip(t.derivatives()) {
            let (pv, pd) = p.psi(*x);
            assert!((u - pv).abs() < 1e-7, "x = {x}");
            assert!((du - pd).abs() < 1e-7);
        }
    }

    #[test]
    fn breakpoints_are_on_the_grid() {
        let t = integrate_with_breaks(|x, _| if x >= 0.3 { 1.0 } else { 0.0 }, 0.0, 0.0, 0.07, &[0.3, -0.5]).unwrap();
        assert!(t.grid().contains(&0.3) && t.grid().contains(&-0.5));
        // u = -(x - 0.3)^2 / 2 beyond 0.3
        let (u1, _) = t.endpoint();
        assert!((u1 + 0.49 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn blow_up_is_reported() {
        let r = integrate(|_, u| -u * u * u, 1.0, 50.0, 1e-2);
        assert!(matches!(r, Err(Error::BlowUp { .. })));
        assert!(integrate(|_, _| 0.0, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn hermite_interpolation_is_exact_on_cubics() {
        let t = integrate(|x, _| -6.0 * x, -1.0, 3.0, 0.1).unwrap();
        // u'' = 6x, u(-1) = -1, u'(-1) = 3  =>  u = x^3
        for x in [-0.95, -0.33, 0.01, 0.77] {
            assert!((t.value_at(x) - x * x * x).abs() < 1e-12);
        }
    }
}
