//! Multi-point boundary data `u(+-1) = sum_i alpha_i^+- u(eta_i^+-)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Sign;

/// Where the coefficient vectors sit relative to the admissible cones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeStatus {
    /// Nonnegative entries with sum below one on each side.
    InsideAPlus,
    /// `sum |alpha_i| < 1` on each side, but some entry is negative.
    InsideAOnly,
    Outside,
}

/// One side of the boundary condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySide {
    pub alpha: Vec<f64>,
    pub eta: Vec<f64>,
}

impl BoundarySide {
    pub fn dirichlet() -> Self {
        BoundarySide {
            alpha: vec![0.0],
            eta: vec![0.0],
        }
    }

    /// `u(endpoint) - sum alpha_i u(eta_i)` for a function given by `u`.
    pub fn residual(&self, endpoint_value: f64, mut u: impl FnMut(f64) -> f64) -> f64 {
        endpoint_value
            - self
                .alpha
                .iter()
                .zip(&self.eta)
                .map(|(a, &e)| if *a == 0.0 { 0.0 } else { a * u(e) })
                .sum::<f64>()
    }

    fn abs_sum(&self) -> f64 {
        self.alpha.iter().map(|a| a.abs()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    minus: BoundarySide,
    plus: BoundarySide,
    cone_status: ConeStatus,
}

impl ProblemSpec {
    /// Validates the boundary data. An empty side is read as the plain
    /// Dirichlet condition (`alpha = [0]`).
    pub fn new(
        alpha_minus: Vec<f64>,
        eta_minus: Vec<f64>,
        alpha_plus: Vec<f64>,
        eta_plus: Vec<f64>,
    ) -> Result<Self> {
        let minus = Self::side("minus", alpha_minus, eta_minus)?;
        let plus = Self::side("plus", alpha_plus, eta_plus)?;
        let cone_status = if minus.abs_sum() >= 1.0 || plus.abs_sum() >= 1.0 {
            ConeStatus::Outside
        } else if minus.alpha.iter().chain(&plus.alpha).any(|&a| a < 0.0) {
            ConeStatus::InsideAOnly
        } else {
            ConeStatus::InsideAPlus
        };
        Ok(ProblemSpec {
            minus,
            plus,
            cone_status,
        })
    }

    fn side(name: &str, alpha: Vec<f64>, eta: Vec<f64>) -> Result<BoundarySide> {
        if alpha.len() != eta.len() {
            return Err(Error::InvalidProblem(format!(
                "alpha_{name} has {} entries but eta_{name} has {}",
                alpha.len(),
                eta.len()
            )));
        }
        if alpha.is_empty() {
            return Ok(BoundarySide::dirichlet());
        }
        if let Some(a) = alpha.iter().find(|a| !a.is_finite()) {
            return Err(Error::InvalidProblem(format!(
                "alpha_{name} contains non-finite entry {a}"
            )));
        }
        if let Some(e) = eta.iter().find(|e| !(e.abs() < 1.0)) {
            return Err(Error::InvalidProblem(format!(
                "eta_{name} entry {e} is not inside (-1, 1)"
            )));
        }
        Ok(BoundarySide { alpha, eta })
    }

    /// Separated Dirichlet conditions `u(-1) = u(1) = 0`.
    pub fn dirichlet() -> Self {
        ProblemSpec {
            minus: BoundarySide::dirichlet(),
            plus: BoundarySide::dirichlet(),
            cone_status: ConeStatus::InsideAPlus,
        }
    }

    pub fn cone_status(&self) -> ConeStatus {
        self.cone_status
    }

    pub fn in_cone(&self) -> bool {
        self.cone_status == ConeStatus::InsideAPlus
    }

    pub fn require_cone(&self) -> Result<()> {
        if self.in_cone() {
            Ok(())
        } else {
            Err(Error::OutsideCone)
        }
    }

    /// Boundary data at `x = -1` (`Sign::Minus`) or `x = 1` (`Sign::Plus`).
    pub fn side_at(&self, side: Sign) -> &BoundarySide {
        match side {
            Sign::Minus => &self.minus,
            Sign::Plus => &self.plus,
        }
    }

    pub fn minus(&self) -> &BoundarySide {
        &self.minus
    }

    pub fn plus(&self) -> &BoundarySide {
        &self.plus
    }

    /// All interior nodes carrying a nonzero coefficient, sorted.
    pub fn active_nodes(&self) -> Vec<f64> {
        let mut v: Vec<f64> = [&self.minus, &self.plus]
            .iter()
            .flat_map(|s| s.alpha.iter().zip(&s.eta))
            .filter(|(a, _)| **a != 0.0)
            .map(|(_, &e)| e)
            .collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Every interior node, whether or not its coefficient is zero.
    pub fn all_nodes(&self) -> impl Iterator<Item = f64> + '_ {
        self.minus.eta.iter().chain(&self.plus.eta).copied()
    }

    /// A copy with one coefficient replaced.
    pub fn with_alpha(&self, side: Sign, index: usize, value: f64) -> Result<Self> {
        let mut minus = self.minus.clone();
        let mut plus = self.plus.clone();
        let target = match side {
            Sign::Minus => &mut minus,
            Sign::Plus => &mut plus,
        };
        let slot = target
            .alpha
            .get_mut(index)
            .ok_or_else(|| Error::InvalidArgument(format!("no coefficient {index} on side {side}")))?;
        *slot = value;
        ProblemSpec::new(minus.alpha, minus.eta, plus.alpha, plus.eta)
    }
}
