//! Half-eigenvalues and Fučík spectra, with shooting solvers, for the
//! jumping-nonlinearity problem
//!
//! ```text
//! -u'' = lambda (a u^+ - b u^-),    u(+-1) = sum_i alpha_i^+- u(eta_i^+-)
//! ```
//!
//! and for the general nonlinear problem `-u'' = f(u) + h` under the same
//! multi-point Dirichlet-type conditions.
//!
//! The homogeneous problem is solved exactly: every solution of the
//! differential equation is a scaled translate of one periodic profile
//! ([`profile::JumpingProfile`]), so half-eigenvalues reduce to scalar root
//! finding on the boundary residuals ([`residual`], [`spectrum`]). The
//! inhomogeneous and nonlinear problems are handled by shooting
//! ([`shoot`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fucik;
pub mod problem;
pub mod profile;
pub mod residual;
pub mod shoot;
mod sign;
pub mod solvability;
pub mod spectrum;
pub mod svg;
pub mod verify;

pub use error::{Error, Result};
pub use problem::{ConeStatus, ProblemSpec};
pub use profile::{JumpingProfile, PhasePoint};
pub use sign::Sign;
pub use spectrum::HalfEigenvalue;
