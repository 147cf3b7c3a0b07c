//! Shooting solvers for the forced and nonlinear problems, and branch
//! continuation for nodal solutions.

pub mod branch;
pub mod forcing;
pub mod integrate;
pub mod solve;

pub use branch::{continue_branch, find_nodal, BranchPoint};
pub use forcing::{Forcing, Nonlinearity};
pub use integrate::{integrate, integrate_with_breaks, Trajectory};
pub use solve::{
    default_starts, lattice_starts, solve_halflinear, solve_nonlinear, trajectory_nodal_class, ShootOptions,
    ShootingState, Solution,
};
