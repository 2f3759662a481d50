//! Bonded thin shell on an elastic foundation over an elliptic semi-prism.
//!
//! The crate provides the differential geometry of the chart, finite
//! difference forms of the foundation and shell equations, solvers for the
//! bonded shell model and the fully resolved two-body model, the membrane
//! closed form, and the comparison harness between the two models.

pub mod analysis;
pub mod closed_form;
pub mod elliptic;
pub mod error;
pub mod foundation;
pub mod geometry;
pub mod grid;
pub mod material;
pub mod shell;
pub mod solver;
pub mod stencil;
pub mod two_body;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{validate_shell_assumption, ShellAssumptionReport, SurfaceFamily};
pub use grid::{Field2D, Grid, Psi0Rule};
pub use material::{Deltas, IsotropicMaterial, ModelParams};
pub use solver::{solve, Method, SolveReport, SolverConfig};
