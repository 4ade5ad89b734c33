//! Exact verification kernels for the periplectic Yangian.
//!
//! The crate builds the R-matrix `R(u,v) = 1 - P/(u-v) + Q/(u+v)` acting on
//! tensor powers of the superspace `C^{N|N}`, the algebra generated by the
//! coefficients `T_ij^(r)` of the RTT relation, a PBW reduction system for its
//! quotient by `Z(u) = 1`, the central series `B(u)`, and evaluation modules.
//! Every identity is checked in exact rational or rational-function
//! arithmetic; nothing is tested numerically.

pub mod center;
pub mod error;
pub mod pbw;
pub mod report;
pub mod reps;
pub mod rmatrix;
pub mod scalars;
pub mod superlinalg;
pub mod yangian;

pub use error::{Error, Result};
