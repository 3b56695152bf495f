//! Discontinuous Galerkin solver for time-dependent Hamilton–Jacobi equations
//! `phi_t + H(grad phi, x) = 0` on 1D grids, 2D Cartesian grids and
//! unstructured triangulations.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod basis;
pub mod cases;
pub mod error;
pub mod field;
pub mod hamiltonian;
pub mod mesh;
mod par;
pub mod riemann;
pub mod run;
pub mod solver1d;
pub mod solver2d;
pub mod space;
pub mod timeloop;

pub use error::{Error, Result};
