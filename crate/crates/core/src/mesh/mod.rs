//! Meshes: uniform and randomly perturbed 1D grids, 2D Cartesian grids, and
//! unstructured triangulations with periodic edge pairing.

mod cart;
mod gen;
mod io;
mod line;
mod tri;

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub use cart::CartMesh2d;
pub use gen::{disk_mesh, triangulate_rectangle, DiagonalSplit};
pub use io::{load_tri_mesh, parse_gmsh, parse_native, write_native};
pub use line::Mesh1d;
pub use tri::{Edge, EdgeLink, TriMesh2d, PERIODIC_TOLERANCE};

/// How the outermost faces of a structured mesh are closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Opposite ends are identified.
    Periodic,
    /// The exterior trace copies the interior one, so boundary faces carry
    /// no jump and contribute nothing.
    Outflow,
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "periodic" => Ok(Boundary::Periodic),
            "outflow" | "extrapolate" => Ok(Boundary::Outflow),
            "dirichlet" | "inflow" => Err(Error::UnsupportedBoundary(format!(
                "`{s}` boundary data is not supported; use periodic or outflow"
            ))),
            _ => Err(Error::UnsupportedBoundary(s.to_string())),
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Periodic => write!(f, "periodic"),
            Boundary::Outflow => write!(f, "outflow"),
        }
    }
}

/// Seed for reproducible mesh perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RngSeed(pub u64);
