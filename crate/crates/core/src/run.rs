//! One-call drivers: build the mesh for a case, integrate, measure errors.

use std::path::PathBuf;
use std::sync::Arc;

use crate::analysis::{convergence_orders, error_norms, ConvergenceReport, ErrorNorms, ReportMeta};
use crate::cases::{Case, MeshKind};
use crate::error::{Error, Result};
use crate::field::DgField;
use crate::hamiltonian::HamiltonianModel;
use crate::mesh::{disk_mesh, load_tri_mesh, triangulate_rectangle, Boundary, CartMesh2d, DiagonalSplit, Mesh1d, RngSeed};
use crate::solver1d::{SchemeParams, Solver1d};
use crate::solver2d::Solver2d;
use crate::space::{Geometry, Space};
use crate::timeloop::{integrate, make_limiter, RunStats, SemiDiscrete, TimeControls};

/// Grading exponent of generated disk meshes.
pub const DISK_GRADING: f64 = 1.5;

/// Which mesh to build for a case.
#[derive(Debug, Clone, PartialEq)]
pub enum MeshSpec {
    /// `n` cells per direction; `n` subdivisions per side for triangles;
    /// `n` rings for the disk.
    Uniform(usize),
    /// A 1D mesh with every interior node moved by up to `fraction * dx`.
    Perturbed { n: usize, fraction: f64, seed: u64 },
    /// A triangulation read from disk.
    File(PathBuf),
}

impl MeshSpec {
    /// Nominal resolution used as the `N` column of reports.
    pub fn n(&self) -> usize {
        match self {
            MeshSpec::Uniform(n) | MeshSpec::Perturbed { n, .. } => *n,
            MeshSpec::File(_) => 0,
        }
    }
}

/// Builds the geometry of `case` on `spec`.
pub fn build_geometry(case: Case, spec: &MeshSpec) -> Result<Geometry> {
    let [a, b, c, d] = case.domain();
    let boundary = case.boundary();
    match (case.mesh_kind(), spec) {
        (MeshKind::Line, MeshSpec::Uniform(n)) => Ok(Geometry::Line(Mesh1d::uniform(a, b, *n, boundary)?)),
        (MeshKind::Line, MeshSpec::Perturbed { n, fraction, seed }) => Ok(Geometry::Line(
            Mesh1d::uniform(a, b, *n, boundary)?.perturbed(*fraction, RngSeed(*seed))?,
        )),
        (MeshKind::Cartesian, MeshSpec::Uniform(n)) => Ok(Geometry::Cart(CartMesh2d::uniform(
            (a, b),
            (c, d),
            *n,
            *n,
            [boundary; 2],
        )?)),
        (MeshKind::Triangles, MeshSpec::Uniform(n)) => {
            let m = triangulate_rectangle((a, b), (c, d), *n, *n, DiagonalSplit::Alternating)?;
            let m = match boundary {
                Boundary::Periodic => m.with_periodic_pairs(&[[b - a, 0.0], [0.0, d - c]])?,
                Boundary::Outflow => m,
            };
            Ok(Geometry::Tri(m))
        }
        (MeshKind::Disk, MeshSpec::Uniform(n)) => Ok(Geometry::Tri(disk_mesh(1.0, *n, DISK_GRADING)?)),
        (MeshKind::Triangles | MeshKind::Disk, MeshSpec::File(path)) => {
            let m = load_tri_mesh(path)?;
            let m = if boundary == Boundary::Periodic && m.periodic_pairs().is_empty() {
                m.with_periodic_pairs(&[[b - a, 0.0], [0.0, d - c]])?
            } else {
                m
            };
            Ok(Geometry::Tri(m))
        }
        (kind, spec) => Err(Error::Config(format!(
            "case `{case}` runs on a {kind} mesh, which cannot be built from {spec:?}"
        ))),
    }
}

/// The semi-discrete operator matching the space's dimension.
pub fn make_operator(space: Arc<Space>, model: HamiltonianModel, penalty: f64) -> Result<Box<dyn SemiDiscrete>> {
    if space.dim() == 1 {
        Ok(Box::new(Solver1d::new(space, model, penalty)?))
    } else {
        Ok(Box::new(Solver2d::new(space, model, penalty)?))
    }
}

/// A complete run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSetup {
    pub case: Case,
    pub mesh: MeshSpec,
    pub params: SchemeParams,
    pub final_time: f64,
}

impl RunSetup {
    /// The case's own defaults at resolution `n` with degree `k = 2`.
    pub fn defaults(case: Case, n: usize) -> Self {
        Self::defaults_with_degree(case, n, SchemeParams::default().k)
    }

    pub fn defaults_with_degree(case: Case, n: usize, k: usize) -> Self {
        RunSetup {
            case,
            mesh: MeshSpec::Uniform(n),
            params: SchemeParams {
                k,
                cfl: case.default_cfl(),
                limiter: case.default_limiter(),
                dt_law: case.default_dt_law(),
                volume_degree: case.default_volume_degree(k),
                ..SchemeParams::default()
            },
            final_time: case.final_time(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub field: DgField,
    pub stats: RunStats,
    /// Present when the case has an exact solution at the final time.
    pub norms: Option<ErrorNorms>,
    pub h: f64,
}

/// Projects the initial data, integrates to the final time and measures
/// errors. `observer` sees the field after every step.
pub fn run_with(setup: &RunSetup, observer: impl FnMut(&DgField)) -> Result<RunOutcome> {
    setup.params.validate()?;
    let case = setup.case;
    let geometry = build_geometry(case, &setup.mesh)?;
    let h = geometry.h();
    let space = Arc::new(Space::with_volume_degree(geometry, setup.params.k, setup.params.volume_degree)?);
    let op = make_operator(space.clone(), case.model(), setup.params.penalty)?;
    let limiter = make_limiter(setup.params.limiter, &space)?;
    let mut field = DgField::project(space, |x| case.initial(x));
    let controls = TimeControls {
        cfl: setup.params.cfl,
        final_time: setup.final_time,
        dt_law: setup.params.dt_law,
    };
    let stats = integrate(&mut field, op.as_ref(), &controls, limiter.as_deref(), observer)?;
    let norms = if case.has_exact() {
        let t = field.time;
        Some(error_norms(&field, |x| case.exact(x, t))?)
    } else {
        None
    };
    Ok(RunOutcome { field, stats, norms, h })
}

pub fn run(setup: &RunSetup) -> Result<RunOutcome> {
    run_with(setup, |_| {})
}

/// Runs `setup` on each mesh in turn and tabulates errors and orders.
pub fn convergence_study(setup: &RunSetup, meshes: &[MeshSpec]) -> Result<ConvergenceReport> {
    if !setup.case.has_exact() {
        return Err(Error::Oracle(format!("no exact solution is available for `{}`", setup.case)));
    }
    let mut entries = Vec::with_capacity(meshes.len());
    for m in meshes {
        let s = RunSetup {
            mesh: m.clone(),
            ..setup.clone()
        };
        let out = run(&s)?;
        entries.push((m.n(), out.h, out.norms.expect("case has an exact solution")));
    }
    let p = &setup.params;
    let meta = ReportMeta {
        case: setup.case.to_string(),
        k: p.k,
        penalty: p.penalty,
        cfl: p.cfl,
        final_time: setup.final_time,
        limiter: p.limiter.to_string(),
        mesh: setup.case.mesh_kind().to_string(),
    };
    convergence_orders(meta, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_builds_and_steps() {
        for case in Case::all() {
            let n = match case.mesh_kind() {
                MeshKind::Disk => 3,
                _ => 4,
            };
            let mut setup = RunSetup::defaults(case, n);
            setup.params.k = 1;
            setup.final_time = 1e-3;
            let out = run(&setup).unwrap_or_else(|e| panic!("{case}: {e}"));
            assert!(out.field.coefficients().iter().all(|v| v.is_finite()));
            assert_eq!(out.norms.is_some(), case.has_exact());
        }
    }

    #[test]
    fn mesh_kind_mismatch_is_a_config_error() {
        let r = build_geometry(Case::Rotation, &MeshSpec::Perturbed { n: 4, fraction: 0.1, seed: 1 });
        assert!(matches!(r, Err(Error::Config(_))));
    }
}
