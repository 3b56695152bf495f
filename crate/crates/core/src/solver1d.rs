//! Semi-discrete operator on a 1D mesh.
//!
//! For each cell `I_j` and test function `v`:
//!
//! ```text
//! d/dt int phi v = - int H(phi_x, x) v
//!                  - min(H~, 0) [phi] v^-(x_{j+1/2}) - max(H~, 0) [phi] v^+(x_{j-1/2})
//!                  + C dx_j (S - |H~|) [phi_x] (v^-(x_{j+1/2}) + v^+(x_{j-1/2}))
//! ```
//!
//! with jumps `[w] = w^+ - w^-` taken left to right.

use std::sync::Arc;

use crate::basis::{BasisTable, ElementKind};
use crate::error::{Error, Result};
use crate::hamiltonian::{HamiltonianModel, Loc};
use crate::mesh::{Boundary, Mesh1d};
use crate::par;
use crate::riemann::{roe_from_values, upwind_weights, RoeData};
use crate::space::{Geometry, Space};
use crate::timeloop::{DtLaw, LimiterKind, SemiDiscrete};

/// Default penalty constant.
pub const DEFAULT_PENALTY: f64 = 0.25;

/// Discretization parameters shared by all assemblers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    /// Polynomial degree.
    pub k: usize,
    /// Penalty constant `C >= 0`.
    pub penalty: f64,
    pub cfl: f64,
    pub limiter: LimiterKind,
    pub dt_law: DtLaw,
    /// Minimum exactness degree of the volume rule; `None` keeps the default.
    pub volume_degree: Option<usize>,
}

impl Default for SchemeParams {
    fn default() -> Self {
        SchemeParams {
            k: 2,
            penalty: DEFAULT_PENALTY,
            cfl: 0.1,
            limiter: LimiterKind::None,
            dt_law: DtLaw::Standard,
            volume_degree: None,
        }
    }
}

impl SchemeParams {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidDegree(0));
        }
        if !(self.penalty >= 0.0) || !self.penalty.is_finite() {
            return Err(Error::Config(format!(
                "penalty constant must be finite and >= 0, got {}",
                self.penalty
            )));
        }
        if !(self.cfl > 0.0) || !self.cfl.is_finite() {
            return Err(Error::Config(format!("CFL must be positive, got {}", self.cfl)));
        }
        Ok(())
    }
}

/// End-point values and reference derivatives of the basis.
struct Ends {
    /// Index 0 at `xi = -1`, 1 at `xi = +1`.
    table: BasisTable,
}

impl Ends {
    fn value(&self, side: usize, c: &[f64]) -> (f64, f64) {
        let (v, g) = self.table.expand(side, c);
        (v, g[0])
    }

    fn basis(&self, side: usize) -> &[f64] {
        self.table.values_at(side)
    }
}

/// The 1D operator.
pub struct Solver1d {
    space: Arc<Space>,
    model: HamiltonianModel,
    penalty: f64,
    ends: Ends,
}

impl Solver1d {
    pub fn new(space: Arc<Space>, model: HamiltonianModel, penalty: f64) -> Result<Self> {
        if space.kind() != ElementKind::Interval {
            return Err(Error::InvalidArgument("Solver1d needs a 1D mesh".into()));
        }
        if model.dim() != 1 {
            return Err(Error::InvalidArgument(format!(
                "`{model}` is a 2D Hamiltonian"
            )));
        }
        if !(penalty >= 0.0) {
            return Err(Error::Config(format!("penalty must be >= 0, got {penalty}")));
        }
        let table = space.basis().tabulate_points(&[[-1.0, 0.0], [1.0, 0.0]]);
        Ok(Solver1d {
            space,
            model,
            penalty,
            ends: Ends { table },
        })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn model(&self) -> HamiltonianModel {
        self.model
    }

    fn mesh(&self) -> &Mesh1d {
        match self.space.geometry() {
            Geometry::Line(m) => m,
            _ => unreachable!("checked in Solver1d::new"),
        }
    }

    /// Roe data at interface `i` between cells `left` and `right`.
    fn interface(&self, u: &[f64], left: usize, right: usize) -> (f64, f64, RoeData) {
        let nd = self.space.n_dofs();
        let m = self.mesh();
        let (vl, gl) = self.ends.value(1, &u[left * nd..(left + 1) * nd]);
        let (vr, gr) = self.ends.value(0, &u[right * nd..(right + 1) * nd]);
        let pm = gl * 2.0 / m.width(left);
        let pp = gr * 2.0 / m.width(right);
        // Both sides use the left cell's coordinate so that a periodic seam
        // sees one point even when H is not periodic.
        let x = m.interfaces()[left + 1];
        let lm = Loc::one_sided([x, 0.0], [-1.0, 0.0]);
        let lp = Loc::one_sided([x, 0.0], [1.0, 0.0]);
        let h = [self.model.h([pm, 0.0], &lm), self.model.h([pp, 0.0], &lp)];
        let h1 = [self.model.grad([pm, 0.0], &lm)[0], self.model.grad([pp, 0.0], &lp)[0]];
        (vr - vl, pp - pm, roe_from_values(pm, pp, h, h1))
    }

    /// Neighbor across the left (`side = 0`) or right end of cell `j`.
    fn neighbor(&self, j: usize, side: usize) -> Option<usize> {
        let m = self.mesh();
        let n = m.n_cells();
        let periodic = m.boundary() == Boundary::Periodic;
        match side {
            0 if j > 0 => Some(j - 1),
            0 => periodic.then_some(n - 1),
            _ if j + 1 < n => Some(j + 1),
            _ => periodic.then_some(0),
        }
    }
}

impl SemiDiscrete for Solver1d {
    fn len(&self) -> usize {
        self.space.n_elements() * self.space.n_dofs()
    }

    fn n_dofs(&self) -> usize {
        self.space.n_dofs()
    }

    fn rhs(&self, u: &[f64], out: &mut [f64]) {
        let nd = self.space.n_dofs();
        let m = self.mesh();
        let rule = self.space.volume_rule();
        let table = self.space.volume_table();
        par::for_each_chunk(out, nd, |j, r| {
            r.fill(0.0);
            let c = &u[j * nd..(j + 1) * nd];
            let dx = m.width(j);
            let map = self.space.map(j);
            for (q, (p, w)) in rule.points.iter().zip(&rule.weights).enumerate() {
                let (_, g) = table.expand(q, c);
                let px = g[0] * 2.0 / dx;
                let h = self.model.h([px, 0.0], &Loc::at(map.to_physical(*p)));
                let f = -w * h * 0.5 * dx;
                for (ri, vi) in r.iter_mut().zip(table.values_at(q)) {
                    *ri += f * vi;
                }
            }
            // Left end: this cell is the right state.
            if let Some(l) = self.neighbor(j, 0) {
                let (jphi, jp, roe) = self.interface(u, l, j);
                let (_, wp) = upwind_weights(&roe);
                let a = -wp * jphi + self.penalty * dx * roe.visc * jp;
                for (ri, vi) in r.iter_mut().zip(self.ends.basis(0)) {
                    *ri += a * vi;
                }
            }
            // Right end: this cell is the left state.
            if let Some(rn) = self.neighbor(j, 1) {
                let (jphi, jp, roe) = self.interface(u, j, rn);
                let (wm, _) = upwind_weights(&roe);
                let a = -wm * jphi + self.penalty * dx * roe.visc * jp;
                for (ri, vi) in r.iter_mut().zip(self.ends.basis(1)) {
                    *ri += a * vi;
                }
            }
            let inv = 2.0 / dx;
            r.iter_mut().for_each(|v| *v *= inv);
        });
    }

    fn max_speeds(&self, u: &[f64]) -> [f64; 2] {
        let nd = self.space.n_dofs();
        let rule = self.space.volume_rule();
        let table = self.space.volume_table();
        par::max_over(self.space.n_elements(), |j| {
            let c = &u[j * nd..(j + 1) * nd];
            let map = self.space.map(j);
            let mut s: f64 = 0.0;
            for (q, p) in rule.points.iter().enumerate() {
                let (_, g) = table.expand(q, c);
                let px = map.gradient(g)[0];
                s = s.max(self.model.grad([px, 0.0], &Loc::at(map.to_physical(*p)))[0].abs());
            }
            [s, 0.0]
        })
    }

    fn length_scales(&self) -> [f64; 2] {
        self.space.length_scales()
    }
}

/// `L(phi)` for a 1D field.
pub fn assemble_rhs_1d(
    field: &crate::field::DgField,
    model: HamiltonianModel,
    penalty: f64,
) -> Result<Vec<f64>> {
    let op = Solver1d::new(field.space().clone(), model, penalty)?;
    let mut out = vec![0.0; op.len()];
    op.rhs(field.coefficients(), &mut out);
    Ok(out)
}
