//! Semi-discrete operator on Cartesian and triangular meshes.
//!
//! At each face quadrature point the normal traces `p_n^-`, `p_n^+` and the
//! averaged tangential derivative feed a directional Roe speed; the element
//! on each side receives its upwind share of `[phi]` and the penalty on
//! `[p_n]` scaled by `|K| / |face|`. Faces are swept first into a buffer,
//! then elements gather from it, so both sweeps parallelize without locks.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::DgField;
use crate::hamiltonian::{HamiltonianModel, Loc};
use crate::par;
use crate::riemann::{roe_data, upwind_weights};
use crate::space::Space;
use crate::timeloop::SemiDiscrete;

/// The 2D operator.
pub struct Solver2d {
    space: Arc<Space>,
    model: HamiltonianModel,
    penalty: f64,
    /// Quadrature points per face.
    n_face_points: usize,
}

#[inline]
fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

impl Solver2d {
    pub fn new(space: Arc<Space>, model: HamiltonianModel, penalty: f64) -> Result<Self> {
        if space.dim() != 2 {
            return Err(Error::InvalidArgument("Solver2d needs a 2D mesh".into()));
        }
        if model.dim() != 2 {
            return Err(Error::InvalidArgument(format!("`{model}` is a 1D Hamiltonian")));
        }
        if !(penalty >= 0.0) {
            return Err(Error::Config(format!("penalty must be >= 0, got {penalty}")));
        }
        let n_face_points = space.face_rule().len();
        Ok(Solver2d {
            space,
            model,
            penalty,
            n_face_points,
        })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn model(&self) -> HamiltonianModel {
        self.model
    }

    /// Per face point: the amplitudes multiplying the side-0 and side-1
    /// test traces, quadrature weight included.
    fn face_sweep(&self, u: &[f64], buf: &mut [f64]) {
        let nd = self.space.n_dofs();
        let ng = self.n_face_points;
        let faces = self.space.faces();
        par::for_each_chunk(buf, 2 * ng, |f, out| {
            let face = &faces[f];
            let [e0, e1] = face.elements;
            let c0 = &u[e0 * nd..(e0 + 1) * nd];
            let c1 = &u[e1 * nd..(e1 + 1) * nd];
            let (t0, t1) = (self.space.face_table(face, 0), self.space.face_table(face, 1));
            let (m0, m1) = (self.space.map(e0), self.space.map(e1));
            let n = face.normal;
            let t = face.tangent;
            let neg = [-n[0], -n[1]];
            let hd = self.model.frame(n, t);
            for g in 0..ng {
                let (v0, r0) = t0.expand(g, c0);
                let (v1, r1) = t1.expand(g, c1);
                let (g0, g1) = (m0.gradient(r0), m1.gradient(r1));
                let (pm, pp) = (dot(g0, n), dot(g1, n));
                let pt = 0.5 * (dot(g0, t) + dot(g1, t));
                let lm = Loc::one_sided(face.points[0][g], neg);
                let lp = Loc::one_sided(face.points[0][g], n);
                let roe = roe_data(&hd, pm, pp, pt, &lm, &lp);
                let (wm, wp) = upwind_weights(&roe);
                let (jphi, jp) = (v1 - v0, pp - pm);
                let w = face.weights[g];
                out[2 * g] = w * (-wm * jphi + self.penalty * face.scale[0] * roe.visc * jp);
                out[2 * g + 1] = w * (-wp * jphi + self.penalty * face.scale[1] * roe.visc * jp);
            }
        });
    }
}

impl SemiDiscrete for Solver2d {
    fn len(&self) -> usize {
        self.space.n_elements() * self.space.n_dofs()
    }

    fn n_dofs(&self) -> usize {
        self.space.n_dofs()
    }

    fn rhs(&self, u: &[f64], out: &mut [f64]) {
        let nd = self.space.n_dofs();
        let ng = self.n_face_points;
        let mut buf = vec![0.0; self.space.faces().len() * 2 * ng];
        self.face_sweep(u, &mut buf);
        let rule = self.space.volume_rule();
        let table = self.space.volume_table();
        let faces = self.space.faces();
        par::for_each_chunk(out, nd, |e, r| {
            r.fill(0.0);
            let c = &u[e * nd..(e + 1) * nd];
            let map = self.space.map(e);
            for (q, (p, w)) in rule.points.iter().zip(&rule.weights).enumerate() {
                let (_, rg) = table.expand(q, c);
                let h = self.model.h(map.gradient(rg), &Loc::at(map.to_physical(*p)));
                let a = -w * map.det * h;
                for (ri, vi) in r.iter_mut().zip(table.values_at(q)) {
                    *ri += a * vi;
                }
            }
            for &(f, side) in self.space.element_faces(e) {
                let tab = self.space.face_table(&faces[f], side);
                let amp = &buf[f * 2 * ng..(f + 1) * 2 * ng];
                for g in 0..ng {
                    let a = amp[2 * g + side];
                    for (ri, vi) in r.iter_mut().zip(tab.values_at(g)) {
                        *ri += a * vi;
                    }
                }
            }
            let inv = 1.0 / map.det;
            r.iter_mut().for_each(|v| *v *= inv);
        });
    }

    fn max_speeds(&self, u: &[f64]) -> [f64; 2] {
        let nd = self.space.n_dofs();
        let rule = self.space.volume_rule();
        let table = self.space.volume_table();
        par::max_over(self.space.n_elements(), |e| {
            let c = &u[e * nd..(e + 1) * nd];
            let map = self.space.map(e);
            let mut s = [0.0f64; 2];
            for (q, p) in rule.points.iter().enumerate() {
                let (_, rg) = table.expand(q, c);
                let d = self.model.grad(map.gradient(rg), &Loc::at(map.to_physical(*p)));
                s = [s[0].max(d[0].abs()), s[1].max(d[1].abs())];
            }
            s
        })
    }

    fn length_scales(&self) -> [f64; 2] {
        self.space.length_scales()
    }
}

/// `L(phi)` for a 2D field on either mesh type.
pub fn assemble_rhs_2d(field: &DgField, model: HamiltonianModel, penalty: f64) -> Result<Vec<f64>> {
    let op = Solver2d::new(field.space().clone(), model, penalty)?;
    let mut out = vec![0.0; op.len()];
    op.rhs(field.coefficients(), &mut out);
    Ok(out)
}
