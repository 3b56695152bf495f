//! Discrete solutions: projection, point evaluation, face traces, dumps.

use std::io::{self, Write};
use std::sync::Arc;

use crate::basis::rule_for;
use crate::error::{Error, Result};
use crate::space::{Geometry, Space};

/// One-sided limits at a face point. The minus side is the active element;
/// `normal` points out of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceTrace {
    pub point: [f64; 2],
    pub normal: [f64; 2],
    pub tangent: [f64; 2],
    pub minus: (f64, [f64; 2]),
    pub plus: (f64, [f64; 2]),
}

impl InterfaceTrace {
    /// `[phi] = phi^+ - phi^-`.
    pub fn jump(&self) -> f64 {
        self.plus.0 - self.minus.0
    }

    pub fn average(&self) -> f64 {
        0.5 * (self.plus.0 + self.minus.0)
    }

    pub fn pn_minus(&self) -> f64 {
        dot(self.minus.1, self.normal)
    }

    pub fn pn_plus(&self) -> f64 {
        dot(self.plus.1, self.normal)
    }

    /// `[grad phi . n]`.
    pub fn normal_jump(&self) -> f64 {
        self.pn_plus() - self.pn_minus()
    }

    /// Mean of the two tangential derivatives.
    pub fn tangential_average(&self) -> f64 {
        0.5 * (dot(self.minus.1, self.tangent) + dot(self.plus.1, self.tangent))
    }
}

#[inline]
fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// `phi_h` as per-element modal coefficients.
#[derive(Debug, Clone)]
pub struct DgField {
    space: Arc<Space>,
    coeffs: Vec<f64>,
    pub time: f64,
}

impl DgField {
    pub fn zeros(space: Arc<Space>) -> Self {
        let n = space.n_elements() * space.n_dofs();
        DgField {
            space,
            coeffs: vec![0.0; n],
            time: 0.0,
        }
    }

    pub fn from_coefficients(space: Arc<Space>, coeffs: Vec<f64>) -> Result<Self> {
        let n = space.n_elements() * space.n_dofs();
        if coeffs.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(DgField {
            space,
            coeffs,
            time: 0.0,
        })
    }

    /// Element-wise `L^2` projection with a rule of degree `2k + 2`.
    pub fn project(space: Arc<Space>, f: impl Fn([f64; 2]) -> f64) -> Self {
        let k = space.degree();
        let rule = rule_for(space.kind(), 2 * k + 2).expect("projection rule within supported degree");
        let table = space.basis().tabulate(&rule);
        let nd = space.n_dofs();
        let mut coeffs = vec![0.0; space.n_elements() * nd];
        for (e, c) in coeffs.chunks_mut(nd).enumerate() {
            let map = space.map(e);
            for (q, (p, w)) in rule.points.iter().zip(&rule.weights).enumerate() {
                let fv = w * f(map.to_physical(*p));
                for (ci, vi) in c.iter_mut().zip(table.values_at(q)) {
                    *ci += fv * vi;
                }
            }
        }
        DgField {
            space,
            coeffs,
            time: 0.0,
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coefficients_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn element(&self, e: usize) -> &[f64] {
        let nd = self.space.n_dofs();
        &self.coeffs[e * nd..(e + 1) * nd]
    }

    /// Value and physical gradient at reference point `xi` of element `e`.
    pub fn eval_reference(&self, e: usize, xi: [f64; 2]) -> (f64, [f64; 2]) {
        let (vals, grads) = self.space.basis().eval(xi);
        let c = self.element(e);
        let (mut v, mut g) = (0.0, [0.0; 2]);
        for i in 0..c.len() {
            v += c[i] * vals[i];
            g[0] += c[i] * grads[i][0];
            g[1] += c[i] * grads[i][1];
        }
        (v, self.space.map(e).gradient(g))
    }

    /// Value and gradient of the polynomial on element `e` at physical `x`.
    pub fn eval(&self, e: usize, x: [f64; 2]) -> Result<(f64, [f64; 2])> {
        if e >= self.space.n_elements() {
            return Err(Error::InvalidArgument(format!(
                "element {e} out of range (mesh has {})",
                self.space.n_elements()
            )));
        }
        Ok(self.eval_reference(e, self.space.map(e).to_reference(x)))
    }

    /// Value at a physical point, locating its element first.
    pub fn sample(&self, x: [f64; 2]) -> Option<f64> {
        self.space
            .locate(x)
            .map(|(e, xi)| self.eval_reference(e, xi).0)
    }

    /// Element mean `c_0 / sqrt(|reference element|)`.
    pub fn mean(&self, e: usize) -> f64 {
        self.element(e)[0] / self.space.kind().measure().sqrt()
    }

    pub fn means(&self) -> Vec<f64> {
        (0..self.space.n_elements()).map(|e| self.mean(e)).collect()
    }

    /// Traces at quadrature point `g` of face `face`, with `side` active.
    pub fn trace(&self, face: usize, g: usize, side: usize) -> InterfaceTrace {
        let f = &self.space.faces()[face];
        let eval = |s: usize| {
            let table = self.space.face_table(f, s);
            let (v, gr) = table.expand(g, self.element(f.elements[s]));
            (v, self.space.map(f.elements[s]).gradient(gr))
        };
        let sign = if side == 0 { 1.0 } else { -1.0 };
        let normal = [sign * f.normal[0], sign * f.normal[1]];
        InterfaceTrace {
            point: f.points[side][g],
            normal,
            tangent: [-normal[1], normal[0]],
            minus: eval(side),
            plus: eval(1 - side),
        }
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Writes `element,dof,coefficient` rows.
    pub fn write_coefficients_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "element,dof,coefficient")?;
        let nd = self.space.n_dofs();
        for (i, c) in self.coeffs.iter().enumerate() {
            writeln!(w, "{},{},{:.16e}", i / nd, i % nd, c)?;
        }
        Ok(())
    }

    /// Writes point samples: `x,phi` on `resolution` points per cell in 1D,
    /// `x,y,phi` on a `resolution x resolution` grid over the bounding box
    /// in 2D (points outside the mesh are skipped).
    pub fn write_samples_csv(&self, mut w: impl Write, resolution: usize) -> io::Result<()> {
        let r = resolution.max(1);
        match self.space.geometry() {
            Geometry::Line(m) => {
                writeln!(w, "x,phi")?;
                for j in 0..m.n_cells() {
                    for s in 0..r {
                        let xi = -1.0 + (2.0 * s as f64 + 1.0) / r as f64;
                        let x = self.space.map(j).to_physical([xi, 0.0]);
                        let (v, _) = self.eval_reference(j, [xi, 0.0]);
                        writeln!(w, "{:.16e},{:.16e}", x[0], v)?;
                    }
                }
            }
            _ => {
                writeln!(w, "x,y,phi")?;
                let [a, b, c, d] = self.bounding_box();
                for j in 0..r {
                    for i in 0..r {
                        let x = a + (b - a) * (i as f64 + 0.5) / r as f64;
                        let y = c + (d - c) * (j as f64 + 0.5) / r as f64;
                        if let Some(v) = self.sample([x, y]) {
                            writeln!(w, "{:.16e},{:.16e},{:.16e}", x, y, v)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `[xmin, xmax, ymin, ymax]` of the mesh.
    pub fn bounding_box(&self) -> [f64; 4] {
        match self.space.geometry() {
            Geometry::Line(m) => {
                let (a, b) = m.domain();
                [a, b, 0.0, 0.0]
            }
            Geometry::Cart(m) => m.domain(),
            Geometry::Tri(m) => m.nodes().iter().fold(
                [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY],
                |b, p| [b[0].min(p[0]), b[1].max(p[0]), b[2].min(p[1]), b[3].max(p[1])],
            ),
        }
    }
}
