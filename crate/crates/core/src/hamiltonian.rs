//! Hamiltonians `H(grad phi, x)` and their gradient-derivatives.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `sign` with `sign(0) = 0`.
#[inline]
pub fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// A spatial location, optionally approached from one side.
///
/// `dir` is the direction along which the point is approached: the value of
/// a coefficient discontinuous at `x` is its limit along `x + s dir` as
/// `s -> 0+`. A zero `dir` means a plain interior evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Loc {
    pub x: [f64; 2],
    pub dir: [f64; 2],
}

impl Loc {
    pub fn at(x: [f64; 2]) -> Self {
        Loc { x, dir: [0.0; 2] }
    }

    pub fn one_sided(x: [f64; 2], dir: [f64; 2]) -> Self {
        Loc { x, dir }
    }
}

/// Every Hamiltonian in the catalog, plus constant advection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HamiltonianModel {
    /// `sin(x) p`
    Linsmth,
    /// `sign(cos x) p`
    Linnonsmth,
    /// `p^2 / 2`
    Burgers1d,
    /// `|p|`
    Eikonal1d,
    /// `-cos(p + 1)`
    Cos1d,
    /// `(p^2 - 1)(p^2 - 4) / 4`
    Quartic1d,
    /// `-y p + x q`
    Rotation,
    /// `(p + q + 1)^2 / 2`
    Burgers2d,
    /// `p q`
    Crossderiv,
    /// `sin(y) p + (sin(x) + sign(q)) q - sin(y)^2 / 2 + cos(x) - 1`
    Control,
    /// `-cos(p + q + 1)`
    Cos2d,
    /// `sin(p + q)`
    Sinsum,
    /// `-sqrt(p^2 + q^2 + 1)`
    Surface,
    /// `a . grad phi`; one-dimensional when `a[1] == 0` and built with
    /// [`HamiltonianModel::advection_1d`].
    Advection { a: [f64; 2], dim: usize },
}

/// Names accepted by [`HamiltonianModel::from_str`].
pub const CATALOG: &[&str] = &[
    "linsmth",
    "linnonsmth",
    "burgers1d",
    "eikonal1d",
    "cos1d",
    "quartic1d",
    "rotation",
    "burgers2d",
    "crossderiv",
    "control",
    "cos2d",
    "sinsum",
    "surface",
];

impl HamiltonianModel {
    pub fn advection_1d(a: f64) -> Self {
        HamiltonianModel::Advection { a: [a, 0.0], dim: 1 }
    }

    pub fn advection_2d(a: [f64; 2]) -> Self {
        HamiltonianModel::Advection { a, dim: 2 }
    }

    pub fn name(&self) -> &'static str {
        use HamiltonianModel::*;
        match self {
            Linsmth => "linsmth",
            Linnonsmth => "linnonsmth",
            Burgers1d => "burgers1d",
            Eikonal1d => "eikonal1d",
            Cos1d => "cos1d",
            Quartic1d => "quartic1d",
            Rotation => "rotation",
            Burgers2d => "burgers2d",
            Crossderiv => "crossderiv",
            Control => "control",
            Cos2d => "cos2d",
            Sinsum => "sinsum",
            Surface => "surface",
            Advection { .. } => "advection",
        }
    }

    pub fn dim(&self) -> usize {
        use HamiltonianModel::*;
        match self {
            Linsmth | Linnonsmth | Burgers1d | Eikonal1d | Cos1d | Quartic1d => 1,
            Advection { dim, .. } => *dim,
            _ => 2,
        }
    }

    /// Convex in the gradient.
    pub fn is_convex(&self) -> bool {
        use HamiltonianModel::*;
        matches!(
            self,
            Linsmth | Linnonsmth | Burgers1d | Eikonal1d | Rotation | Burgers2d | Advection { .. }
        )
    }

    /// Differentiable in both the gradient and the position.
    pub fn is_smooth(&self) -> bool {
        use HamiltonianModel::*;
        !matches!(self, Linnonsmth | Eikonal1d | Control)
    }

    /// `H(p, q, x, y)`. One-dimensional models ignore `q` and `y`.
    pub fn h(&self, g: [f64; 2], at: &Loc) -> f64 {
        use HamiltonianModel::*;
        let [p, q] = g;
        let [x, y] = at.x;
        match self {
            Linsmth => x.sin() * p,
            Linnonsmth => sign_cos(at) * p,
            Burgers1d => 0.5 * p * p,
            Eikonal1d => p.abs(),
            Cos1d => -(p + 1.0).cos(),
            Quartic1d => 0.25 * (p * p - 1.0) * (p * p - 4.0),
            Rotation => -y * p + x * q,
            Burgers2d => {
                let s = p + q + 1.0;
                0.5 * s * s
            }
            Crossderiv => p * q,
            Control => {
                let sy = y.sin();
                sy * p + (x.sin() + sign(q)) * q - 0.5 * sy * sy + x.cos() - 1.0
            }
            Cos2d => -(p + q + 1.0).cos(),
            Sinsum => (p + q).sin(),
            Surface => -(p * p + q * q + 1.0).sqrt(),
            Advection { a, .. } => a[0] * p + a[1] * q,
        }
    }

    /// `(dH/dp, dH/dq)`. Kinks use the `sign(0) = 0` convention.
    pub fn grad(&self, g: [f64; 2], at: &Loc) -> [f64; 2] {
        use HamiltonianModel::*;
        let [p, q] = g;
        let [x, y] = at.x;
        match self {
            Linsmth => [x.sin(), 0.0],
            Linnonsmth => [sign_cos(at), 0.0],
            Burgers1d => [p, 0.0],
            Eikonal1d => [sign(p), 0.0],
            Cos1d => [(p + 1.0).sin(), 0.0],
            Quartic1d => [p * p * p - 2.5 * p, 0.0],
            Rotation => [-y, x],
            Burgers2d => {
                let s = p + q + 1.0;
                [s, s]
            }
            Crossderiv => [q, p],
            Control => [y.sin(), x.sin() + sign(q)],
            Cos2d => {
                let s = (p + q + 1.0).sin();
                [s, s]
            }
            Sinsum => {
                let c = (p + q).cos();
                [c, c]
            }
            Surface => {
                let r = (p * p + q * q + 1.0).sqrt();
                [-p / r, -q / r]
            }
            Advection { a, .. } => *a,
        }
    }

    /// `H` restricted to a face frame.
    pub fn directional(&self, n: [f64; 2], t: [f64; 2]) -> Result<DirectionalHamiltonian<'_>> {
        let unit = |v: [f64; 2]| (v[0].hypot(v[1]) - 1.0).abs() <= 1e-12;
        if !unit(n) || !unit(t) || (n[0] * t[0] + n[1] * t[1]).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "face frame must be orthonormal, got n = {n:?}, t = {t:?}"
            )));
        }
        Ok(DirectionalHamiltonian { model: self, n, t })
    }

    /// As [`HamiltonianModel::directional`] for frames already known to be
    /// orthonormal.
    #[inline]
    pub(crate) fn frame(&self, n: [f64; 2], t: [f64; 2]) -> DirectionalHamiltonian<'_> {
        DirectionalHamiltonian { model: self, n, t }
    }
}

fn sign_cos(at: &Loc) -> f64 {
    let x = at.x[0];
    let c = x.cos();
    if c.abs() < 1e-12 {
        // One-sided limit of cos(x + s dir) = cos x - s sin(x) dir.
        sign(-x.sin() * at.dir[0])
    } else {
        sign(c)
    }
}

impl FromStr for HamiltonianModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use HamiltonianModel::*;
        Ok(match s {
            "linsmth" => Linsmth,
            "linnonsmth" => Linnonsmth,
            "burgers1d" => Burgers1d,
            "eikonal1d" => Eikonal1d,
            "cos1d" => Cos1d,
            "quartic1d" => Quartic1d,
            "rotation" => Rotation,
            "burgers2d" => Burgers2d,
            "crossderiv" => Crossderiv,
            "control" => Control,
            "cos2d" => Cos2d,
            "sinsum" => Sinsum,
            "surface" => Surface,
            _ => return Err(Error::UnknownCase(s.to_string())),
        })
    }
}

impl fmt::Display for HamiltonianModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A 2D Hamiltonian seen in an orthonormal face frame `(n, t)`:
/// `H_n(p_n, p_t) = H(p_n n + p_t t)`.
#[derive(Debug, Clone, Copy)]
pub struct DirectionalHamiltonian<'a> {
    model: &'a HamiltonianModel,
    n: [f64; 2],
    t: [f64; 2],
}

impl DirectionalHamiltonian<'_> {
    #[inline]
    fn gradient(&self, pn: f64, pt: f64) -> [f64; 2] {
        [pn * self.n[0] + pt * self.t[0], pn * self.n[1] + pt * self.t[1]]
    }

    pub fn normal(&self) -> [f64; 2] {
        self.n
    }

    pub fn tangent(&self) -> [f64; 2] {
        self.t
    }

    #[inline]
    pub fn h(&self, pn: f64, pt: f64, at: &Loc) -> f64 {
        self.model.h(self.gradient(pn, pt), at)
    }

    /// `dH_n / dp_n = grad_p H . n`.
    #[inline]
    pub fn dh(&self, pn: f64, pt: f64, at: &Loc) -> f64 {
        let g = self.model.grad(self.gradient(pn, pt), at);
        g[0] * self.n[0] + g[1] * self.n[1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn catalog_values() {
        let o = Loc::at([0.3, -0.2]);
        let m = HamiltonianModel::Burgers1d;
        assert_eq!(m.h([3.0, 0.0], &o), 4.5);
        assert_eq!(m.grad([3.0, 0.0], &o)[0], 3.0);
        assert_eq!(HamiltonianModel::Eikonal1d.grad([0.0, 0.0], &o)[0], 0.0);
        let q = HamiltonianModel::Quartic1d;
        assert_eq!(q.h([1.0, 0.0], &o), 0.0);
        assert_eq!(q.h([2.0, 0.0], &o), 0.0);
        assert!("nope".parse::<HamiltonianModel>().is_err());
        for name in CATALOG {
            assert_eq!(name.parse::<HamiltonianModel>().unwrap().name(), *name);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let eps = 1e-5;
        let samples = [[0.7, -1.3], [-0.4, 0.9], [1.9, 0.35], [-2.2, -0.6]];
        let places = [[0.4, 1.1], [-2.0, 0.3], [2.9, -1.7]];
        for name in CATALOG {
            let m: HamiltonianModel = name.parse().unwrap();
            for g in samples {
                for x in places {
                    let at = Loc::at(x);
                    let d = m.grad(g, &at);
                    for k in 0..m.dim() {
                        let (mut gp, mut gm) = (g, g);
                        gp[k] += eps;
                        gm[k] -= eps;
                        let fd = (m.h(gp, &at) - m.h(gm, &at)) / (2.0 * eps);
                        assert!(
                            (fd - d[k]).abs() <= 1e-6 * fd.abs().max(1.0),
                            "{name} d{k} at {g:?}: {fd} vs {}",
                            d[k]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn one_sided_sign_cos() {
        let x = std::f64::consts::FRAC_PI_2;
        let m = HamiltonianModel::Linnonsmth;
        let left = Loc::one_sided([x, 0.0], [-1.0, 0.0]);
        let right = Loc::one_sided([x, 0.0], [1.0, 0.0]);
        assert_eq!(m.grad([0.0; 2], &left)[0], 1.0);
        assert_eq!(m.grad([0.0; 2], &right)[0], -1.0);
        let x = 1.5 * std::f64::consts::PI;
        assert_eq!(m.grad([0.0; 2], &Loc::one_sided([x, 0.0], [-1.0, 0.0]))[0], -1.0);
        assert_eq!(m.grad([0.0; 2], &Loc::one_sided([x, 0.0], [1.0, 0.0]))[0], 1.0);
    }

    #[test]
    fn directional_frames() {
        let at = Loc::at([0.1, 0.2]);
        let b = HamiltonianModel::Burgers2d;
        let d = b.directional([1.0, 0.0], [0.0, 1.0]).unwrap();
        assert_eq!(d.dh(0.5, 0.25, &at), 0.5 + 0.25 + 1.0);
        let s = HamiltonianModel::Surface;
        let d = s.directional([0.0, 1.0], [-1.0, 0.0]).unwrap();
        let (p, q) = (0.3, -0.8);
        // In this frame p_n = q and p_t = -p.
        let expect = -q / (p * p + q * q + 1.0f64).sqrt();
        assert!((d.dh(q, -p, &at) - expect).abs() < 1e-15);
        let c = HamiltonianModel::Crossderiv;
        let n = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];
        let t = [-FRAC_1_SQRT_2, FRAC_1_SQRT_2];
        let d = c.directional(n, t).unwrap();
        let (pn, pt) = (0.7, -1.1);
        let g = [pn * n[0] + pt * t[0], pn * n[1] + pt * t[1]];
        assert!((d.h(pn, pt, &at) - g[0] * g[1]).abs() <= 1e-12);
        assert!(c.directional([1.0, 0.1], [0.0, 1.0]).is_err());
    }
}
