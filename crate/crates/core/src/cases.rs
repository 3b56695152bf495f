//! Benchmark catalog: Hamiltonian, domain, boundary rule, initial data,
//! default run settings and, where known, the exact solution.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::analysis::{
    characteristics, constrained_min_sin, crossderiv_exact, hopf_lax_quadratic, linsmth_exact,
    quartic_concave_hopf, rotate_back, Characteristic1d,
};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianModel;
use crate::mesh::Boundary;
use crate::timeloop::{DtLaw, LimiterKind};

/// Mesh family a case runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshKind {
    Line,
    Cartesian,
    Triangles,
    /// Graded triangulation of the unit disk.
    Disk,
}

impl fmt::Display for MeshKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeshKind::Line => "line",
            MeshKind::Cartesian => "cartesian",
            MeshKind::Triangles => "triangles",
            MeshKind::Disk => "disk",
        })
    }
}

/// How the exact solution is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Analytic,
    Characteristic,
    HopfLax,
    /// Hopf formula for concave data.
    Hopf,
    None,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Analytic => "analytic",
            Provenance::Characteristic => "characteristic",
            Provenance::HopfLax => "hopf-lax",
            Provenance::Hopf => "hopf",
            Provenance::None => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Linsmth,
    Linnonsmth,
    Burgers1d,
    Burgers1dVee,
    Eikonal1d,
    Cos1d,
    Quartic1d,
    Rotation,
    RotationSmooth,
    Burgers2d,
    Crossderiv,
    Control,
    Cos2d,
    Sinsum,
    Surface,
    SurfaceDisk,
}

/// Every case name accepted by `--case`.
pub const CASES: &[&str] = &[
    "linsmth",
    "linnonsmth",
    "burgers1d",
    "burgers1d-vee",
    "eikonal1d",
    "cos1d",
    "quartic1d",
    "rotation",
    "rotation-smooth",
    "burgers2d",
    "crossderiv",
    "control",
    "cos2d",
    "sinsum",
    "surface",
    "surface-disk",
];

const BURGERS_SIN: Characteristic1d = Characteristic1d {
    g: |p| 0.5 * p * p,
    dg: |p| p,
    u0: f64::sin,
    du0: f64::cos,
    speed_bound: 1.0,
};

const COS1D: Characteristic1d = Characteristic1d {
    g: |p| -(p + 1.0).cos(),
    dg: |p| (p + 1.0).sin(),
    u0: |x| -(PI * x).cos(),
    du0: |x| PI * (PI * x).sin(),
    speed_bound: 1.0,
};

/// `(p + q + 1)^2 / 2` along `xi = x + y`: `G(r) = 2 (r + 1/2)^2`.
const BURGERS2D_REDUCED: Characteristic1d = Characteristic1d {
    g: |r| 2.0 * (r + 0.5) * (r + 0.5),
    dg: |r| 4.0 * (r + 0.5),
    u0: |s| -(0.5 * PI * s).cos(),
    du0: |s| 0.5 * PI * (0.5 * PI * s).sin(),
    speed_bound: 4.0 * (0.5 * PI + 0.5),
};

/// `-cos(p + q + 1)` along `xi = x + y`: `G(r) = -cos(2r + 1)`.
const COS2D_REDUCED: Characteristic1d = Characteristic1d {
    g: |r| -(2.0 * r + 1.0).cos(),
    dg: |r| 2.0 * (2.0 * r + 1.0).sin(),
    u0: |s| -(0.5 * PI * s).cos(),
    du0: |s| 0.5 * PI * (0.5 * PI * s).sin(),
    speed_bound: 2.0,
};

fn cone(x: [f64; 2]) -> f64 {
    let r = (x[0] - 0.4).hypot(x[1] - 0.4);
    if r <= 0.1 {
        0.2
    } else if r < 0.3 {
        0.3 - r
    } else {
        0.0
    }
}

fn gaussian(x: [f64; 2]) -> f64 {
    let s2 = 0.05 * 0.05;
    (-((x[0] - 0.4).powi(2) + (x[1] - 0.4).powi(2)) / (2.0 * s2)).exp()
}

impl Case {
    pub fn all() -> impl Iterator<Item = Case> {
        CASES.iter().map(|n| n.parse().expect("catalog names parse"))
    }

    pub fn name(&self) -> &'static str {
        use Case::*;
        match self {
            Linsmth => "linsmth",
            Linnonsmth => "linnonsmth",
            Burgers1d => "burgers1d",
            Burgers1dVee => "burgers1d-vee",
            Eikonal1d => "eikonal1d",
            Cos1d => "cos1d",
            Quartic1d => "quartic1d",
            Rotation => "rotation",
            RotationSmooth => "rotation-smooth",
            Burgers2d => "burgers2d",
            Crossderiv => "crossderiv",
            Control => "control",
            Cos2d => "cos2d",
            Sinsum => "sinsum",
            Surface => "surface",
            SurfaceDisk => "surface-disk",
        }
    }

    pub fn model(&self) -> HamiltonianModel {
        use Case::*;
        use HamiltonianModel as H;
        match self {
            Linsmth => H::Linsmth,
            Linnonsmth => H::Linnonsmth,
            Burgers1d | Burgers1dVee => H::Burgers1d,
            Eikonal1d => H::Eikonal1d,
            Cos1d => H::Cos1d,
            Quartic1d => H::Quartic1d,
            Rotation | RotationSmooth => H::Rotation,
            Burgers2d => H::Burgers2d,
            Crossderiv => H::Crossderiv,
            Control => H::Control,
            Cos2d => H::Cos2d,
            Sinsum => H::Sinsum,
            Surface | SurfaceDisk => H::Surface,
        }
    }

    pub fn dim(&self) -> usize {
        self.model().dim()
    }

    pub fn mesh_kind(&self) -> MeshKind {
        use Case::*;
        match self {
            Linsmth | Linnonsmth | Burgers1d | Burgers1dVee | Eikonal1d | Cos1d | Quartic1d => {
                MeshKind::Line
            }
            Rotation | RotationSmooth | Crossderiv | Control | Sinsum => MeshKind::Cartesian,
            Burgers2d | Cos2d | Surface => MeshKind::Triangles,
            SurfaceDisk => MeshKind::Disk,
        }
    }

    /// `[a, b, c, d]`; 1D cases leave `c = d = 0`. The disk reports its
    /// bounding box.
    pub fn domain(&self) -> [f64; 4] {
        use Case::*;
        match self {
            Linsmth | Linnonsmth | Burgers1d | Burgers1dVee | Eikonal1d => [0.0, TAU, 0.0, 0.0],
            Cos1d | Quartic1d => [-1.0, 1.0, 0.0, 0.0],
            Rotation | RotationSmooth | Sinsum => [-1.0, 1.0, -1.0, 1.0],
            Crossderiv | Control => [-PI, PI, -PI, PI],
            Burgers2d | Cos2d => [-2.0, 2.0, -2.0, 2.0],
            Surface => [0.0, 1.0, 0.0, 1.0],
            SurfaceDisk => [-1.0, 1.0, -1.0, 1.0],
        }
    }

    pub fn boundary(&self) -> Boundary {
        match self {
            Case::Quartic1d | Case::Sinsum | Case::SurfaceDisk => Boundary::Outflow,
            _ => Boundary::Periodic,
        }
    }

    pub fn final_time(&self) -> f64 {
        use Case::*;
        match self {
            Burgers1d => 0.5,
            Cos1d | Burgers2d | Cos2d => 0.5 / (PI * PI),
            Crossderiv => 0.8,
            Surface | SurfaceDisk => 0.6,
            _ => 1.0,
        }
    }

    pub fn default_cfl(&self) -> f64 {
        match self {
            Case::Quartic1d => 0.05,
            _ => 0.1,
        }
    }

    pub fn default_limiter(&self) -> LimiterKind {
        match self {
            Case::Quartic1d => LimiterKind::Minmod,
            Case::Sinsum => LimiterKind::Moment,
            _ => LimiterKind::None,
        }
    }

    pub fn default_dt_law(&self) -> DtLaw {
        DtLaw::Standard
    }

    /// Volume rule degree for degree-`k` runs; `None` keeps the space default.
    pub fn default_volume_degree(&self, k: usize) -> Option<usize> {
        match self {
            Case::Eikonal1d => Some(4 * k),
            _ => None,
        }
    }

    /// Default resolution: cells per direction, or per side on triangles,
    /// or rings on the disk.
    pub fn default_n(&self) -> usize {
        use Case::*;
        match self {
            Burgers1dVee | Linnonsmth => 80,
            Rotation | RotationSmooth | Crossderiv => 40,
            Sinsum => 41,
            Burgers2d | Cos2d => 16,
            Surface => 24,
            SurfaceDisk => 12,
            _ => 40,
        }
    }

    pub fn initial(&self, x: [f64; 2]) -> f64 {
        use Case::*;
        let [x, y] = x;
        match self {
            Linsmth | Linnonsmth | Burgers1d | Eikonal1d => x.sin(),
            Burgers1dVee => (x - PI).abs(),
            Cos1d => -(PI * x).cos(),
            Quartic1d => -2.0 * x.abs(),
            Rotation => cone([x, y]),
            RotationSmooth => gaussian([x, y]),
            Burgers2d | Cos2d => -(0.5 * PI * (x + y)).cos(),
            Crossderiv => x.sin() + y.cos(),
            Control => 0.0,
            Sinsum => PI * (y.abs() - x.abs()),
            Surface => 1.0 - 0.25 * ((TAU * x).cos() - 1.0) * ((TAU * y).cos() - 1.0),
            SurfaceDisk => -(0.5 * PI * (x * x + y * y)).sin(),
        }
    }

    pub fn provenance(&self) -> Provenance {
        use Case::*;
        match self {
            Linsmth | Linnonsmth | Eikonal1d | Rotation | RotationSmooth => Provenance::Analytic,
            Burgers1d | Cos1d | Burgers2d | Cos2d | Crossderiv => Provenance::Characteristic,
            Burgers1dVee => Provenance::HopfLax,
            Quartic1d => Provenance::Hopf,
            Control | Sinsum | Surface | SurfaceDisk => Provenance::None,
        }
    }

    pub fn has_exact(&self) -> bool {
        self.provenance() != Provenance::None
    }

    /// Exact solution at `(x, t)`.
    pub fn exact(&self, x: [f64; 2], t: f64) -> Result<f64> {
        use Case::*;
        let [x0, x1] = x;
        match self {
            Linsmth => Ok(linsmth_exact(x0, t)),
            Linnonsmth | Eikonal1d => Ok(constrained_min_sin(x0, t)),
            Burgers1d if t < 1.0 => characteristics(&BURGERS_SIN, x0, t),
            Burgers1d => hopf_lax_quadratic(1.0, 0.0, f64::sin, 1.0, TAU, x0, t),
            Burgers1dVee => {
                let phi0 = |y: f64| (y - PI).rem_euclid(TAU).min((PI - y).rem_euclid(TAU));
                hopf_lax_quadratic(1.0, 0.0, phi0, 1.0, TAU, x0, t)
            }
            Cos1d => characteristics(&COS1D, x0, t),
            Quartic1d => Ok(quartic_concave_hopf(x0, t)),
            Rotation => Ok(cone(rotate_back(x, t))),
            RotationSmooth => Ok(gaussian(rotate_back(x, t))),
            Burgers2d => characteristics(&BURGERS2D_REDUCED, x0 + x1, t),
            Cos2d => characteristics(&COS2D_REDUCED, x0 + x1, t),
            Crossderiv => crossderiv_exact(x, t),
            Control | Sinsum | Surface | SurfaceDisk => Err(Error::Oracle(format!(
                "no exact solution is available for `{}`",
                self.name()
            ))),
        }
    }

    /// Exact solution for `burgers2d` by the Hopf–Lax formula on the reduced
    /// problem, valid after characteristics cross.
    pub fn burgers2d_hopf_lax(x: [f64; 2], t: f64) -> Result<f64> {
        let u0 = |s: f64| -(0.5 * PI * s).cos();
        hopf_lax_quadratic(4.0, 0.5, u0, 0.5 * PI, 4.0, x[0] + x[1], t)
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use Case::*;
        Ok(match s {
            "linsmth" => Linsmth,
            "linnonsmth" => Linnonsmth,
            "burgers1d" => Burgers1d,
            "burgers1d-vee" => Burgers1dVee,
            "eikonal1d" => Eikonal1d,
            "cos1d" => Cos1d,
            "quartic1d" => Quartic1d,
            "rotation" => Rotation,
            "rotation-smooth" => RotationSmooth,
            "burgers2d" => Burgers2d,
            "crossderiv" => Crossderiv,
            "control" => Control,
            "cos2d" => Cos2d,
            "sinsum" => Sinsum,
            "surface" => Surface,
            "surface-disk" => SurfaceDisk,
            _ => return Err(Error::UnknownCase(s.to_string())),
        })
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_matches_initial_data() {
        for case in Case::all().filter(|c| c.has_exact()) {
            let [a, b, c, d] = case.domain();
            for i in 0..7 {
                for j in 0..7 {
                    let x = [
                        a + (b - a) * (i as f64 + 0.37) / 7.0,
                        if case.dim() == 1 { 0.0 } else { c + (d - c) * (j as f64 + 0.61) / 7.0 },
                    ];
                    let e = case.exact(x, 0.0).unwrap();
                    assert!((e - case.initial(x)).abs() <= 1e-10, "{case} at {x:?}");
                }
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for case in Case::all() {
            assert_eq!(case.name().parse::<Case>().unwrap(), case);
            assert_eq!(case.dim(), if case.mesh_kind() == MeshKind::Line { 1 } else { 2 });
        }
        assert!(matches!("nope".parse::<Case>(), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn burgers2d_oracles_agree() {
        let t = Case::Burgers2d.final_time();
        for i in 0..15 {
            let x = [-1.9 + 0.27 * i as f64, 0.3 - 0.11 * i as f64];
            let a = Case::Burgers2d.exact(x, t).unwrap();
            let b = Case::burgers2d_hopf_lax(x, t).unwrap();
            assert!((a - b).abs() <= 1e-9, "{x:?}: {a} vs {b}");
        }
    }

    #[test]
    fn smooth_oracles_refuse_after_crossing() {
        let t = 3.0 / (PI * PI);
        assert!((0..200).any(|i| Case::Cos1d.exact([-1.0 + 0.01 * i as f64, 0.0], t).is_err()));
        assert!((0..200).all(|i| Case::Cos1d.exact([-1.0 + 0.01 * i as f64, 0.0], 0.5 / (PI * PI)).is_ok()));
        assert!(Case::Control.exact([0.0, 0.0], 0.1).is_err());
    }
}
