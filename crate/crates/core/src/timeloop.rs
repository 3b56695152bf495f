//! Third-order TVD Runge–Kutta, time-step laws and slope limiters.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::DgField;
use crate::space::{Geometry, Space};

/// A method-of-lines operator `du/dt = L(u)` on a flat coefficient vector.
pub trait SemiDiscrete: Sync {
    /// Length of the state vector.
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coefficients per element; non-finite errors report `index / n_dofs`.
    fn n_dofs(&self) -> usize;

    /// Writes `L(u)` into `out`.
    fn rhs(&self, u: &[f64], out: &mut [f64]);

    /// `(max |H1|, max |H2|)` over the volume quadrature points.
    fn max_speeds(&self, u: &[f64]) -> [f64; 2];

    /// Smallest element lengths per direction.
    fn length_scales(&self) -> [f64; 2];
}

/// Wraps a closure as a single-element [`SemiDiscrete`], for ODE tests.
pub struct FnOperator<F> {
    pub len: usize,
    pub f: F,
}

impl<F: Fn(&[f64], &mut [f64]) + Sync> SemiDiscrete for FnOperator<F> {
    fn len(&self) -> usize {
        self.len
    }

    fn n_dofs(&self) -> usize {
        self.len.max(1)
    }

    fn rhs(&self, u: &[f64], out: &mut [f64]) {
        (self.f)(u, out)
    }

    fn max_speeds(&self, _: &[f64]) -> [f64; 2] {
        [1.0, 0.0]
    }

    fn length_scales(&self) -> [f64; 2] {
        [1.0, f64::INFINITY]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DtLaw {
    /// `CFL / (max|H1| / dx + max|H2| / dy)`.
    #[default]
    Standard,
    /// `CFL * dx^(4/3)`.
    P43,
}

impl FromStr for DtLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(DtLaw::Standard),
            "p43" | "p3_scaled" => Ok(DtLaw::P43),
            _ => Err(Error::Config(format!("unknown dt law `{s}` (standard, p43, p3_scaled)"))),
        }
    }
}

impl fmt::Display for DtLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DtLaw::Standard => "standard",
            DtLaw::P43 => "p43",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LimiterKind {
    #[default]
    None,
    /// TVD minmod on the linear mode (1D).
    Minmod,
    /// Hierarchical moment limiter (1D and Cartesian 2D).
    Moment,
}

impl FromStr for LimiterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(LimiterKind::None),
            "minmod" => Ok(LimiterKind::Minmod),
            "moment" => Ok(LimiterKind::Moment),
            _ => Err(Error::Config(format!(
                "unknown limiter `{s}` (none, minmod, moment)"
            ))),
        }
    }
}

impl fmt::Display for LimiterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimiterKind::None => "none",
            LimiterKind::Minmod => "minmod",
            LimiterKind::Moment => "moment",
        })
    }
}

/// A post-stage filter on the coefficient vector.
pub trait Limiter: Sync {
    /// Limits `u` in place and returns the number of elements modified.
    fn apply(&self, u: &mut [f64]) -> usize;
}

/// `minmod(a_1, ..., a_n)`: the smallest magnitude if all signs agree, else 0.
pub fn minmod(args: &[f64]) -> f64 {
    let Some(&first) = args.first() else {
        return 0.0;
    };
    let s = first.signum();
    if first == 0.0 || args.iter().any(|&a| a.signum() != s || a == 0.0) {
        return 0.0;
    }
    s * args.iter().fold(f64::INFINITY, |m, a| m.min(a.abs()))
}

fn changed(old: f64, new: f64) -> bool {
    (new - old).abs() > 1e-12 * old.abs().max(1.0)
}

/// Neighbor lists `[left, right]` of a 1D mesh.
fn line_neighbors(space: &Space) -> Option<Vec<[Option<usize>; 4]>> {
    let Geometry::Line(m) = space.geometry() else {
        return None;
    };
    let n = m.n_cells();
    let periodic = m.boundary() == crate::mesh::Boundary::Periodic;
    Some(
        (0..n)
            .map(|j| {
                let left = if j > 0 { Some(j - 1) } else { periodic.then_some(n - 1) };
                let right = if j + 1 < n { Some(j + 1) } else { periodic.then_some(0) };
                [left, right, None, None]
            })
            .collect(),
    )
}

/// Neighbor lists `[west, east, south, north]` of a Cartesian mesh.
fn cart_neighbors(space: &Space) -> Option<Vec<[Option<usize>; 4]>> {
    let Geometry::Cart(m) = space.geometry() else {
        return None;
    };
    Some(
        (0..m.n_cells())
            .map(|e| {
                let (i, j) = m.cell_ij(e);
                let at = |dir, step| m.neighbor(i, j, dir, step).map(|(a, b)| m.cell(a, b));
                [at(0, -1), at(0, 1), at(1, -1), at(1, 1)]
            })
            .collect(),
    )
}

/// Minmod limiter on the linear mode of 1D elements. Cells whose slope is
/// modified also lose their higher modes.
pub struct MinmodLimiter {
    neighbors: Vec<[Option<usize>; 4]>,
    n_dofs: usize,
}

impl MinmodLimiter {
    pub fn new(space: &Space) -> Result<Self> {
        let neighbors = line_neighbors(space).ok_or_else(|| {
            Error::Config("the minmod limiter needs a 1D mesh; use `moment` in 2D".into())
        })?;
        Ok(MinmodLimiter {
            neighbors,
            n_dofs: space.n_dofs(),
        })
    }
}

impl Limiter for MinmodLimiter {
    fn apply(&self, u: &mut [f64]) -> usize {
        let nd = self.n_dofs;
        let r = (1.5f64).sqrt();
        let mean = |u: &[f64], j: usize| u[j * nd] * std::f64::consts::FRAC_1_SQRT_2;
        let mut updates = Vec::new();
        for (j, nb) in self.neighbors.iter().enumerate() {
            let uj = mean(u, j);
            let s = 2.0 * u[j * nd + 1] * r;
            let mut args = vec![s];
            if let Some(rn) = nb[1] {
                args.push(mean(u, rn) - uj);
            }
            if let Some(ln) = nb[0] {
                args.push(uj - mean(u, ln));
            }
            let lim = minmod(&args);
            if changed(s, lim) {
                updates.push((j, lim / (2.0 * r)));
            }
        }
        for &(j, c1) in &updates {
            u[j * nd + 1] = c1;
            u[j * nd + 2..(j + 1) * nd].fill(0.0);
        }
        updates.len()
    }
}

/// Hierarchical moment limiter: Legendre moments are limited from the
/// highest total degree downwards against differences of the next-lower
/// moments of the neighbors, stopping in each cell at the first level that
/// is left unchanged.
pub struct MomentLimiter {
    neighbors: Vec<[Option<usize>; 4]>,
    n_dofs: usize,
    degree: usize,
    /// Per mode: `(a, b)` and the factor from coefficient to Legendre moment.
    modes: Vec<((usize, usize), f64)>,
    /// Mode index of `(a, b)`, if present.
    index: Vec<Vec<Option<usize>>>,
}

impl MomentLimiter {
    pub fn new(space: &Space) -> Result<Self> {
        let two_d = matches!(space.geometry(), Geometry::Cart(_));
        let neighbors = line_neighbors(space)
            .or_else(|| cart_neighbors(space))
            .ok_or_else(|| Error::Config("the moment limiter needs a 1D or Cartesian mesh".into()))?;
        let basis = space.basis();
        let k = basis.degree();
        let mut index = vec![vec![None; k + 1]; k + 1];
        let modes = (0..basis.n_dofs())
            .map(|i| {
                let (a, b) = basis.mode(i);
                index[a][b] = Some(i);
                let fa = ((2 * a + 1) as f64 / 2.0).sqrt();
                let fb = if two_d { ((2 * b + 1) as f64 / 2.0).sqrt() } else { 1.0 };
                ((a, b), fa * fb)
            })
            .collect();
        Ok(MomentLimiter {
            neighbors,
            n_dofs: basis.n_dofs(),
            degree: k,
            modes,
            index,
        })
    }
}

impl Limiter for MomentLimiter {
    fn apply(&self, u: &mut [f64]) -> usize {
        let nd = self.n_dofs;
        let n_cells = self.neighbors.len();
        let moment = |u: &[f64], e: usize, i: usize| u[e * nd + i] * self.modes[i].1;
        let alpha = |i: usize| 1.0 / (2.0 * (2 * i - 1) as f64);
        let mut active = vec![true; n_cells];
        let mut touched = vec![false; n_cells];
        for level in (1..=self.degree).rev() {
            let mut updates = Vec::new();
            for e in 0..n_cells {
                if !active[e] {
                    continue;
                }
                let nb = self.neighbors[e];
                let mut any = false;
                for b in 0..=level {
                    let a = level - b;
                    let Some(i) = self.index[a][b] else { continue };
                    let old = moment(u, e, i);
                    let mut args = vec![old];
                    let mut push_diffs = |lower: Option<usize>, lo: Option<usize>, hi: Option<usize>, w: f64| {
                        let Some(l) = lower else { return };
                        let c = moment(u, e, l);
                        if let Some(h) = hi {
                            args.push(w * (moment(u, h, l) - c));
                        }
                        if let Some(lo) = lo {
                            args.push(w * (c - moment(u, lo, l)));
                        }
                    };
                    if a >= 1 {
                        push_diffs(self.index[a - 1][b], nb[0], nb[1], alpha(a));
                    }
                    if b >= 1 {
                        push_diffs(self.index[a][b - 1], nb[2], nb[3], alpha(b));
                    }
                    let new = minmod(&args);
                    if changed(old, new) {
                        any = true;
                        updates.push((e, i, new / self.modes[i].1));
                    }
                }
                if any {
                    touched[e] = true;
                } else {
                    active[e] = false;
                }
            }
            for (e, i, c) in updates {
                u[e * nd + i] = c;
            }
        }
        touched.iter().filter(|&&t| t).count()
    }
}

/// Builds the limiter named by `kind`, or `None`.
pub fn make_limiter(kind: LimiterKind, space: &Space) -> Result<Option<Box<dyn Limiter>>> {
    Ok(match kind {
        LimiterKind::None => None,
        LimiterKind::Minmod => Some(Box::new(MinmodLimiter::new(space)?)),
        LimiterKind::Moment => Some(Box::new(MomentLimiter::new(space)?)),
    })
}

/// Step-size controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeControls {
    pub cfl: f64,
    pub final_time: f64,
    pub dt_law: DtLaw,
}

/// Step size for state `u`, before clipping to the final time.
pub fn choose_dt(op: &(impl SemiDiscrete + ?Sized), u: &[f64], cfl: f64, law: DtLaw) -> f64 {
    let [lx, ly] = op.length_scales();
    match law {
        DtLaw::Standard => {
            let [sx, sy] = op.max_speeds(u);
            let rate = (sx / lx + sy / ly).max(1e-14 / lx);
            cfl / rate
        }
        DtLaw::P43 => cfl * lx.min(ly).powf(4.0 / 3.0),
    }
}

fn check_finite(v: &[f64], n_dofs: usize, stage: usize, time: f64) -> Result<()> {
    match v.iter().position(|x| !x.is_finite()) {
        Some(i) => Err(Error::NonFinite {
            stage,
            element: i / n_dofs.max(1),
            time,
        }),
        None => Ok(()),
    }
}

/// One Shu–Osher TVD-RK3 step, limiting after every stage.
pub fn tvd_rk3_step(
    u: &mut [f64],
    dt: f64,
    op: &(impl SemiDiscrete + ?Sized),
    limiter: Option<&dyn Limiter>,
    time: f64,
) -> Result<()> {
    let n = u.len();
    let nd = op.n_dofs();
    let mut l = vec![0.0; n];
    let limit = |v: &mut [f64]| {
        if let Some(lim) = limiter {
            lim.apply(v);
        }
    };

    op.rhs(u, &mut l);
    let mut u1: Vec<f64> = u.iter().zip(&l).map(|(a, b)| a + dt * b).collect();
    limit(&mut u1);
    check_finite(&u1, nd, 1, time)?;

    op.rhs(&u1, &mut l);
    let mut u2: Vec<f64> = (0..n)
        .map(|i| 0.75 * u[i] + 0.25 * (u1[i] + dt * l[i]))
        .collect();
    limit(&mut u2);
    check_finite(&u2, nd, 2, time)?;

    op.rhs(&u2, &mut l);
    for i in 0..n {
        u[i] = u[i] / 3.0 + 2.0 / 3.0 * (u2[i] + dt * l[i]);
    }
    limit(u);
    check_finite(u, nd, 3, time)
}

/// Summary of a completed integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunStats {
    pub steps: usize,
    pub final_time: f64,
    pub min_dt: f64,
    pub max_dt: f64,
}

/// Advances `field` to `controls.final_time`, landing on it exactly.
/// The limiter is also applied once to the initial state.
pub fn integrate(
    field: &mut DgField,
    op: &(impl SemiDiscrete + ?Sized),
    controls: &TimeControls,
    limiter: Option<&dyn Limiter>,
    mut observer: impl FnMut(&DgField),
) -> Result<RunStats> {
    if !(controls.cfl > 0.0) || !(controls.final_time >= field.time) {
        return Err(Error::InvalidArgument(format!(
            "need CFL > 0 and final time >= {}, got {} and {}",
            field.time, controls.cfl, controls.final_time
        )));
    }
    if let Some(lim) = limiter {
        lim.apply(field.coefficients_mut());
    }
    check_finite(field.coefficients(), op.n_dofs(), 0, field.time)?;
    let mut stats = RunStats {
        steps: 0,
        final_time: field.time,
        min_dt: f64::INFINITY,
        max_dt: 0.0,
    };
    let t_end = controls.final_time;
    while field.time < t_end {
        let mut dt = choose_dt(op, field.coefficients(), controls.cfl, controls.dt_law);
        let last = field.time + dt >= t_end - 1e-12 * t_end.abs().max(1.0);
        if last {
            dt = t_end - field.time;
        }
        let t = field.time;
        tvd_rk3_step(field.coefficients_mut(), dt, op, limiter, t)?;
        field.time = if last { t_end } else { t + dt };
        stats.steps += 1;
        stats.min_dt = stats.min_dt.min(dt);
        stats.max_dt = stats.max_dt.max(dt);
        observer(field);
    }
    stats.final_time = field.time;
    Ok(stats)
}
