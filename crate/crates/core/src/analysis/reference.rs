//! First-order monotone Lax–Friedrichs reference on a fine uniform grid.

use crate::error::{Error, Result};
use crate::hamiltonian::{HamiltonianModel, Loc};
use crate::mesh::Boundary;

/// Nodal values on a uniform grid, linearly interpolated.
#[derive(Debug, Clone)]
pub struct LfReference {
    a: f64,
    dx: f64,
    values: Vec<f64>,
    periodic: bool,
    pub steps: usize,
}

impl LfReference {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let s = (x - self.a) / self.dx;
        if self.periodic {
            let s = s.rem_euclid(n as f64);
            let i = (s.floor() as usize).min(n - 1);
            let w = s - i as f64;
            (1.0 - w) * self.values[i] + w * self.values[(i + 1) % n]
        } else {
            let s = s.clamp(0.0, (n - 1) as f64);
            let i = (s.floor() as usize).min(n - 2);
            let w = s - i as f64;
            (1.0 - w) * self.values[i] + w * self.values[i + 1]
        }
    }
}

/// Solves a 1D problem with `n` cells to time `t` by the Lax–Friedrichs
/// Hamiltonian `H((p^- + p^+)/2) - alpha (p^+ - p^-) / 2` and forward Euler
/// at CFL 0.4. Outflow ends extrapolate linearly.
pub fn reference_lf(
    model: HamiltonianModel,
    phi0: impl Fn(f64) -> f64,
    domain: (f64, f64),
    boundary: Boundary,
    n: usize,
    t: f64,
) -> Result<LfReference> {
    if model.dim() != 1 {
        return Err(Error::InvalidArgument(format!("`{model}` is not one-dimensional")));
    }
    if n < 4 {
        return Err(Error::InvalidArgument("reference grid needs at least 4 cells".into()));
    }
    let (a, b) = domain;
    let dx = (b - a) / n as f64;
    let periodic = boundary == Boundary::Periodic;
    let m = if periodic { n } else { n + 1 };
    let xs: Vec<f64> = (0..m).map(|i| a + i as f64 * dx).collect();
    let mut u: Vec<f64> = xs.iter().map(|&x| phi0(x)).collect();

    let slopes = |u: &[f64]| -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..m - 1 {
            let p = (u[i + 1] - u[i]) / dx;
            lo = lo.min(p);
            hi = hi.max(p);
        }
        if periodic {
            let p = (u[0] - u[m - 1]) / dx;
            lo = lo.min(p);
            hi = hi.max(p);
        }
        (lo, hi)
    };
    let (lo, hi) = slopes(&u);
    let mut alpha: f64 = 0.0;
    for i in 0..=256 {
        let p = lo + (hi - lo) * i as f64 / 256.0;
        for &x in xs.iter().step_by((m / 64).max(1)) {
            alpha = alpha.max(model.grad([p, 0.0], &Loc::at([x, 0.0]))[0].abs());
        }
    }
    let alpha = alpha.max(1e-12);
    let dt_max = 0.4 * dx / alpha;

    let mut time = 0.0;
    let mut steps = 0;
    let mut next = vec![0.0; m];
    while time < t {
        let dt = dt_max.min(t - time);
        for i in 0..m {
            let (ul, ur) = if periodic {
                (u[(i + m - 1) % m], u[(i + 1) % m])
            } else if i == 0 {
                (2.0 * u[0] - u[1], u[1])
            } else if i == m - 1 {
                (u[m - 2], 2.0 * u[m - 1] - u[m - 2])
            } else {
                (u[i - 1], u[i + 1])
            };
            let pm = (u[i] - ul) / dx;
            let pp = (ur - u[i]) / dx;
            let h = model.h([0.5 * (pm + pp), 0.0], &Loc::at([xs[i], 0.0]));
            next[i] = u[i] - dt * (h - 0.5 * alpha * (pp - pm));
        }
        std::mem::swap(&mut u, &mut next);
        time += dt;
        steps += 1;
        if t - time < 1e-14 * t.max(1.0) {
            break;
        }
    }
    Ok(LfReference {
        a,
        dx,
        values: u,
        periodic,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::oracle::linsmth_exact;
    use std::f64::consts::TAU;

    #[test]
    fn linsmth_first_order() {
        let err = |n| {
            let r = reference_lf(HamiltonianModel::Linsmth, f64::sin, (0.0, TAU), Boundary::Periodic, n, 1.0).unwrap();
            (0..100)
                .map(|i| {
                    let x = i as f64 * TAU / 100.0;
                    (r.eval(x) - linsmth_exact(x, 1.0)).abs()
                })
                .fold(0.0, f64::max)
        };
        let (a, b) = (err(256), err(512));
        assert!(a < 0.05, "{a}");
        assert!((a / b).log2() > 0.8, "{}", (a / b).log2());
    }

    #[test]
    fn interpolation() {
        let r = LfReference {
            a: 0.0,
            dx: 1.0,
            values: vec![0.0, 1.0, 4.0],
            periodic: false,
            steps: 0,
        };
        assert_eq!(r.eval(1.5), 2.5);
        assert_eq!(r.eval(9.0), 4.0);
    }
}
