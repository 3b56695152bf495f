//! Exact solutions: characteristics, Hopf–Lax and Hopf formulas, and closed
//! forms for the linear cases.

use crate::error::{Error, Result};

/// A scalar problem `u_t + G(u_x) = 0`, `u(x, 0) = u0(x)`, solved along
/// characteristics.
#[derive(Debug, Clone, Copy)]
pub struct Characteristic1d {
    pub g: fn(f64) -> f64,
    pub dg: fn(f64) -> f64,
    pub u0: fn(f64) -> f64,
    pub du0: fn(f64) -> f64,
    /// Bound on `|G'(u0'(y))|` over all `y`.
    pub speed_bound: f64,
}

const SCAN: usize = 512;

/// Value at `(x, t)` from the foot point `y` of the unique characteristic
/// `y + t G'(u0'(y)) = x`. Fails once characteristics cross.
pub fn characteristics(p: &Characteristic1d, x: f64, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok((p.u0)(x));
    }
    let f = |y: f64| y + t * (p.dg)((p.du0)(y)) - x;
    let reach = t * p.speed_bound + 1e-9;
    let (lo, hi) = (x - reach, x + reach);
    let step = (hi - lo) / SCAN as f64;
    let mut roots = Vec::new();
    let mut prev = f(lo);
    for i in 1..=SCAN {
        let b = lo + i as f64 * step;
        let fb = f(b);
        if fb == 0.0 {
            roots.push((b, b));
        } else if prev != 0.0 && prev.signum() != fb.signum() {
            roots.push((b - step, b));
        }
        prev = fb;
    }
    let (mut a, mut b) = match roots.as_slice() {
        [one] => *one,
        [] => return Err(Error::Oracle(format!("no characteristic reaches x = {x} at t = {t}"))),
        _ => {
            return Err(Error::Oracle(format!(
                "characteristics cross at x = {x}, t = {t}: the solution is no longer smooth"
            )))
        }
    };
    let mut fa = f(a);
    while b - a > 1e-15 * a.abs().max(1.0) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            a = m;
            b = m;
            break;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let y = 0.5 * (a + b);
    let q = (p.du0)(y);
    Ok((p.u0)(y) + t * (q * (p.dg)(q) - (p.g)(q)))
}

/// Golden-section minimum of `f` on `[a, b]`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > 1e-12 * a.abs().max(1.0) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd).min(f(0.5 * (a + b)))
}

/// Minimum of `f` over `[lo, hi]`: dense sampling at `samples` points, then
/// golden-section refinement around the best sample.
fn sampled_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> f64 {
    let n = samples.max(8);
    let dy = (hi - lo) / n as f64;
    let (mut best, mut at) = (f64::INFINITY, 0);
    for i in 0..=n {
        let v = f(lo + i as f64 * dy);
        if v < best {
            best = v;
            at = i;
        }
    }
    let y = lo + at as f64 * dy;
    let a = (y - dy).max(lo);
    let b = (y + dy).min(hi);
    best.min(golden_min(&f, a, b))
}

/// Hopf–Lax value for `H(p) = a (p + b)^2 / 2` with `a > 0`:
/// `min_y phi0(y) + t H*((x - y) / t)`, `H*(v) = v^2 / (2a) - b v`.
/// `slope_bound` bounds `|phi0'|`; `period` sets the sampling density.
pub fn hopf_lax_quadratic(
    a: f64,
    b: f64,
    phi0: impl Fn(f64) -> f64,
    slope_bound: f64,
    period: f64,
    x: f64,
    t: f64,
) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Oracle(format!(
            "Hopf–Lax needs a convex Hamiltonian, got curvature {a}"
        )));
    }
    if t == 0.0 {
        return Ok(phi0(x));
    }
    let reach = t * a * (slope_bound + b.abs()) + 1e-9;
    let samples = (4096.0 * 2.0 * reach / period).ceil() as usize;
    let f = |y: f64| {
        let v = (x - y) / t;
        phi0(y) + t * (v * v / (2.0 * a) - b * v)
    };
    Ok(sampled_min(f, x - reach, x + reach, samples.max(64)))
}

/// `min_{|y - x| <= t} phi0(y)`, the solution for `H = |p|`.
pub fn constrained_min(phi0: impl Fn(f64) -> f64, period: f64, x: f64, t: f64) -> f64 {
    if t == 0.0 {
        return phi0(x);
    }
    let samples = (4096.0 * 2.0 * t / period).ceil() as usize;
    sampled_min(phi0, x - t, x + t, samples.max(64))
}

/// Closed form of [`constrained_min`] for `phi0 = sin`.
pub fn constrained_min_sin(x: f64, t: f64) -> f64 {
    use std::f64::consts::{FRAC_PI_2, TAU};
    let (lo, hi) = (x - t, x + t);
    // First trough 3 pi / 2 + 2 pi m at or above lo.
    let m = ((lo + FRAC_PI_2) / TAU).ceil();
    let trough = -FRAC_PI_2 + TAU * m;
    if trough <= hi {
        -1.0
    } else {
        lo.sin().min(hi.sin())
    }
}

/// Hopf formula for concave data `-2|x|` and even `H`:
/// `min_{|p| <= 2} (x p - t H(p))`, here for `H = (p^2 - 1)(p^2 - 4) / 4`.
pub fn quartic_concave_hopf(x: f64, t: f64) -> f64 {
    let h = |p: f64| 0.25 * (p * p - 1.0) * (p * p - 4.0);
    let f = |p: f64| x * p - t * h(p);
    let df = |p: f64| x - t * (p * p * p - 2.5 * p);
    let mut best = f(-2.0).min(f(2.0));
    if t == 0.0 {
        return best;
    }
    let n = 400;
    let step = 4.0 / n as f64;
    for i in 0..n {
        let (mut a, mut b) = (-2.0 + i as f64 * step, -2.0 + (i + 1) as f64 * step);
        let (fa, fb) = (df(a), df(b));
        if fa == 0.0 {
            best = best.min(f(a));
        }
        if fa.signum() == fb.signum() || fb == 0.0 {
            continue;
        }
        let sa = fa.signum();
        for _ in 0..100 {
            let m = 0.5 * (a + b);
            if df(m).signum() == sa {
                a = m;
            } else {
                b = m;
            }
        }
        best = best.min(f(0.5 * (a + b)));
    }
    best
}

/// `phi_t + sin(x) phi_x = 0` with `phi0 = sin`: the foot point satisfies
/// `tan(y/2) = tan(x/2) e^{-t}`, so `sin y = 2 s c / (s^2 + c^2)` with
/// `s = sin(x/2) e^{-t}`, `c = cos(x/2)`.
pub fn linsmth_exact(x: f64, t: f64) -> f64 {
    let s = (0.5 * x).sin() * (-t).exp();
    let c = (0.5 * x).cos();
    2.0 * s * c / (s * s + c * c)
}

/// Foot point of the rigid rotation `phi_t - y phi_x + x phi_y = 0`.
pub fn rotate_back(x: [f64; 2], t: f64) -> [f64; 2] {
    let (s, c) = t.sin_cos();
    [x[0] * c + x[1] * s, -x[0] * s + x[1] * c]
}

/// `phi_t + phi_x phi_y = 0`, `phi0 = sin x + cos y`, before characteristics
/// cross: `x0 = x + t sin y0`, `y0 = y - t cos x0`,
/// `phi = phi0(x0, y0) + t p q` with `p = cos x0`, `q = -sin y0`.
pub fn crossderiv_exact(x: [f64; 2], t: f64) -> Result<f64> {
    let (mut x0, mut y0) = (x[0], x[1]);
    for _ in 0..50 {
        // Newton on F = (x0 - x - t sin y0, y0 - y + t cos x0).
        let f0 = x0 - x[0] - t * y0.sin();
        let f1 = y0 - x[1] + t * x0.cos();
        if f0.abs().max(f1.abs()) < 1e-15 {
            break;
        }
        let (a, b) = (1.0, -t * y0.cos());
        let (c, d) = (-t * x0.sin(), 1.0);
        let det = a * d - b * c;
        if det.abs() < 1e-12 {
            return Err(Error::Oracle(format!("characteristics cross at {x:?}, t = {t}")));
        }
        x0 -= (d * f0 - b * f1) / det;
        y0 -= (-c * f0 + a * f1) / det;
    }
    let r = (x0 - x[0] - t * y0.sin()).abs() + (y0 - x[1] + t * x0.cos()).abs();
    if !(r < 1e-12) {
        return Err(Error::Oracle(format!("no characteristic foot found for {x:?}, t = {t}")));
    }
    let (p, q) = (x0.cos(), -y0.sin());
    Ok(x0.sin() + y0.cos() + t * p * q)
}
