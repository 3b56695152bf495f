//! Independent reference implementations and property checks shared by the
//! integration tests and the acceptance binary.

#![allow(dead_code)]

use std::sync::Arc;

use hjdg_core::analysis::{characteristics, hopf_lax_quadratic, Characteristic1d};
use hjdg_core::basis::{gauss_rule, rule_for, ElementKind, ReferenceBasis};
use hjdg_core::field::DgField;
use hjdg_core::hamiltonian::{HamiltonianModel, Loc};
use hjdg_core::mesh::{Boundary, CartMesh2d, Mesh1d};
use hjdg_core::riemann::roe_from_values;
use hjdg_core::solver1d::{assemble_rhs_1d, Solver1d};
use hjdg_core::solver2d::Solver2d;
use hjdg_core::space::{Geometry, Space};
use hjdg_core::timeloop::{tvd_rk3_step, FnOperator, Limiter, MinmodLimiter, MomentLimiter, SemiDiscrete};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TAU: f64 = std::f64::consts::TAU;

/// Legendre `P_0..P_n` and derivatives by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let mut p = vec![1.0, x];
    let mut d = vec![0.0, 1.0];
    for m in 1..n {
        let m = m as f64;
        let next = ((2.0 * m + 1.0) * x * p[m as usize] - m * p[m as usize - 1]) / (m + 1.0);
        let dnext = d[m as usize - 1] + (2.0 * m + 1.0) * p[m as usize];
        p.push(next);
        d.push(dnext);
    }
    p.truncate(n + 1);
    d.truncate(n + 1);
    (p, d)
}

/// Gauss–Legendre nodes and weights by Newton iteration from Chebyshev guesses.
fn gauss(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = -(std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                let dx = p[n] / d[n];
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            (x, 2.0 / ((1.0 - x * x) * d[n] * d[n]))
        })
        .collect()
}

/// Textbook upwind DG right-hand side for `u_t + a u_x = 0` on a uniform
/// periodic grid in integrated-by-parts form, with orthonormal Legendre
/// coefficients `sqrt((2i+1)/2) P_i` per cell.
pub fn upwind_dg_advection(a: f64, coeffs: &[f64], n: usize, k: usize, dx: f64) -> Vec<f64> {
    let nd = k + 1;
    let norm: Vec<f64> = (0..nd).map(|i| ((2 * i + 1) as f64 / 2.0).sqrt()).collect();
    let phi = |i: usize, x: f64| legendre(k, x).0[i] * norm[i];
    let dphi = |i: usize, x: f64| legendre(k, x).1[i] * norm[i];
    let value = |j: usize, x: f64| (0..nd).map(|i| coeffs[j * nd + i] * phi(i, x)).sum::<f64>();
    let rule = gauss(k + 2);
    let mut out = vec![0.0; n * nd];
    for j in 0..n {
        // Upwind flux at the right end of cell j and at its left end.
        let (right, left) = if a >= 0.0 {
            (a * value(j, 1.0), a * value((j + n - 1) % n, 1.0))
        } else {
            (a * value((j + 1) % n, -1.0), a * value(j, -1.0))
        };
        for i in 0..nd {
            let vol: f64 = rule.iter().map(|&(x, w)| w * a * value(j, x) * dphi(i, x)).sum();
            out[j * nd + i] = (vol - right * phi(i, 1.0) + left * phi(i, -1.0)) * 2.0 / dx;
        }
    }
    out
}

pub fn line_space(a: f64, b: f64, n: usize, k: usize, boundary: Boundary) -> Arc<Space> {
    Arc::new(Space::new(Geometry::Line(Mesh1d::uniform(a, b, n, boundary).unwrap()), k).unwrap())
}

pub fn cart_space(dom: [f64; 4], n: usize, k: usize, boundary: Boundary) -> Arc<Space> {
    let m = CartMesh2d::uniform((dom[0], dom[1]), (dom[2], dom[3]), n, n, [boundary; 2]).unwrap();
    Arc::new(Space::new(Geometry::Cart(m), k).unwrap())
}

pub fn random_coeffs(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Result of one property check: `Err` carries the failure detail.
pub type Check = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Several RK3 steps of a linear case give bitwise identical coefficients
/// for every penalty constant.
pub fn penalty_bit_equality() -> Check {
    let mut runs = Vec::new();
    for &c in &[0.0, 0.25, 1.0] {
        let s1 = line_space(0.0, TAU, 40, 2, Boundary::Periodic);
        let op1 = Solver1d::new(s1.clone(), HamiltonianModel::Linsmth, c).unwrap();
        let mut u1 = DgField::project(s1, |x| x[0].sin()).coefficients().to_vec();
        let s2 = cart_space([-1.0, 1.0, -1.0, 1.0], 12, 2, Boundary::Periodic);
        let op2 = Solver2d::new(s2.clone(), HamiltonianModel::Rotation, c).unwrap();
        let mut u2 = DgField::project(s2, |x| (-20.0 * ((x[0] - 0.4).powi(2) + (x[1] - 0.4).powi(2))).exp())
            .coefficients()
            .to_vec();
        for step in 0..10 {
            tvd_rk3_step(&mut u1, 0.01, &op1, None, step as f64 * 0.01).unwrap();
            tvd_rk3_step(&mut u2, 0.01, &op2, None, step as f64 * 0.01).unwrap();
        }
        runs.push((u1, u2));
    }
    let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    let same = runs
        .windows(2)
        .all(|w| bits(&w[0].0) == bits(&w[1].0) && bits(&w[0].1) == bits(&w[1].1));
    ensure(same, "linsmth and rotation, C in {0, 0.25, 1}, 10 steps".into())
}

/// One RK3 step of `u' = lambda u` multiplies by `1 + z + z^2/2 + z^3/6`.
pub fn rk3_linear_exactness() -> Check {
    let mut worst: f64 = 0.0;
    for &z in &[-2.5, -1.0, -0.1, 0.3, 1.0] {
        let op = FnOperator {
            len: 1,
            f: move |u: &[f64], out: &mut [f64]| out[0] = z * u[0],
        };
        let mut u = [1.0];
        tvd_rk3_step(&mut u, 1.0, &op, None, 0.0).unwrap();
        let g = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
        worst = worst.max((u[0] - g).abs() / g.abs().max(1.0));
    }
    ensure(worst <= 1e-14, format!("max relative deviation {worst:.1e}"))
}

/// The solver's operator for `H = a p` equals the upwind DG operator.
pub fn upwind_equality() -> Check {
    let mut worst: f64 = 0.0;
    for (k, a, seed) in [(1, 1.3, 1), (2, -0.7, 2), (3, 2.0, 3)] {
        let n = 11;
        let space = line_space(0.0, 2.0, n, k, Boundary::Periodic);
        let coeffs = random_coeffs(n * (k + 1), seed);
        let field = DgField::from_coefficients(space, coeffs.clone()).unwrap();
        let ours = assemble_rhs_1d(&field, HamiltonianModel::advection_1d(a), 0.25).unwrap();
        let oracle = upwind_dg_advection(a, &coeffs, n, k, 2.0 / n as f64);
        for (x, y) in ours.iter().zip(&oracle) {
            worst = worst.max((x - y).abs());
        }
    }
    ensure(worst <= 1e-12, format!("max deviation {worst:.1e}"))
}

/// Rules integrate monomials to their degree; bases are orthonormal.
pub fn quadrature_and_orthonormality() -> Check {
    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        let r = gauss_rule(n);
        for d in 0..2 * n {
            let exact = if d % 2 == 0 { 2.0 / (d + 1) as f64 } else { 0.0 };
            worst = worst.max((r.integrate(|x| x[0].powi(d as i32)) - exact).abs());
        }
    }
    for degree in 1..=10 {
        let r = rule_for(ElementKind::Triangle, degree).map_err(|e| e.to_string())?;
        for a in 0..=degree {
            for b in 0..=degree - a {
                let exact = factorial(a) * factorial(b) / factorial(a + b + 2);
                let got = r.integrate(|x| x[0].powi(a as i32) * x[1].powi(b as i32));
                worst = worst.max((got - exact).abs() / exact);
            }
        }
    }
    for kind in [ElementKind::Interval, ElementKind::Square, ElementKind::Triangle] {
        for k in 1..=4 {
            let basis = ReferenceBasis::new(kind, k).map_err(|e| e.to_string())?;
            let rule = rule_for(kind, 2 * k + 2).map_err(|e| e.to_string())?;
            let table = basis.tabulate(&rule);
            let nd = basis.n_dofs();
            for i in 0..nd {
                for j in 0..nd {
                    let m: f64 = (0..rule.len())
                        .map(|q| rule.weights[q] * table.values_at(q)[i] * table.values_at(q)[j])
                        .sum();
                    worst = worst.max((m - if i == j { 1.0 } else { 0.0 }).abs());
                }
            }
        }
    }
    ensure(worst <= 1e-12, format!("max deviation {worst:.1e}"))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

/// `H~ -> H'(p)` as the two traces merge.
pub fn roe_consistency() -> Check {
    let mut worst: f64 = 0.0;
    let at = Loc::at([0.3, 0.0]);
    for model in [HamiltonianModel::Burgers1d, HamiltonianModel::Cos1d, HamiltonianModel::Quartic1d] {
        for &p in &[-1.7, -0.4, 0.2, 1.1] {
            let eps = 1e-7;
            let (pm, pp) = (p - eps, p + eps);
            let h = [model.h([pm, 0.0], &at), model.h([pp, 0.0], &at)];
            let h1 = [model.grad([pm, 0.0], &at)[0], model.grad([pp, 0.0], &at)[0]];
            let roe = roe_from_values(pm, pp, h, h1);
            worst = worst.max((roe.roe_speed - model.grad([p, 0.0], &at)[0]).abs());
            if roe.visc != 0.0 {
                return Err(format!("penalty active on merging traces of {model}"));
            }
        }
    }
    ensure(worst <= 1e-6, format!("max |H~ - H'| {worst:.1e}"))
}

/// Changing cell `m` changes the right-hand side only in `m - 1..=m + 1`.
pub fn locality() -> Check {
    let n = 12;
    let k = 2;
    let nd = k + 1;
    let space = line_space(0.0, TAU, n, k, Boundary::Periodic);
    let op = Solver1d::new(space, HamiltonianModel::Burgers1d, 0.25).unwrap();
    let u = random_coeffs(n * nd, 11);
    let mut base = vec![0.0; u.len()];
    op.rhs(&u, &mut base);
    for m in [0, 5, n - 1] {
        let mut v = u.clone();
        for i in 0..nd {
            v[m * nd + i] += 0.3;
        }
        let mut out = vec![0.0; u.len()];
        op.rhs(&v, &mut out);
        for j in 0..n {
            let near = j == m || j == (m + 1) % n || j == (m + n - 1) % n;
            let changed = (0..nd).any(|i| out[j * nd + i] != base[j * nd + i]);
            if changed && !near {
                return Err(format!("perturbing cell {m} changed cell {j}"));
            }
        }
    }
    Ok("cells outside m-1..=m+1 untouched".into())
}

/// Limiters keep every element mean.
pub fn limiter_mean_preservation() -> Check {
    let mut worst: f64 = 0.0;
    let line = line_space(-1.0, 1.0, 17, 2, Boundary::Outflow);
    let cart = cart_space([-1.0, 1.0, -1.0, 1.0], 7, 2, Boundary::Periodic);
    let cases: [(Arc<Space>, Box<dyn Limiter>); 3] = [
        (line.clone(), Box::new(MinmodLimiter::new(&line).unwrap())),
        (line.clone(), Box::new(MomentLimiter::new(&line).unwrap())),
        (cart.clone(), Box::new(MomentLimiter::new(&cart).unwrap())),
    ];
    for (seed, (space, lim)) in cases.iter().enumerate() {
        let u = random_coeffs(space.n_elements() * space.n_dofs(), 100 + seed as u64);
        let before = DgField::from_coefficients(space.clone(), u.clone()).unwrap().means();
        let mut v = u;
        lim.apply(&mut v);
        let after = DgField::from_coefficients(space.clone(), v).unwrap().means();
        for (a, b) in before.iter().zip(&after) {
            worst = worst.max((a - b).abs());
        }
    }
    ensure(worst <= 1e-14, format!("max mean change {worst:.1e}"))
}

pub const BURGERS_SIN: Characteristic1d = Characteristic1d {
    g: |p| 0.5 * p * p,
    dg: |p| p,
    u0: f64::sin,
    du0: f64::cos,
    speed_bound: 1.0,
};

/// Characteristics and Hopf–Lax agree on smooth Burgers data.
pub fn oracle_cross_check() -> Check {
    let mut worst: f64 = 0.0;
    for i in 0..64 {
        let x = i as f64 * TAU / 64.0 + 0.01;
        for &t in &[0.2, 0.5, 0.9] {
            let a = characteristics(&BURGERS_SIN, x, t).map_err(|e| e.to_string())?;
            let b = hopf_lax_quadratic(1.0, 0.0, f64::sin, 1.0, TAU, x, t).map_err(|e| e.to_string())?;
            worst = worst.max((a - b).abs());
        }
    }
    ensure(worst <= 1e-9, format!("max deviation {worst:.1e}"))
}

pub fn property_suite() -> Vec<(&'static str, Check)> {
    vec![
        ("penalty-off bit equality", penalty_bit_equality()),
        ("RK3 linear exactness", rk3_linear_exactness()),
        ("upwind DG equality", upwind_equality()),
        ("quadrature and orthonormality", quadrature_and_orthonormality()),
        ("Roe consistency limit", roe_consistency()),
        ("compact stencil", locality()),
        ("limiter mean preservation", limiter_mean_preservation()),
        ("oracle cross-check", oracle_cross_check()),
    ]
}
