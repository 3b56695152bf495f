//! Browser bindings: a 1D run with an adjustable penalty constant, the
//! interface quantities for a pair of traces, and a 2D heat map.

use hjdg_core::cases::Case;
use hjdg_core::hamiltonian::{HamiltonianModel, Loc};
use hjdg_core::riemann::{penalty_coeff, roe_from_values, upwind_weights};
use hjdg_core::run::{run, RunSetup};
use hjdg_core::{Error, Result};
use wasm_bindgen::prelude::*;

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

fn case_of_dim(name: &str, dim: usize) -> Result<Case> {
    let case: Case = name.parse()?;
    if case.dim() != dim {
        return Err(Error::Config(format!("`{case}` is not a {dim}D case")));
    }
    Ok(case)
}

/// Numerical and exact values on a uniform sample grid, with error norms.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Profile {
    x: Vec<f64>,
    phi: Vec<f64>,
    exact: Vec<f64>,
    /// NaN when the case has no exact solution at this time.
    pub l1: f64,
    pub linf: f64,
    pub steps: usize,
    pub time: f64,
}

#[wasm_bindgen]
impl Profile {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn phi(&self) -> Vec<f64> {
        self.phi.clone()
    }

    /// NaN where no exact value is available.
    #[wasm_bindgen(getter)]
    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }
}

pub fn profile(case: &str, n: usize, k: usize, c: f64, t: f64, samples: usize) -> Result<Profile> {
    let case = case_of_dim(case, 1)?;
    let mut setup = RunSetup::defaults_with_degree(case, n, k);
    setup.params.penalty = c;
    setup.final_time = t;
    setup.params.validate()?;
    let out = run(&setup)?;
    let [a, b, ..] = case.domain();
    let x: Vec<f64> = (0..samples).map(|i| a + (b - a) * (i as f64 + 0.5) / samples as f64).collect();
    let phi = x.iter().map(|&x| out.field.sample([x, 0.0]).unwrap_or(f64::NAN)).collect();
    let exact = x
        .iter()
        .map(|&x| if case.has_exact() { case.exact([x, 0.0], t).unwrap_or(f64::NAN) } else { f64::NAN })
        .collect();
    let (l1, linf) = out.norms.map_or((f64::NAN, f64::NAN), |n| (n.l1, n.linf));
    Ok(Profile {
        x,
        phi,
        exact,
        l1,
        linf,
        steps: out.stats.steps,
        time: out.stats.final_time,
    })
}

/// Runs a 1D case to time `t` with penalty constant `c`.
#[wasm_bindgen(js_name = simulate1d)]
pub fn simulate_1d(case: &str, n: usize, k: usize, c: f64, t: f64) -> std::result::Result<Profile, JsError> {
    profile(case, n, k, c, t, 400).map_err(js)
}

/// Interface quantities for one pair of traces.
#[wasm_bindgen]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceReport {
    pub h_minus: f64,
    pub h_plus: f64,
    pub roe_speed: f64,
    pub delta: f64,
    pub s_level: f64,
    pub visc: f64,
    pub upwind_minus: f64,
    pub upwind_plus: f64,
    pub penalty: f64,
}

pub fn interface(model: &str, p_minus: f64, p_plus: f64, x: f64, c: f64, length: f64) -> Result<InterfaceReport> {
    let model: HamiltonianModel = model.parse()?;
    if model.dim() != 1 {
        return Err(Error::Config(format!("`{model}` is not a 1D Hamiltonian")));
    }
    let at = Loc::at([x, 0.0]);
    let h = [model.h([p_minus, 0.0], &at), model.h([p_plus, 0.0], &at)];
    let h1 = [model.grad([p_minus, 0.0], &at)[0], model.grad([p_plus, 0.0], &at)[0]];
    let roe = roe_from_values(p_minus, p_plus, h, h1);
    let (upwind_minus, upwind_plus) = upwind_weights(&roe);
    Ok(InterfaceReport {
        h_minus: h[0],
        h_plus: h[1],
        roe_speed: roe.roe_speed,
        delta: roe.delta,
        s_level: roe.s_level,
        visc: roe.visc,
        upwind_minus,
        upwind_plus,
        penalty: penalty_coeff(&roe, c, length),
    })
}

/// Roe speed, entropy detector and penalty for traces `p_minus`, `p_plus`
/// of a 1D Hamiltonian at `x`.
#[wasm_bindgen(js_name = interfaceQuantities)]
pub fn interface_quantities(
    model: &str,
    p_minus: f64,
    p_plus: f64,
    x: f64,
    c: f64,
    length: f64,
) -> std::result::Result<InterfaceReport, JsError> {
    interface(model, p_minus, p_plus, x, c, length).map_err(js)
}

/// Row-major `res` by `res` samples over the case domain, `y` increasing
/// with the row index. Points outside the mesh are NaN.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Heatmap {
    values: Vec<f64>,
    pub res: usize,
    pub min: f64,
    pub max: f64,
    pub l1: f64,
    pub steps: usize,
}

#[wasm_bindgen]
impl Heatmap {
    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }
}

pub fn heatmap(case: &str, n: usize, k: usize, t: f64, res: usize) -> Result<Heatmap> {
    let case = case_of_dim(case, 2)?;
    let mut setup = RunSetup::defaults_with_degree(case, n, k);
    setup.final_time = t;
    let out = run(&setup)?;
    let [a, b, c, d] = case.domain();
    let mut values = Vec::with_capacity(res * res);
    for j in 0..res {
        let y = c + (d - c) * (j as f64 + 0.5) / res as f64;
        for i in 0..res {
            let x = a + (b - a) * (i as f64 + 0.5) / res as f64;
            values.push(out.field.sample([x, y]).unwrap_or(f64::NAN));
        }
    }
    let finite = values.iter().filter(|v| v.is_finite());
    let min = finite.clone().fold(f64::INFINITY, |m, &v| m.min(v));
    let max = finite.fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    Ok(Heatmap {
        values,
        res,
        min,
        max,
        l1: out.norms.map_or(f64::NAN, |n| n.l1),
        steps: out.stats.steps,
    })
}

/// Runs a 2D case to time `t` and samples it on a `res` by `res` grid.
#[wasm_bindgen(js_name = heatmap2d)]
pub fn heatmap_2d(case: &str, n: usize, k: usize, t: f64, res: usize) -> std::result::Result<Heatmap, JsError> {
    heatmap(case, n, k, t, res).map_err(js)
}
