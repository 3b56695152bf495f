//! Roe speed, entropy detector and penalty level at an interface point.

use crate::hamiltonian::{DirectionalHamiltonian, Loc};

/// Interface quantities derived from the two normal-derivative traces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoeData {
    /// Divided-difference speed `H~`.
    pub roe_speed: f64,
    /// Entropy-violation detector `delta >= 0`.
    pub delta: f64,
    /// `S = max(delta, |H~|)`.
    pub s_level: f64,
    /// `S - |H~| >= 0`, the penalty weight.
    pub visc: f64,
}

/// Two traces are considered equal below this separation.
#[inline]
pub fn equal_trace_threshold(p_minus: f64, p_plus: f64) -> f64 {
    1e-12 * 1f64.max(p_minus.abs()).max(p_plus.abs())
}

/// Builds [`RoeData`] from one-sided values `H^-`, `H^+` and derivatives
/// `H1^-`, `H1^+` at normal traces `p^-`, `p^+`.
#[inline]
pub fn roe_from_values(p_minus: f64, p_plus: f64, h: [f64; 2], h1: [f64; 2]) -> RoeData {
    let dp = p_plus - p_minus;
    let roe_speed = if dp.abs() > equal_trace_threshold(p_minus, p_plus) {
        (h[1] - h[0]) / dp
    } else {
        0.5 * (h1[0] + h1[1])
    };
    let delta = 0.0f64.max(roe_speed - h1[0]).max(h1[1] - roe_speed);
    let s_level = delta.max(roe_speed.abs());
    RoeData {
        roe_speed,
        delta,
        s_level,
        visc: s_level - roe_speed.abs(),
    }
}

/// Roe data for a directional Hamiltonian with a shared tangential average.
#[inline]
pub fn roe_data(
    hd: &DirectionalHamiltonian<'_>,
    p_minus: f64,
    p_plus: f64,
    tangential_avg: f64,
    x_minus: &Loc,
    x_plus: &Loc,
) -> RoeData {
    let h = [
        hd.h(p_minus, tangential_avg, x_minus),
        hd.h(p_plus, tangential_avg, x_plus),
    ];
    let h1 = [
        hd.dh(p_minus, tangential_avg, x_minus),
        hd.dh(p_plus, tangential_avg, x_plus),
    ];
    roe_from_values(p_minus, p_plus, h, h1)
}

/// `(min(H~, 0), max(H~, 0))`.
#[inline]
pub fn upwind_weights(roe: &RoeData) -> (f64, f64) {
    (roe.roe_speed.min(0.0), roe.roe_speed.max(0.0))
}

/// `C * length_scale * (S - |H~|)`.
#[inline]
pub fn penalty_coeff(roe: &RoeData, c: f64, length_scale: f64) -> f64 {
    c * length_scale * roe.visc
}
