mod common;

use hjdg_core::analysis::{hopf_lax_quadratic, quartic_concave_hopf, reference_lf};
use hjdg_core::cases::Case;
use hjdg_core::hamiltonian::HamiltonianModel;
use hjdg_core::mesh::Boundary;

#[test]
fn characteristics_agree_with_hopf_lax() {
    common::oracle_cross_check().unwrap();
}

#[test]
fn lax_friedrichs_converges_to_hopf_lax_after_the_kink() {
    let t = 1.5;
    let r = reference_lf(HamiltonianModel::Burgers1d, f64::sin, (0.0, common::TAU), Boundary::Periodic, 16384, t).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..500 {
        let x = i as f64 * common::TAU / 500.0;
        let exact = hopf_lax_quadratic(1.0, 0.0, f64::sin, 1.0, common::TAU, x, t).unwrap();
        worst = worst.max((r.eval(x) - exact).abs());
    }
    assert!(worst <= 5e-3, "{worst:e}");
}

#[test]
fn lax_friedrichs_agrees_with_the_quartic_hopf_formula() {
    let t = Case::Quartic1d.final_time();
    let r = reference_lf(
        HamiltonianModel::Quartic1d,
        |x| Case::Quartic1d.initial([x, 0.0]),
        (-1.0, 1.0),
        Boundary::Outflow,
        16384,
        t,
    )
    .unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..400 {
        let x = -0.8 + 1.6 * i as f64 / 400.0;
        worst = worst.max((r.eval(x) - quartic_concave_hopf(x, t)).abs());
    }
    assert!(worst <= 5e-3, "{worst:e}");
}

#[test]
fn every_exact_solution_starts_from_the_initial_data() {
    for case in Case::all().filter(|c| c.has_exact()) {
        let [a, b, c, d] = case.domain();
        for i in 0..20 {
            let s = (i as f64 + 0.5) / 20.0;
            let x = [a + s * (b - a), c + (1.0 - s) * (d - c)];
            let e = case.exact(x, 0.0).unwrap();
            assert!((e - case.initial(x)).abs() < 1e-12, "{case} at {x:?}");
        }
    }
}
