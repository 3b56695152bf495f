use hjdg_web::{heatmap, interface, profile};

#[test]
fn penalty_constant_decides_the_expansion_fan() {
    let off = profile("linnonsmth", 40, 2, 0.0, 1.0, 200).unwrap();
    let on = profile("linnonsmth", 40, 2, 0.25, 1.0, 200).unwrap();
    assert!(off.linf > 0.1, "{}", off.linf);
    assert!(on.linf < 0.05, "{}", on.linf);
    assert_eq!(on.x().len(), 200);
    assert!(on.exact().iter().all(|v| v.is_finite()));
}

#[test]
fn profiles_reject_planar_cases_and_negative_constants() {
    assert!(profile("rotation", 10, 2, 0.25, 0.1, 10).is_err());
    assert!(profile("burgers1d", 10, 2, -1.0, 0.1, 10).is_err());
}

#[test]
fn interface_quantities_for_burgers() {
    let r = interface("burgers1d", -1.0, 2.0, 0.0, 0.25, 0.1).unwrap();
    assert!((r.roe_speed - 0.5).abs() < 1e-15);
    assert!((r.delta - 1.5).abs() < 1e-15);
    assert!((r.visc - 1.0).abs() < 1e-15);
    assert!((r.penalty - 0.025).abs() < 1e-15);
    assert_eq!((r.upwind_minus, r.upwind_plus), (0.0, 0.5));
    let shock = interface("burgers1d", 2.0, -1.0, 0.0, 0.25, 0.1).unwrap();
    assert_eq!(shock.visc, 0.0);
    assert!(interface("rotation", 0.0, 1.0, 0.0, 0.25, 0.1).is_err());
}

#[test]
fn heatmap_of_a_short_rotation() {
    let m = heatmap("rotation", 8, 1, 0.1, 16).unwrap();
    assert_eq!(m.values().len(), 256);
    assert!(m.values().iter().all(|v| v.is_finite()));
    assert!(m.min <= m.max && m.l1.is_finite());
}
