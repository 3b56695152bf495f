mod common;

use common::{line_space, upwind_dg_advection, TAU};
use hjdg_core::field::DgField;
use hjdg_core::hamiltonian::{HamiltonianModel, Loc};
use hjdg_core::mesh::Boundary;
use hjdg_core::riemann::{roe_from_values, upwind_weights};
use hjdg_core::solver1d::assemble_rhs_1d;
use hjdg_core::timeloop::{minmod, Limiter, MinmodLimiter, MomentLimiter};
use proptest::prelude::*;

const NONLINEAR: [HamiltonianModel; 4] = [
    HamiltonianModel::Burgers1d,
    HamiltonianModel::Eikonal1d,
    HamiltonianModel::Cos1d,
    HamiltonianModel::Quartic1d,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roe_levels_are_ordered(m in 0usize..4, pm in -3.0f64..3.0, pp in -3.0f64..3.0) {
        let model = NONLINEAR[m];
        let at = Loc::at([0.0, 0.0]);
        let roe = roe_from_values(
            pm,
            pp,
            [model.h([pm, 0.0], &at), model.h([pp, 0.0], &at)],
            [model.grad([pm, 0.0], &at)[0], model.grad([pp, 0.0], &at)[0]],
        );
        prop_assert!(roe.delta >= 0.0);
        prop_assert!(roe.s_level >= roe.roe_speed.abs());
        prop_assert!(roe.visc >= 0.0);
        let (wm, wp) = upwind_weights(&roe);
        prop_assert!(wm <= 0.0 && wp >= 0.0);
        prop_assert_eq!(wm + wp, roe.roe_speed);
    }

    #[test]
    fn expansions_switch_the_penalty_on(pm in -2.0f64..-0.1, pp in 0.1f64..2.0) {
        let at = Loc::at([0.0, 0.0]);
        let model = HamiltonianModel::Burgers1d;
        let roe = roe_from_values(
            pm,
            pp,
            [model.h([pm, 0.0], &at), model.h([pp, 0.0], &at)],
            [pm, pp],
        );
        prop_assert!(roe.visc > 0.0);
    }

    #[test]
    fn upwind_equality_for_any_speed(a in -3.0f64..3.0, k in 1usize..4, seed in 0u64..1000) {
        let n = 7;
        let space = line_space(0.0, 1.0, n, k, Boundary::Periodic);
        let u = common::random_coeffs(n * (k + 1), seed);
        let f = DgField::from_coefficients(space, u.clone()).unwrap();
        let ours = assemble_rhs_1d(&f, HamiltonianModel::advection_1d(a), 0.25).unwrap();
        let oracle = upwind_dg_advection(a, &u, n, k, 1.0 / n as f64);
        for (x, y) in ours.iter().zip(&oracle) {
            prop_assert!((x - y).abs() <= 1e-12 * (1.0 + a.abs()) * n as f64);
        }
    }

    #[test]
    fn limiters_keep_means_of_random_data(seed in 0u64..1000, k in 1usize..4) {
        let space = line_space(0.0, TAU, 13, k, Boundary::Periodic);
        let u = common::random_coeffs(13 * (k + 1), seed);
        let before = DgField::from_coefficients(space.clone(), u.clone()).unwrap().means();
        let limiters: [Box<dyn Limiter>; 2] = [
            Box::new(MinmodLimiter::new(&space).unwrap()),
            Box::new(MomentLimiter::new(&space).unwrap()),
        ];
        for (i, lim) in limiters.iter().enumerate() {
            let mut v = u.clone();
            lim.apply(&mut v);
            let after = DgField::from_coefficients(space.clone(), v.clone()).unwrap().means();
            for (a, b) in before.iter().zip(&after) {
                prop_assert!((a - b).abs() <= 1e-14);
            }
            if i == 0 {
                let mut w = v.clone();
                lim.apply(&mut w);
                prop_assert_eq!(&w, &v);
            }
        }
    }

    #[test]
    fn minmod_picks_the_smallest_agreeing_value(v in proptest::collection::vec(-5.0f64..5.0, 1..5)) {
        let m = minmod(&v);
        if v.iter().all(|x| *x > 0.0) || v.iter().all(|x| *x < 0.0) {
            let smallest = v.iter().cloned().fold(f64::INFINITY, |a, b| a.min(b.abs()));
            prop_assert_eq!(m.abs(), smallest);
            prop_assert_eq!(m.signum(), v[0].signum());
        } else {
            prop_assert_eq!(m, 0.0);
        }
    }

    #[test]
    fn projection_reproduces_polynomials(c in proptest::array::uniform3(-2.0f64..2.0), k in 2usize..4) {
        let space = line_space(-1.0, 3.0, 5, k, Boundary::Outflow);
        let p = |x: f64| c[0] + c[1] * x + c[2] * x * x;
        let f = DgField::project(space, |x| p(x[0]));
        for i in 0..=20 {
            let x = -1.0 + 4.0 * i as f64 / 20.0;
            prop_assert!((f.sample([x, 0.0]).unwrap() - p(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn locality_for_random_states(seed in 0u64..1000, m in 0usize..9) {
        let n = 9;
        let space = line_space(0.0, TAU, n, 2, Boundary::Periodic);
        let u = common::random_coeffs(n * 3, seed);
        let base = assemble_rhs_1d(&DgField::from_coefficients(space.clone(), u.clone()).unwrap(), HamiltonianModel::Quartic1d, 0.25).unwrap();
        let mut v = u;
        v[m * 3 + 1] += 0.5;
        let out = assemble_rhs_1d(&DgField::from_coefficients(space, v).unwrap(), HamiltonianModel::Quartic1d, 0.25).unwrap();
        for j in 0..n {
            let near = j == m || j == (m + 1) % n || j == (m + n - 1) % n;
            if !near {
                prop_assert_eq!(&out[j * 3..j * 3 + 3], &base[j * 3..j * 3 + 3]);
            }
        }
    }
}
