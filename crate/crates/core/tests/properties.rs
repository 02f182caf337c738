use polarfermi::cli::{format_float, GridSpec};
use polarfermi::functional::{BCSState, Dimension, MomentumGrid, PhaseLabel};
use polarfermi::kappa::{kappa_g, kappa_i, kappa_o, Kind};
use polarfermi::spectral::curve_from_tc;
use polarfermi::toy1d::{gap_integral_1d, solve_gap_1d};
use polarfermi::{f_val, k_delta, k_tilde, upsilon0, PhysParams};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = PhysParams> {
    (0.2f64..3.0, 0.0f64..1.0, 0.005f64..1.0)
        .prop_map(|(mu, dmu, temp)| PhysParams::new(mu, dmu, temp, 1.0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_even_and_above_its_envelope(p in params(), t in -5.0f64..5.0, delta in 0.0f64..3.0) {
        let k = k_delta(t, delta, &p).unwrap();
        prop_assert!(k > 0.0);
        prop_assert!((k - k_delta(-t, delta, &p).unwrap()).abs() <= 1e-14 * k);
        let env = k_tilde(t, &p).unwrap();
        prop_assert!(env <= k * (1.0 + 1e-10), "K-tilde {} > K {}", env, k);
    }

    #[test]
    fn reduced_kernel_grows_with_imbalance(x in 0.0f64..40.0, c in 0.0f64..30.0, dc in 0.01f64..2.0) {
        let a = f_val(x, c).unwrap();
        prop_assert!(a > 0.0);
        prop_assert!(f_val(x, c + dc).unwrap() >= a * (1.0 - 1e-14));
        prop_assert!(f_val(x, -c).is_err() || c == 0.0);
    }

    #[test]
    fn upsilon_is_odd_and_bounded(p in params(), t in -5.0f64..5.0) {
        let u = upsilon0(t, &p).unwrap();
        prop_assert!((-1.0..=1.0).contains(&u), "{}", u);
        prop_assert_eq!(upsilon0(-t, &p).unwrap(), -u);
    }

    #[test]
    fn kappa_ordering(t in 0.0f64..8.0) {
        let i = kappa_i(t).unwrap();
        let g = kappa_g(t).unwrap().value;
        let o = kappa_o(t).unwrap();
        let slack = 1e-10 * i.abs().max(1.0);
        prop_assert!(o <= g + slack && g <= i + slack, "o {} g {} i {}", o, g, i);
    }

    #[test]
    fn kappa_i_is_increasing(t in 0.0f64..20.0, dt in 0.01f64..2.0) {
        prop_assert!(kappa_i(t + dt).unwrap() > kappa_i(t).unwrap());
    }

    #[test]
    fn curve_coordinates_are_consistent(tc in 1e-6f64..1.0, t in 0.0f64..50.0) {
        let c = curve_from_tc(tc, Kind::I, &[t]).unwrap();
        let p = c.points[0];
        prop_assert!((p.dmu_over_tc - t * p.t_over_tc).abs() <= 1e-15 * p.dmu_over_tc.max(1e-300));
        prop_assert!((p.temperature - tc * p.t_over_tc).abs() <= 1e-15 * p.temperature);
        prop_assert!(p.t_over_tc <= 1.0);
    }

    #[test]
    fn balanced_gap_integral_decreases(temp in 0.01f64..0.5, d in 1e-3f64..2.0, factor in 1.05f64..3.0) {
        let p = PhysParams::new(1.0, 0.0, temp, 1.0).unwrap();
        prop_assert!(gap_integral_1d(d * factor, &p).unwrap() < gap_integral_1d(d, &p).unwrap());
    }

    #[test]
    fn float_text_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn grid_spec_endpoints(min in -10.0f64..10.0, span in 1e-3f64..10.0, count in 2usize..200) {
        let spec = GridSpec::parse("t-grid", &format!("{min}:{}:{count}", min + span)).unwrap();
        let v = spec.values();
        prop_assert_eq!(v.len(), count);
        prop_assert_eq!(v[0], min);
        prop_assert!((v[count - 1] - (min + span)).abs() <= 1e-12 * (min + span).abs().max(1.0));
        prop_assert!(v.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn state_eigenvalues_lie_in_unit_interval(
        gp in 0.0f64..=1.0,
        gm in 0.0f64..=1.0,
        frac in -1.0f64..=1.0,
    ) {
        let bound = (gp * (1.0 - gm)).min(gm * (1.0 - gp)).sqrt();
        let grid = MomentumGrid::from_parts(Dimension::One, vec![1.0], vec![1.0]).unwrap();
        let state = BCSState::new(grid, vec![gp], vec![gm], vec![frac * bound]).unwrap();
        for e in state.eigenvalues()[0] {
            prop_assert!((0.0..=1.0).contains(&e), "{}", e);
        }
        prop_assert!(state.entropy_density()[0] >= 0.0);
    }

    #[test]
    fn phase_labels_round_trip(i in 0usize..3) {
        let label = [PhaseLabel::Superfluid, PhaseLabel::Normal, PhaseLabel::NormalMetastable][i];
        prop_assert_eq!(label.to_string().parse::<PhaseLabel>().unwrap(), label);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gap_roots_solve_the_equation(dmu in 0.0f64..0.35, temp in 0.01f64..0.25) {
        let p = PhysParams::new(1.0, dmu, temp, 1.0).unwrap();
        let sol = solve_gap_1d(&p).unwrap();
        prop_assert!(sol.count() <= 2);
        for &d in &sol.roots {
            let j = gap_integral_1d(d, &p).unwrap();
            prop_assert!((j - 1.0).abs() < 1e-8, "J({}) = {}", d, j);
        }
    }
}
