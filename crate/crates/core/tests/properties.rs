#![allow(clippy::needless_range_loop)]

use std::f64::consts::{PI, TAU};

use bloch_infogeo_core::channel::QubitChannel;
use bloch_infogeo_core::linalg::symmetric_eigenvalues;
use bloch_infogeo_core::metric::{MetricModel, MonotoneFn};
use bloch_infogeo_core::state::{
    cartesian_from_spherical, spherical_from_cartesian, QubitState, Spherical,
};
use proptest::prelude::*;

fn interior() -> impl Strategy<Value = Spherical> {
    (0.001f64..0.999, 0.001f64..PI - 0.001, 0.0f64..TAU)
        .prop_map(|(r, t, p)| Spherical::new(r, t, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn tensors_are_spd(s in interior()) {
        let x = cartesian_from_spherical(&s);
        for m in MetricModel::REGISTERED {
            let g = m.tensor_cartesian(x).unwrap();
            prop_assert!(symmetric_eigenvalues(g)[0] > 0.0);
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert_eq!(g[i][j], g[j][i]);
                }
            }
        }
    }

    #[test]
    fn chart_round_trip(s in interior()) {
        let back = spherical_from_cartesian(cartesian_from_spherical(&s)).unwrap();
        prop_assert!((back.r - s.r).abs() < 1e-14);
        prop_assert!((back.theta - s.theta).abs() < 1e-12);
        prop_assert!(s.delta_to(&back)[2].abs() < 1e-12);
    }

    #[test]
    fn density_matrix_is_a_state(s in interior()) {
        let st = QubitState::from_spherical(s).unwrap();
        let rho = st.density_matrix();
        prop_assert!(rho.is_hermitian(0.0));
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-15);
        let (hi, lo) = rho.eigenvalues();
        let (want_hi, want_lo) = st.eigenvalues();
        prop_assert!((hi - want_hi).abs() < 1e-14 && (lo - want_lo).abs() < 1e-14);
        let b = rho.bloch_vector();
        let x = st.cartesian();
        for i in 0..3 {
            prop_assert!((b[i] - x[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn rsw_maps_sphere_into_ball(theta in 0.0f64..PI, phi in 0.0f64..TAU, u in 0.0f64..TAU, v in 0.0f64..TAU) {
        let s = QubitState::from_spherical(Spherical::new(1.0, theta, phi)).unwrap();
        let image = QubitChannel::rsw(u, v).apply(&s);
        prop_assert!(image.is_ok());
        prop_assert!(image.unwrap().radius() <= 1.0 + 1e-12);
    }

    #[test]
    fn rsw_is_cptp(u in 0.0f64..TAU, v in 0.0f64..TAU) {
        let w = QubitChannel::rsw(u, v).cptp_witness();
        prop_assert!(w.is_cptp, "min eigenvalue {}", w.min_eigenvalue);
    }

    #[test]
    fn monotone_functions_are_symmetric(t in 1e-6f64..1.0) {
        for f in MonotoneFn::ALL {
            let a = f.eval(1.0 / t) * t;
            let b = f.eval(t);
            prop_assert!((a - b).abs() <= 1e-13 * b.abs());
        }
    }
}

#[test]
fn unital_flag_is_exact() {
    assert!(QubitChannel::rsw(0.0, 1.3).is_unital());
    assert!(QubitChannel::rsw(PI, 1.3).translation()[2].abs() < 1e-15);
    assert!(!QubitChannel::rsw(0.5, 1.3).is_unital());
}
