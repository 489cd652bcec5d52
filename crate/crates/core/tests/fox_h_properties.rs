use fracdiff_core::fox_h::{eval_contour_auto, eval_series_small, scale_argument, HParams};
use fracdiff_core::special_fn::mittag_leffler_real;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contour_reproduces_mittag_leffler(alpha in 0.3f64..1.0, beta in 0.5f64..2.0, z in 0.05f64..20.0) {
        let h = HParams::mittag_leffler(alpha, beta).unwrap();
        let v = eval_contour_auto(&h, z).unwrap().value;
        let exact = mittag_leffler_real(alpha, beta, -z).unwrap();
        prop_assert!((v - exact).abs() < 1e-8 * exact.abs().max(1e-2), "{} vs {}", v, exact);
    }

    #[test]
    fn series_and_contour_agree_for_bessel_k(nu in 0.0f64..2.0, x in 0.05f64..3.0) {
        let h = HParams::bessel_k(nu).unwrap();
        let s = eval_series_small(&h, x, 400);
        prop_assume!(s.is_ok());
        let s = s.unwrap().value;
        let c = eval_contour_auto(&h, x).unwrap().value;
        prop_assert!((s - c).abs() < 1e-8 * c.abs(), "{} vs {}", s, c);
    }

    #[test]
    fn argument_scaling(alpha in 0.3f64..1.0, delta in 0.3f64..3.0, x in 0.1f64..4.0) {
        // H[x^δ] = (1/δ) H'[x]
        let h = HParams::mittag_leffler(alpha, 1.0).unwrap();
        let lhs = eval_contour_auto(&h, x.powf(delta)).unwrap().value;
        let scaled = scale_argument(&h, delta).unwrap();
        let rhs = eval_contour_auto(&scaled, x).unwrap().value / delta;
        prop_assert!((lhs - rhs).abs() < 1e-8 * lhs.abs().max(1e-2), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn exponential_identity(a in 0.0f64..3.0, x in 0.05f64..10.0) {
        let h = HParams::exponential(a).unwrap();
        let s = eval_series_small(&h, x, 400).unwrap();
        let exact = x.powf(a) * (-x).exp();
        // the alternating series cancels, and its error estimate has to say so
        prop_assert!((s.value - exact).abs() <= s.err_est() + 1e-14 * exact, "{:?} vs {}", s, exact);
    }
}
