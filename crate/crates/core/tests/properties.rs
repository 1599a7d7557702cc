use madkit::distributions::DistributionSpec;
use madkit::mad::{
    asymptotic_factor, correction_factor, mad_corrected, mad_uncorrected, park_table,
    published_table, FactorModel,
};
use madkit::quantiles::{
    beta_hdi, hd_weights, quantile, thd_weights, HdiOutcome, MedianEstimatorKind, Sample,
};
use madkit::specfun::{normal_cdf, normal_quantile, reg_inc_beta, BetaParams, Probability};
use proptest::prelude::*;

const KINDS: [MedianEstimatorKind; 3] = MedianEstimatorKind::CANONICAL;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn sample_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0..100.0f64, 2..40)
}

fn scale_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![0.01..50.0f64, -50.0..-0.01f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn weights_sum_to_one(n in 1usize..=200, p in 0.01..0.99f64) {
        let p = Probability::new(p).unwrap();
        for w in [hd_weights(n, p).unwrap(), thd_weights(n, p, 1.0 / (n as f64).sqrt()).unwrap()] {
            let sum: f64 = w.weights().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-10, "sum {}", sum);
            prop_assert!(w.weights().iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn quantiles_are_affine_equivariant(
        x in sample_strategy(),
        p in 0.05..0.95f64,
        a in scale_strategy(),
        b in -100.0..100.0f64,
    ) {
        let sx = Sample::new(x.clone()).unwrap();
        let sy = Sample::new(x.iter().map(|v| a * v + b).collect()).unwrap();
        // a negative scale reverses the order statistics
        let p_src = if a > 0.0 { p } else { 1.0 - p };
        for kind in KINDS {
            let qx = quantile(&sx, Probability::new(p_src).unwrap(), kind).unwrap();
            let qy = quantile(&sy, Probability::new(p).unwrap(), kind).unwrap();
            prop_assert!(close(qy, a * qx + b, 1e-9), "{} {} vs {}", kind, qy, a * qx + b);
        }
    }

    #[test]
    fn quantiles_stay_within_range(x in sample_strategy(), p in 0.01..0.99f64) {
        let s = Sample::new(x).unwrap();
        let (lo, hi) = (s.values()[0], s.values()[s.len() - 1]);
        for kind in KINDS {
            let q = quantile(&s, Probability::new(p).unwrap(), kind).unwrap();
            prop_assert!(lo <= q && q <= hi);
        }
    }

    #[test]
    fn mad_is_affine_equivariant(
        x in sample_strategy(),
        a in scale_strategy(),
        b in -100.0..100.0f64,
    ) {
        let sx = Sample::new(x.clone()).unwrap();
        let sy = Sample::new(x.iter().map(|v| a * v + b).collect()).unwrap();
        for kind in KINDS {
            let mx = mad_corrected(&sx, kind, &FactorModel::Recommended).unwrap();
            let my = mad_corrected(&sy, kind, &FactorModel::Recommended).unwrap();
            prop_assert!(close(my.corrected, a.abs() * mx.corrected, 1e-9));
            prop_assert!(my.uncorrected >= 0.0);
            prop_assert!((my.corrected - my.factor * my.uncorrected).abs() <= 1e-12 * (1.0 + my.corrected));
        }
    }

    #[test]
    fn inc_beta_reflection(x in 0.0..=1.0f64, a in 0.05..500.0f64, b in 0.05..500.0f64) {
        let y = 1.0 - x;
        let lhs = reg_inc_beta(x, BetaParams::new(a, b).unwrap()).unwrap().value();
        let rhs = reg_inc_beta(y, BetaParams::new(b, a).unwrap()).unwrap().value();
        prop_assert!((lhs + rhs - 1.0).abs() < 1e-12, "{} + {}", lhs, rhs);
    }

    #[test]
    fn inc_beta_is_monotone(x1 in 0.0..=1.0f64, x2 in 0.0..=1.0f64, a in 0.1..100.0f64, b in 0.1..100.0f64) {
        let params = BetaParams::new(a, b).unwrap();
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        let f_lo = reg_inc_beta(lo, params).unwrap().value();
        let f_hi = reg_inc_beta(hi, params).unwrap().value();
        prop_assert!(f_lo <= f_hi + 1e-15);
    }

    #[test]
    fn hdi_has_requested_width(a in 1.0001..200.0f64, b in 1.0001..200.0f64, w in 0.01..0.99f64) {
        let params = BetaParams::new(a, b).unwrap();
        match beta_hdi(params, w).unwrap() {
            HdiOutcome::Interval(h) => {
                prop_assert!((h.right - h.left - w).abs() < 1e-9);
                prop_assert!(h.left >= 0.0 && h.right <= 1.0);
                let mode = params.mode();
                prop_assert!(h.left <= mode + 1e-9 && mode <= h.right + 1e-9);
            }
            HdiOutcome::Degenerate => prop_assert!(false, "unexpected degenerate case"),
        }
    }

    #[test]
    fn normal_symmetry(x in -8.0..8.0f64) {
        let lower = normal_cdf(-x).value();
        let upper = normal_cdf(x).value();
        prop_assert!((lower + upper - 1.0).abs() < 1e-15);
    }

    #[test]
    fn normal_round_trip_lower_half(x in -6.0..=0.0f64) {
        let p = normal_cdf(x);
        prop_assert!((normal_quantile(p).unwrap() - x).abs() < 1e-12);
    }

    #[test]
    fn normal_quantile_is_odd(p in 1e-12..0.5f64) {
        let lo = normal_quantile(Probability::new(p).unwrap()).unwrap();
        let hi = normal_quantile(Probability::new(1.0 - p).unwrap()).unwrap();
        // 1 - p carries the rounding of the subtraction
        prop_assert!((lo + hi).abs() < 1e-9 * (1.0 + lo.abs()));
    }

    #[test]
    fn spec_display_round_trips(i in 0usize..20) {
        let spec = DistributionSpec::sensitivity_set()[i];
        prop_assert_eq!(spec.to_string().parse::<DistributionSpec>().unwrap(), spec);
    }
}

#[test]
fn n_two_shares_sqrt_pi_and_half_range() {
    let x = Sample::new(vec![-1.25, 3.5]).unwrap();
    for kind in KINDS {
        assert_eq!(
            correction_factor(2, kind, &FactorModel::Recommended).unwrap(),
            std::f64::consts::PI.sqrt()
        );
        assert_eq!(mad_uncorrected(&x, kind).unwrap(), 2.375);
    }
}

#[test]
fn tabulated_factors_decrease_and_exceed_the_limit() {
    let limit = asymptotic_factor();
    for kind in KINDS {
        let table = published_table(kind).unwrap();
        assert!(table.iter().all(|&(_, c)| c > limit), "{kind}");
        // neighbours can tie at 4 decimals
        for pair in table.windows(2).filter(|p| p[0].0 >= 10) {
            assert!(pair[1].1 <= pair[0].1, "{kind}: {:?}", pair);
        }
    }
}

#[test]
fn recommended_model_is_smooth_at_the_seam() {
    for kind in KINDS {
        let c100 = correction_factor(100, kind, &FactorModel::Recommended).unwrap();
        let c101 = correction_factor(101, kind, &FactorModel::Recommended).unwrap();
        assert!((c100 - c101).abs() < 0.002, "{kind}: {c100} {c101}");
        // fitted and tabulated values agree beyond the seam
        for &(n, c) in published_table(kind)
            .unwrap()
            .iter()
            .filter(|&&(n, _)| n > 100)
        {
            let fitted = correction_factor(n, kind, &FactorModel::Recommended).unwrap();
            assert!((fitted - c).abs() < 1e-3, "{kind} n={n}");
        }
    }
}

#[test]
fn park_and_sample_median_tables_agree() {
    let sm = published_table(MedianEstimatorKind::Sm).unwrap();
    let worst = park_table()
        .iter()
        .filter(|&&(n, _)| n <= 100)
        .map(|&(n, c)| {
            let other = sm.iter().find(|&&(m, _)| m == n).unwrap().1;
            (c - other).abs()
        })
        .fold(0.0, f64::max);
    assert!(worst <= 0.00065 + 1e-12, "{worst}");
}
