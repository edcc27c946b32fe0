use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use threegap::cf::{cf_from_rational, convergent_at, convergents, matrix_form, semiconvergent};
use threegap::oracle::{analyze, analyze_with, gap_report, surrogate_convergent, surrogate_with_offset};
use threegap::predictor::{frequency_trace, frequency_upper_bound, predict, two_gap_set};
use threegap::quadratic::{digit_sum_over_q, eigen_split, expand_surd, period_decomposition, q_closed_form};
use threegap::{CfExpansion, QuadraticSurd};

fn digits(max: i64, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(1..=max, len).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

fn finite_cf() -> impl Strategy<Value = CfExpansion> {
    digits(9, 2..31).prop_filter_map("canonical", |d| CfExpansion::finite(d).ok())
}

fn periodic_cf() -> impl Strategy<Value = CfExpansion> {
    (digits(6, 0..4), digits(6, 1..5)).prop_map(|(pre, per)| CfExpansion::periodic(pre, per).unwrap())
}

/// `q_{L,a_L-1}` for a finite expansion of length `L ≥ 2`.
fn final_stretch_start(cf: &CfExpansion) -> Option<u64> {
    let len = cf.available().filter(|_| cf.is_finite())?;
    if len < 2 {
        return None;
    }
    let a = cf.digit(len).unwrap() - 1u32;
    semiconvergent(cf, len, &a).ok().and_then(|c| c.q.to_u64())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_alternates(cf in finite_cf()) {
        let cs = convergents(&cf, cf.available().unwrap()).unwrap();
        #[allow(clippy::needless_range_loop)]
        for n in 0..cs.len() {
            let prev = convergent_at(&cf, n as isize - 1).unwrap();
            let det = &cs[n].p * &prev.q - &prev.p * &cs[n].q;
            let expect = if n % 2 == 0 { -1 } else { 1 };
            prop_assert_eq!(det, BigInt::from(expect));
        }
    }

    #[test]
    fn semiconvergents_interleave(cf in finite_cf()) {
        let len = cf.available().unwrap();
        let cs = convergents(&cf, len).unwrap();
        for n in 2..=len {
            let a_n = cf.digit(n).unwrap().to_u64().unwrap();
            let mut last = cs[n - 2].q.clone();
            for i in 1..=a_n {
                let s = semiconvergent(&cf, n, &i.into()).unwrap();
                prop_assert!(s.q > last);
                last = s.q;
            }
            prop_assert_eq!(&last, &cs[n].q);
        }
    }

    #[test]
    fn convergents_are_reduced(cf in finite_cf()) {
        for c in cf.convergents_iter() {
            prop_assert!(num_integer::Integer::gcd(&c.p, &c.q).is_one());
        }
    }

    #[test]
    fn rational_round_trip(cf in finite_cf()) {
        let v = cf.value().unwrap();
        prop_assert_eq!(cf_from_rational(v.numer(), v.denom()).unwrap(), cf);
    }

    #[test]
    fn rational_expansion_evaluates_back(num in 0u64..10_000, den in 1u64..10_000) {
        prop_assume!(num < den);
        let cf = cf_from_rational(&num.into(), &den.into()).unwrap();
        prop_assert_eq!(cf.value().unwrap(), BigRational::new(num.into(), den.into()));
    }

    #[test]
    fn matrix_columns_match_recurrence(cf in finite_cf()) {
        let len = cf.available().unwrap() as isize;
        for n in -2..len {
            let m = matrix_form(&cf, n).unwrap();
            let next = convergent_at(&cf, n + 1).unwrap();
            let cur = convergent_at(&cf, n).unwrap();
            prop_assert_eq!((&m.m11, &m.m21, &m.m12, &m.m22), (&next.p, &next.q, &cur.p, &cur.q));
            let sign = if (n + 2) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(m.det(), BigInt::from(sign));
        }
    }

    #[test]
    fn closed_form_matches_recurrence(cf in periodic_cf()) {
        let r = cf.preperiod_len();
        let cs = convergents(&cf, 40).unwrap();
        for n in r + 1..=40 {
            prop_assert_eq!(q_closed_form(&cf, n).unwrap(), cs[n - 1].q.clone());
        }
    }

    #[test]
    fn eigen_identities(cf in periodic_cf()) {
        let dec = period_decomposition(&cf, cf.preperiod_len()).unwrap();
        let split = eigen_split(&dec.period).unwrap();
        let product = &split.lambda1 * &split.lambda2;
        prop_assert_eq!(product.as_integer(), Some(dec.period.det()));
        prop_assert_eq!((&split.lambda1 + &split.lambda2).as_integer(), Some(dec.period.trace()));
        let k_even = dec.k.is_multiple_of(2);
        prop_assert_eq!(split.lambda2.signum() == Ordering::Greater, k_even);
        prop_assert!(split.lambda1 > threegap::QuadElem::one(&split.radicand));
        prop_assert!(split.lambda2.abs() < threegap::QuadElem::one(&split.radicand));
        prop_assert_eq!(&split.pmat + &split.qmat, split.identity());
    }

    #[test]
    fn periodic_surd_round_trip(cf in periodic_cf()) {
        let surd = QuadraticSurd::from_periodic(&cf).unwrap();
        prop_assert_eq!(expand_surd(&surd).unwrap(), cf.clone());
        prop_assert_eq!(expand_surd(&surd.canonicalize()).unwrap(), cf);
    }

    #[test]
    fn expansion_restarted_inside_cycle_repeats_period(cf in periodic_cf(), shift in 0usize..6) {
        let period = cf.period().unwrap().to_vec();
        let start = cf.preperiod_len() + 1 + shift;
        let rotated: Vec<_> = (0..period.len()).map(|i| cf.digit(start + i).unwrap().clone()).collect();
        let tail = CfExpansion::periodic(Vec::new(), rotated.clone()).unwrap();
        let surd = QuadraticSurd::from_periodic(&tail).unwrap();
        let again = expand_surd(&surd).unwrap();
        prop_assert_eq!(again.period().unwrap(), rotated.as_slice());
    }

    #[test]
    fn digit_sum_ratio_decays(cf in periodic_cf()) {
        let eps = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
        let ratios: Vec<_> = (1..=60).map(|n| digit_sum_over_q(&cf, n).unwrap()).collect();
        prop_assert!(ratios[59] < eps);
        // eventually strictly decreasing: from some point on, through n = 60
        let tail_start = ratios.windows(2).rposition(|w| w[1] >= w[0]).map_or(0, |p| p + 1);
        prop_assert!(tail_start < 40, "still not decreasing at n = {}", tail_start + 1);
    }

    #[test]
    fn gap_report_structure(cf in finite_cf(), n in 1u64..200) {
        let Ok(analysis) = analyze(&cf, n) else {
            // only degenerate rationals may fail
            prop_assert!(BigInt::from(n) >= cf.convergents_iter().last().unwrap().q);
            return Ok(());
        };
        let report = &analysis.report;
        prop_assert_eq!(report.total_length(), BigRational::one());
        prop_assert_eq!(report.total_multiplicity(), n);
        prop_assert!((1..=3).contains(&report.distinct_count()));
        prop_assert_eq!(report.distinct_count() == 1, n == 1);
        if report.distinct_count() == 3 {
            let g = &report.gaps;
            prop_assert_eq!(&g[2].length, &(&g[0].length + &g[1].length));
        }
        let perm = &analysis.permutation;
        prop_assert_eq!(perm.u[0], 0);
        if let Some(ok) = perm.rotation_rule() {
            prop_assert!(ok);
        }
    }

    #[test]
    fn surrogate_is_stable(cf in periodic_cf(), n in 1u64..300) {
        let base = gap_report(&cf, n).unwrap();
        let deeper = analyze_with(surrogate_with_offset(&cf, n, 2).unwrap(), n).report;
        prop_assert_eq!(base.multiplicities(), deeper.multiplicities());
        let base_perm = analyze(&cf, n).unwrap().permutation;
        let deeper_perm = analyze_with(surrogate_with_offset(&cf, n, 2).unwrap(), n).permutation;
        prop_assert_eq!(base_perm, deeper_perm);
    }

    #[test]
    fn predictor_agrees_with_oracle(cf in prop_oneof![finite_cf(), periodic_cf()], n in 1u64..250) {
        let Ok(analysis) = analyze(&cf, n) else { return Ok(()); };
        let Ok(pred) = predict(&cf, n) else { return Ok(()); };
        prop_assert_eq!(pred.u2, analysis.permutation.u2());
        prop_assert_eq!(pred.u_last, analysis.permutation.u_last());
        match final_stretch_start(&cf) {
            // exact rational p/q: past q_{L,a_L-1} the smallest gap has length 0,
            // so only two distinct lengths remain
            Some(start) if n > start => prop_assert!(analysis.report.is_two_gap()),
            _ => prop_assert_eq!(pred.is_two_gap, analysis.report.is_two_gap()),
        }
    }

    #[test]
    fn two_gap_set_membership(cf in periodic_cf(), nmax in 2u64..200) {
        let set = two_gap_set(&cf, nmax).unwrap();
        prop_assert!(set.windows(2).all(|w| w[0] < w[1]));
        for n in 1..=nmax {
            let oracle = gap_report(&cf, n).unwrap().is_two_gap();
            prop_assert_eq!(set.binary_search(&n).is_ok(), oracle, "N = {}", n);
        }
    }

    #[test]
    fn ratio_never_exceeds_bound(cf in periodic_cf(), mut checkpoints in prop::collection::vec(1u64..100_000, 1..8)) {
        checkpoints.sort_unstable();
        let trace = frequency_trace(&cf, &checkpoints).unwrap();
        let mut last = 0;
        for row in &trace.rows {
            prop_assert!(row.count >= last);
            last = row.count;
            prop_assert!(row.ratio <= row.upper_bound, "N = {}: {} > {}", row.n_points, row.ratio, row.upper_bound);
            prop_assert_eq!(&row.upper_bound, &frequency_upper_bound(&cf, row.n_points).unwrap());
        }
    }
}

#[test]
fn right_endpoints_give_semiconvergent_sums() {
    let golden = threegap::AlphaSource::golden().expansion().unwrap();
    let silver = threegap::AlphaSource::silver().expansion().unwrap();
    let pre = CfExpansion::periodic(vec![3.into()], vec![1.into(), 2.into()]).unwrap();
    for cf in [golden, silver, pre] {
        for n in 2..=20 {
            let a_n = cf.digit(n).unwrap().to_u64().unwrap();
            for i in 1..=a_n {
                let q = semiconvergent(&cf, n, &i.into()).unwrap().q.to_u64().unwrap();
                let p = predict(&cf, q).unwrap();
                assert_eq!(p.u2.unwrap() + p.u_last, q, "n = {n}, i = {i}");
                assert_eq!(p.index, n);
                assert_eq!(p.sub_index, Some(i));
            }
        }
    }
}

#[test]
fn golden_count_is_logarithmic() {
    let golden = threegap::AlphaSource::golden().expansion().unwrap();
    let set = two_gap_set(&golden, 100_000).unwrap();
    let log_phi = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    for n in 1..=100_000u64 {
        let count = set.partition_point(|&v| v <= n) as f64;
        assert!(count <= (n as f64).ln() / log_phi + 2.0, "N = {n}");
    }
}

#[test]
fn surrogate_denominator_exceeds_four_n() {
    let golden = threegap::AlphaSource::golden().expansion().unwrap();
    for n in 1..500u64 {
        let s = surrogate_convergent(&golden, n).unwrap();
        assert!(s.convergent.q > BigInt::from(4 * n));
        if s.convergent.index > 0 {
            let prev = convergent_at(&golden, s.convergent.index - 1).unwrap();
            assert!(prev.q <= BigInt::from(4 * n));
        }
        assert!(!s.convergent.q.is_zero());
    }
}
