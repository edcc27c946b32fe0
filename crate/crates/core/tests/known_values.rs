//! Values computed independently (60-digit brute force) and frozen here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use threegap::metric::levy_statistic;
use threegap::oracle::{analyze, gap_report, surrogate_with_offset};
use threegap::predictor::{frequency_trace, frequency_upper_bound, predict, two_gap_set};
use threegap::{AlphaSource, CfExpansion, Scenario};

fn alpha(s: &str) -> CfExpansion {
    s.parse::<AlphaSource>().unwrap().expansion().unwrap()
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn golden_two_gaps_to_1000() {
    let set = two_gap_set(&AlphaSource::golden().expansion().unwrap(), 1000).unwrap();
    assert_eq!(set, [2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987]);
}

#[test]
fn silver_two_gaps_to_30() {
    let set = two_gap_set(&AlphaSource::silver().expansion().unwrap(), 30).unwrap();
    assert_eq!(set, [2, 3, 5, 7, 12, 17, 29]);
}

#[test]
fn sqrt3_family_two_gaps_to_200() {
    let expected = [2, 3, 4, 7, 11, 15, 26, 41, 56, 97, 153];
    for src in ["sqrt3-1", "[0;3,period(1,2)]"] {
        let cf = alpha(src);
        assert_eq!(two_gap_set(&cf, 200).unwrap(), expected, "{src}");
        let brute: Vec<u64> = (1..=200)
            .filter(|&n| gap_report(&cf, n).unwrap().is_two_gap())
            .collect();
        assert_eq!(brute, expected, "{src}");
    }
}

#[test]
fn first_lap_block() {
    let cf = CfExpansion::periodic(vec![4.into()], vec![1.into()]).unwrap();
    assert_eq!(two_gap_set(&cf, 4).unwrap(), [2, 3, 4]);
}

#[test]
fn golden_four_points() {
    let golden = AlphaSource::golden().expansion().unwrap();
    let deep = threegap::oracle::analyze_with(surrogate_with_offset(&golden, 4, 30).unwrap(), 4);
    let lengths: Vec<f64> = deep.report.gaps.iter().map(|g| g.length.to_f64().unwrap()).collect();
    for (got, want) in lengths.iter().zip([0.145898033750, 0.236067977500, 0.381966011250]) {
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }
    assert_eq!(deep.report.multiplicities(), [1, 2, 1]);
    assert_eq!(analyze(&golden, 4).unwrap().permutation.u, [0, 2, 1, 3]);
}

#[test]
fn permutations() {
    let golden = AlphaSource::golden().expansion().unwrap();
    let silver = AlphaSource::silver().expansion().unwrap();
    assert_eq!(analyze(&golden, 5).unwrap().permutation.u, [0, 2, 4, 1, 3]);
    assert_eq!(analyze(&silver, 4).unwrap().permutation.u, [0, 3, 1, 2]);
}

#[test]
fn predictions() {
    let golden = AlphaSource::golden().expansion().unwrap();
    let silver = AlphaSource::silver().expansion().unwrap();

    let p = predict(&golden, 4).unwrap();
    assert_eq!((p.scenario, p.index, p.u2, p.u_last, p.is_two_gap), (Scenario::FirstInterval, 4, Some(2), 3, false));
    let p = predict(&golden, 5).unwrap();
    assert_eq!((p.u2, p.u_last, p.is_two_gap), (Some(2), 3, true));

    let p = predict(&silver, 4).unwrap();
    assert_eq!(
        (p.scenario, p.index, p.sub_index, p.u2, p.u_last, p.is_two_gap),
        (Scenario::SemiconvergentInterval, 2, Some(2), Some(3), 2, false)
    );

    let p = predict(&alpha("[0;3,period(1,2)]"), 2).unwrap();
    assert_eq!((p.scenario, p.u2, p.u_last, p.is_two_gap), (Scenario::FirstLap, Some(1), 1, true));
}

#[test]
fn golden_frequencies() {
    let golden = AlphaSource::golden().expansion().unwrap();
    let trace = frequency_trace(&golden, &[1, 100, 10_000]).unwrap();
    let rows: Vec<_> = trace.rows.iter().map(|r| (r.count, r.ratio.clone())).collect();
    assert_eq!(rows, [(0, ratio(0, 1)), (9, ratio(9, 100)), (18, ratio(18, 10_000))]);
    assert_eq!(frequency_upper_bound(&golden, 100).unwrap(), ratio(10, 100));
    assert_eq!(frequency_upper_bound(&golden, 2).unwrap(), ratio(1, 2));
    let silver = AlphaSource::silver().expansion().unwrap();
    assert_eq!(frequency_upper_bound(&silver, 5).unwrap(), ratio(3, 5));
}

#[test]
fn levy_golden_25() {
    let golden = AlphaSource::golden().expansion().unwrap();
    let v = levy_statistic(&golden, 25).unwrap();
    assert!((v - 0.468272).abs() < 1e-6, "{v}");
    assert!((threegap::metric::LEVY_CONSTANT - 1.1865691104156255).abs() < 1e-15);
}

#[test]
fn rational_sources() {
    let cf = alpha("7/24");
    assert_eq!(cf.head(), [BigInt::from(3), BigInt::from(2), BigInt::from(3)]);
    let s = surrogate_with_offset(&cf, 3, 0).unwrap();
    assert!(s.exact);
    assert_eq!(s.convergent.q, BigInt::from(24));
    assert_eq!(two_gap_set(&cf, 24).unwrap(), [2, 3, 4, 7, 10, 17, 24]);
    assert!(gap_report(&alpha("1/2"), 5).is_err());
}
