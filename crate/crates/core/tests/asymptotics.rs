mod common;

use std::sync::OnceLock;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use toral::asymptotics::{
    euler_maclaurin_tail_exact, expansion_check_series, fit_mertens, fit_series, hyperbolic_expansion_check,
    oscillation_report, oscillation_series, FitMethod,
};
use toral::orbits::mertens_series;
use toral::resonance::m_exact_block;
use toral::{Automorphism, BigReal, OrbitTable, Real};

fn table_a() -> &'static OrbitTable {
    static T: OnceLock<OrbitTable> = OnceLock::new();
    T.get_or_init(|| mertens_series(&Automorphism::from_matrix(a()).unwrap(), 2000, 60).unwrap())
}

fn table_golden() -> &'static OrbitTable {
    static T: OnceLock<OrbitTable> = OnceLock::new();
    T.get_or_init(|| mertens_series(&Automorphism::from_matrix(golden()).unwrap(), 2000, 60).unwrap())
}

fn block_table(powers: &[u32]) -> OrbitTable {
    mertens_series(&Automorphism::from_block(block(powers)).unwrap(), 2000, 60).unwrap()
}

#[test]
fn worked_examples_fit_within_five_percent() {
    let mut cases: Vec<(OrbitTable, f64)> = vec![(table_a().clone(), 2.0)];
    for powers in [vec![1u32, 1], vec![1, 2, 3]] {
        let m = m_exact_block(&powers);
        cases.push((block_table(&powers), m.to_string().parse().unwrap()));
    }
    for (table, m) in &cases {
        let fit = fit_mertens(table, (500, 2000), FitMethod::TwoPoint).unwrap();
        let m_hat = fit.m_hat.to_f64();
        assert!((m_hat - m).abs() <= 0.05 * m, "m = {m}: m_hat = {m_hat}");
        let (lower, upper) = fit.half_window_maxima();
        assert!(upper <= lower, "m = {m}: residual halves {} {}", lower.to_f64(), upper.to_f64());
        assert_eq!(fit.residuals.len(), 1501);
    }
}

#[test]
fn hyperbolic_fit() {
    let fit = fit_mertens(table_golden(), (500, 2000), FitMethod::TwoPoint).unwrap();
    assert!((fit.m_hat.to_f64() - 1.0).abs() < 0.01);
    let ls = fit_mertens(table_golden(), (500, 2000), FitMethod::LeastSquares).unwrap();
    assert!((ls.m_hat.to_f64() - 1.0).abs() < 0.01);
}

#[test]
fn oscillation_for_a() {
    let fit = fit_mertens(table_a(), (100, 2000), FitMethod::TwoPoint).unwrap();
    let r = oscillation_report(table_a(), &fit);
    assert_eq!(r.m_int, 2);
    assert!(r.bounded);
    assert!(r.direction_changes >= 1);
    assert!(r.direction_changes_upper >= 1);
    assert!(!r.no_oscillation_detectable);
}

#[test]
fn oscillation_for_hyperbolic_input_is_flat() {
    let fit = fit_mertens(table_golden(), (500, 2000), FitMethod::TwoPoint).unwrap();
    let r = oscillation_report(table_golden(), &fit);
    for (_, x) in &r.scaled {
        assert!((x.to_f64() - 0.5).abs() < 2e-3);
    }
}

#[test]
fn euler_maclaurin_on_golden_mean() {
    let values: Vec<BigReal> = table_golden().mertens_values().into_iter().take(1000).collect();
    let k1 = expansion_check_series(&values, 1).unwrap();
    let k2 = expansion_check_series(&values, 2).unwrap();
    assert!(k2.max_abs_on(100, 1000) < k1.max_abs_on(100, 1000));
    assert_eq!(k1.tail_sign, -1);
    assert!(!k1.wide_tolerance);

    let short = mertens_series(&Automorphism::from_matrix(golden()).unwrap(), 20, 60).unwrap();
    let r = hyperbolic_expansion_check(&short, 1).unwrap();
    assert!(r.wide_tolerance);
    assert!(hyperbolic_expansion_check(table_a(), 1).is_err());
}

#[test]
fn harmonic_expansion_in_high_precision() {
    let mut acc = BigReal::from_f64(0.0, 60);
    let h: Vec<BigReal> = (1..=1000)
        .map(|j| {
            acc = acc.clone() + BigReal::from_f64(1.0, 60) / BigReal::from_i64_digits(j, 60);
            acc.clone()
        })
        .collect();
    let r = expansion_check_series(&h, 3).unwrap();
    let gamma = BigReal::parse("0.57721566490153286060651209008240243104215933593992", 60).unwrap();
    assert!((r.c_hat.clone() - gamma).abs() < BigReal::ten_pow_neg(8, 60));
    assert!(r.max_abs_deviation < BigReal::ten_pow_neg(8, 60));
}

#[test]
fn exact_bernoulli_tail() {
    assert_eq!(
        euler_maclaurin_tail_exact(1, 2).unwrap(),
        BigRational::new(BigInt::from(-5), BigInt::from(12))
    );
}

#[test]
fn synthetic_model_high_precision() {
    let d = 60;
    let m = BigReal::parse("2.718281828459045235360287471352662497757", d).unwrap();
    let c = BigReal::parse("-1.414213562373095048801688724209698078569", d).unwrap();
    let v: Vec<BigReal> = (1..=800).map(|n| m.clone() * BigReal::from_i64_digits(n, d).ln() + c.clone()).collect();
    let fit = fit_series(&v, (200, 800), FitMethod::LeastSquares).unwrap();
    assert!((fit.m_hat.clone() - m).abs() < BigReal::ten_pow_neg(40, d));
    assert!((fit.c_hat.clone() - c.clone()).abs() < BigReal::ten_pow_neg(40, d));

    let three = BigReal::from_f64(3.0, d);
    let v: Vec<BigReal> = (1..=800).map(|n| three.clone() * BigReal::from_i64_digits(n, d).ln() + c.clone()).collect();
    let fit = fit_series(&v, (200, 800), FitMethod::TwoPoint).unwrap();
    let r = oscillation_series(&v, &fit);
    assert_eq!(r.m_int, 3);
    assert!(r.no_oscillation_detectable);
}

proptest! {
    #[test]
    fn synthetic_recovery(m in 0.5f64..8.0, c in -10.0f64..10.0, lo in 10usize..200, two_point in any::<bool>()) {
        let hi = 4 * lo;
        let v: Vec<f64> = (1..=hi).map(|n| m * (n as f64).ln() + c).collect();
        let method = if two_point { FitMethod::TwoPoint } else { FitMethod::LeastSquares };
        let fit = fit_series(&v, (lo, hi), method).unwrap();
        prop_assert!(((fit.m_hat - m) / m).abs() < 1e-10);
        prop_assert!((fit.c_hat - c).abs() < 1e-10 * c.abs().max(1.0));
    }
}
