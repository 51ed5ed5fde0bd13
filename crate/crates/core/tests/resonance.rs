mod common;

use std::collections::BTreeMap;

use common::*;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use toral::resonance::{
    m_cesaro_oracle, m_exact_block, m_sequence, resonance_exact_block, resonance_log_constant, resonance_numeric,
};
use toral::spectral::{classify, spectrum_of_block};
use toral::{BigReal, CharPoly, Real, ResonanceProfile};

const P: u32 = 60;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Enumerates all `2^{2t}` subsets of the unit eigenvalues `e^{±2πiθⱼ}` in
/// floating point and buckets the products by rounded argument.
fn brute_force_k(thetas: &[f64]) -> BTreeMap<i64, i64> {
    let args: Vec<f64> = thetas.iter().flat_map(|&t| [t, -t]).collect();
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << args.len()) {
        let mut phi = 0.0;
        for (i, a) in args.iter().enumerate() {
            if mask & (1 << i) != 0 {
                phi += a;
            }
        }
        let phi = phi.rem_euclid(1.0);
        let key = ((phi * 1e9).round() as i64) % 1_000_000_000;
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        *out.entry(key).or_insert(0) += sign;
    }
    out.retain(|_, k| *k != 0);
    out
}

fn profile_as_map(p: &ResonanceProfile) -> BTreeMap<i64, i64> {
    p.omegas
        .iter()
        .map(|r| (((r.arg.to_f64() * 1e9).round() as i64) % 1_000_000_000, r.k.to_i64().unwrap()))
        .collect()
}

fn check_identities(p: &ResonanceProfile, thetas: &[BigReal]) {
    assert!(p.k_sum().is_zero());
    assert!(p.m >= BigInt::from(1));
    let tol = BigReal::ten_pow_neg(20, P);
    let two_pi = BigReal::pi(P) * BigReal::from_f64(2.0, P);
    for n in 1..=50u64 {
        let nn = BigReal::from_i64_digits(n as i64, P);
        let v = thetas.iter().fold(BigReal::from_f64(1.0, P), |acc, t| {
            acc * (BigReal::from_f64(2.0, P) - BigReal::from_f64(2.0, P) * (two_pi.clone() * t.clone() * nn.clone()).cos())
        });
        let s = p.power_sum(n);
        assert!((s.re - v).abs() < tol, "n = {n}");
        assert!(s.im.abs() < tol);
    }
    for r in &p.omegas {
        let mirror = p
            .omegas
            .iter()
            .find(|q| (q.omega.re.clone() - r.omega.re.clone()).abs() < tol.clone() && (q.omega.im.clone() + r.omega.im.clone()).abs() < tol.clone())
            .expect("conjugate present");
        assert_eq!(mirror.k, r.k);
    }
}

#[test]
fn numeric_profile_matches_subset_enumeration() {
    for powers in [vec![1], vec![1, 1], vec![1, 2], vec![1, 2, 3], vec![2, 3, 3, 5]] {
        let spec = spectrum_of_block(&block(&powers), P).unwrap();
        let oracle = brute_force_k(&spec.unit_args.iter().map(|t| t.to_f64()).collect::<Vec<_>>());
        let profile = resonance_numeric(&spec).unwrap();
        assert_eq!(profile_as_map(&profile), oracle, "{powers:?}");
    }
}

#[test]
fn worked_profiles() {
    let sa = classify(&CharPoly::of(&a()), P).unwrap();
    let pa = resonance_numeric(&sa).unwrap();
    assert_eq!(pa.m, BigInt::from(2));
    check_identities(&pa, &sa.unit_args);
    for powers in [vec![1, 1], vec![1, 2, 3]] {
        let spec = spectrum_of_block(&block(&powers), P).unwrap();
        let p = resonance_numeric(&spec).unwrap();
        assert_eq!(p.m, BigInt::from(6), "{powers:?}");
        check_identities(&p, &spec.unit_args);
        let e = resonance_exact_block(&block(&powers), P).unwrap();
        assert_eq!(e.m, p.m);
        check_identities(&e, &spec.unit_args);
    }
    assert_eq!(m_exact_block(&[1, 2, 3, 5, 7, 8, 11, 13]), BigInt::from(16));
}

#[test]
fn hyperbolic_profile_is_trivial() {
    let s = classify(&CharPoly::of(&golden()), P).unwrap();
    let p = resonance_numeric(&s).unwrap();
    assert_eq!(p.m, BigInt::from(1));
    assert_eq!(p.omegas.len(), 1);
    assert!(resonance_log_constant(&p).unwrap().is_zero_value());
}

#[test]
fn central_binomials() {
    let want = big(&[2, 6, 20, 70, 252, 924, 3432, 12870, 48620, 184756]);
    for t in 1..=10 {
        assert_eq!(m_exact_block(&vec![1; t]), want[t - 1]);
    }
}

#[test]
fn sequence_of_consecutive_powers() {
    let want = big(&[2, 4, 6, 10, 12, 20, 24, 34, 44, 64, 78, 116, 148, 208, 286, 410, 556, 808, 1120, 1620]);
    assert_eq!(m_sequence(20), want);
    assert_eq!(m_sequence(20).last(), Some(&BigInt::from(1620)));
}

#[test]
fn exact_and_numeric_agree_up_to_eight_pairs() {
    for powers in [vec![1, 2, 3, 4, 5, 6, 7, 8], vec![1, 1, 2, 2, 3, 3, 4, 4], vec![3, 5, 8, 13, 21]] {
        let numeric = resonance_numeric(&spectrum_of_block(&block(&powers), P).unwrap()).unwrap();
        assert_eq!(numeric.m, m_exact_block(&powers), "{powers:?}");
    }
}

#[test]
fn cesaro_oracle_converges() {
    let theta = classify(&CharPoly::of(&a()), P).unwrap().unit_args[0].to_f64();
    assert!((m_cesaro_oracle(&[theta], 100_000) - 2.0).abs() < 0.05);
    assert!((m_cesaro_oracle(&[theta, theta], 100_000) - 6.0).abs() < 0.2);
    let one = m_cesaro_oracle(&[theta], 1);
    assert_eq!(one, 2.0 - 2.0 * (std::f64::consts::TAU * theta).cos());
    for (args, m) in [(vec![theta], 2.0), (vec![theta, theta], 6.0), (vec![theta, 2.0 * theta, 3.0 * theta], 6.0)] {
        let errs: Vec<f64> = [1_000, 10_000, 100_000].iter().map(|&n| (m_cesaro_oracle(&args, n) - m).abs()).collect();
        assert!(errs[2] < errs[0], "{args:?}: {errs:?}");
    }
}

#[test]
fn log_constant_matches_partial_sums() {
    // Σ_{n≤N} (V_n − m)/n → −Σ_{ω≠1} K(ω) log(1 − ω).
    for powers in [vec![1], vec![1, 1], vec![1, 2, 3]] {
        let profile = resonance_exact_block(&block(&powers), P).unwrap();
        let c = resonance_log_constant(&profile).unwrap().to_f64();
        let spec = spectrum_of_block(&block(&powers), P).unwrap();
        let thetas: Vec<f64> = spec.unit_args.iter().map(|t| t.to_f64()).collect();
        let m = profile.m.to_f64().unwrap();
        let partial: f64 = (1..=100_000u32)
            .map(|n| {
                let v: f64 = thetas.iter().map(|t| 2.0 - 2.0 * (std::f64::consts::TAU * t * n as f64).cos()).product();
                (v - m) / n as f64
            })
            .sum();
        assert!((partial - c).abs() < 1e-3, "{powers:?}: {partial} vs {c}");
    }
    let pa = resonance_numeric(&classify(&CharPoly::of(&a()), P).unwrap()).unwrap();
    let ca = resonance_log_constant(&pa).unwrap().to_f64();
    assert!((ca - 1.464_101_615_137_754_6_f64.ln()).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_and_scale_invariance(mut powers in prop::collection::vec(1u32..=8, 1..=6), k in 1u32..=4, rot in 0usize..6) {
        let m = m_exact_block(&powers);
        let scaled: Vec<u32> = powers.iter().map(|a| a * k).collect();
        prop_assert_eq!(m_exact_block(&scaled), m.clone());
        let r = rot % powers.len();
        powers.rotate_left(r);
        powers.reverse();
        prop_assert_eq!(m_exact_block(&powers), m);
    }

    #[test]
    fn exact_matches_numeric(powers in prop::collection::vec(1u32..=5, 1..=4)) {
        let numeric = resonance_numeric(&spectrum_of_block(&block(&powers), P).unwrap()).unwrap();
        prop_assert_eq!(numeric.m, m_exact_block(&powers));
    }
}
