use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::laurent::block_generating_poly;
use crate::bigreal::BigReal;
use crate::error::{Error, Result};
use crate::linalg::BlockSpec;
use crate::scalar::Real;
use crate::spectral::{accept_tolerance, ambiguity_band, classify, spectrum_of_block, Classification, HpComplex, Spectrum};
use crate::CharPoly;

pub const MAX_NUMERIC_PAIRS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Numeric,
    ExactBlock,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Numeric => "numeric",
            Method::ExactBlock => "exact_block",
        }
    }
}

/// One point `ω = e^{2πiφ}` of `Ω` with its signed count `K(ω)`.
#[derive(Clone, Debug)]
pub struct Resonance {
    /// `φ ∈ [0, 1)`; `φ = 0` is `ω = 1`.
    pub arg: BigReal,
    pub omega: HpComplex,
    pub k: BigInt,
}

#[derive(Clone, Debug)]
pub struct ResonanceProfile {
    pub t: usize,
    /// Sorted by `φ`; entries with `K = 0` are dropped.
    pub omegas: Vec<Resonance>,
    pub m: BigInt,
    pub method: Method,
    pub precision_digits: u32,
}

fn frac<T: Real>(x: T) -> T {
    let f = x.clone() - x.floor();
    if f >= x.lift(1.0) {
        f - x.lift(1.0)
    } else {
        f
    }
}

/// Signed counts of the sums `Σ_{i∈I} ±θᵢ mod 1`, clustered on the circle.
///
/// Pair `i` contributes the factor `2 − e^{2πiθᵢ} − e^{−2πiθᵢ}`: the empty and
/// full subsets of `{λᵢ, λ̄ᵢ}` give `+1` each at angle `0`, the singletons give
/// `−1` at `±θᵢ`. Folding this in pair by pair with clustering after every step
/// yields the same multiset as enumerating all `2^{2t}` subsets.
///
/// Distances are measured as chord-like `2π·Δφ`; clusters closer than `acc`
/// merge, clusters between `acc` and `band` apart are reported as ambiguous.
pub fn aggregate_arguments<T: Real>(thetas: &[T], acc: &T, band: &T) -> Result<Vec<(T, BigInt)>> {
    let Some(first) = thetas.first() else {
        return Ok(vec![(T::zero(), BigInt::from(1))]);
    };
    let two_pi = T::pi(first.digits()) * first.lift(2.0);
    let mut clusters: Vec<(T, BigInt)> = vec![(first.lift(0.0), BigInt::from(1))];
    for theta in thetas {
        let mut next = Vec::with_capacity(clusters.len() * 3);
        for (phi, k) in &clusters {
            next.push((phi.clone(), k * 2));
            next.push((frac(phi.clone() + theta.clone()), -k.clone()));
            next.push((frac(phi.clone() - theta.clone()), -k.clone()));
        }
        clusters = merge_on_circle(next, &two_pi, acc, band)?;
    }
    Ok(clusters)
}

fn merge_on_circle<T: Real>(mut items: Vec<(T, BigInt)>, two_pi: &T, acc: &T, band: &T) -> Result<Vec<(T, BigInt)>> {
    items.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
    let mut out: Vec<(T, BigInt, T)> = Vec::with_capacity(items.len());
    for (phi, k) in items {
        if let Some(last) = out.last_mut() {
            let gap = (phi.clone() - last.2.clone()) * two_pi.clone();
            if gap <= *acc {
                last.1 += k;
                last.2 = phi;
                continue;
            }
            if gap <= *band {
                return Err(ambiguous(&gap));
            }
        }
        out.push((phi.clone(), k, phi));
    }
    if out.len() > 1 {
        let one = out[0].0.lift(1.0);
        let gap = (out[0].0.clone() + one - out[out.len() - 1].2.clone()) * two_pi.clone();
        if gap <= *acc {
            let (_, k, _) = out.pop().expect("nonempty");
            out[0].1 += k;
        } else if gap <= *band {
            return Err(ambiguous(&gap));
        }
    }
    Ok(out.into_iter().filter(|c| !c.1.is_zero()).map(|(phi, k, _)| (phi, k)).collect())
}

fn ambiguous<T: Real>(gap: &T) -> Error {
    Error::PrecisionAmbiguity(format!(
        "two resonance clusters are {:e} apart, inside the ambiguity band",
        gap.to_f64()
    ))
}

fn unit_point(phi: &BigReal, digits: u32) -> HpComplex {
    let a = BigReal::pi(digits) * BigReal::from_f64(2.0, digits) * phi.clone();
    Complex::new(a.cos(), a.sin())
}

impl ResonanceProfile {
    fn from_clusters(t: usize, clusters: Vec<(BigReal, BigInt)>, method: Method, digits: u32) -> Self {
        let acc = accept_tolerance(digits);
        let two_pi = BigReal::pi(digits) * BigReal::from_f64(2.0, digits);
        let one = BigReal::from_f64(1.0, digits);
        let mut omegas: Vec<Resonance> = clusters
            .into_iter()
            .map(|(phi, k)| {
                let near_zero = phi.clone().min_of(one.clone() - phi.clone()) * two_pi.clone() <= acc;
                let arg = if near_zero { BigReal::from_f64(0.0, digits) } else { phi };
                Resonance {
                    omega: unit_point(&arg, digits),
                    arg,
                    k,
                }
            })
            .collect();
        omegas.sort_by(|a, b| a.arg.partial_cmp(&b.arg).unwrap_or(Ordering::Equal));
        let m = omegas
            .iter()
            .find(|r| r.arg.is_zero_value())
            .map(|r| r.k.clone())
            .unwrap_or_default();
        ResonanceProfile {
            t,
            omegas,
            m,
            method,
            precision_digits: digits,
        }
    }

    fn trivial(digits: u32) -> Self {
        Self::from_clusters(0, vec![(BigReal::from_f64(0.0, digits), BigInt::from(1))], Method::Numeric, digits)
    }

    /// `Σ_ω K(ω)`.
    pub fn k_sum(&self) -> BigInt {
        self.omegas.iter().map(|r| r.k.clone()).sum()
    }

    /// `Σ_ω K(ω)·ωⁿ`.
    pub fn power_sum(&self, n: u64) -> HpComplex {
        let d = self.precision_digits;
        let two_pi_n = BigReal::pi(d) * BigReal::from_f64(2.0, d) * BigReal::from_i64_digits(n as i64, d);
        let zero = Complex::new(BigReal::from_f64(0.0, d), BigReal::from_f64(0.0, d));
        self.omegas.iter().fold(zero, |acc, r| {
            let a = two_pi_n.clone() * r.arg.clone();
            let k = BigReal::from_bigint(&r.k, d);
            acc + Complex::new(k.clone() * a.cos(), k * a.sin())
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.precision_digits;
        let omegas: Vec<serde_json::Value> = self
            .omegas
            .iter()
            .map(|r| {
                serde_json::json!({
                    "omega": [r.omega.re.to_decimal(d), r.omega.im.to_decimal(d)],
                    "K": integer_json(&r.k),
                })
            })
            .collect();
        serde_json::json!({
            "t": self.t,
            "m": integer_json(&self.m),
            "method": self.method.as_str(),
            "precision_digits": d,
            "omegas": omegas,
        })
    }
}

pub(crate) fn integer_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(x.to_string()),
    }
}

/// `Ω` and `K` from the unit-circle arguments of a spectrum.
///
/// Hyperbolic spectra give `Ω = {1}`, `K(1) = m = 1`.
pub fn resonance_numeric(spec: &Spectrum) -> Result<ResonanceProfile> {
    if spec.classification == Classification::NonErgodic {
        return Err(Error::NonErgodic("resonance requires an ergodic spectrum".into()));
    }
    let d = spec.precision_digits;
    if spec.t == 0 {
        return Ok(ResonanceProfile::trivial(d));
    }
    if spec.t > MAX_NUMERIC_PAIRS {
        return Err(Error::TooManyPairs(spec.t, MAX_NUMERIC_PAIRS));
    }
    let clusters = aggregate_arguments(&spec.unit_args, &accept_tolerance(d), &ambiguity_band(d))?;
    Ok(ResonanceProfile::from_clusters(spec.t, clusters, Method::Numeric, d))
}

/// Profile of `⊕ base^{a_k}` from the exact Laurent product
/// `∏ (2 − z^{a_k} − z^{−a_k})`, valid when the base has exactly one unit pair.
///
/// A hyperbolic base gives the trivial profile; a base with several unit
/// pairs falls back to [`resonance_numeric`].
pub fn resonance_exact_block(spec: &BlockSpec, digits: u32) -> Result<ResonanceProfile> {
    let base = classify(&CharPoly::of(spec.base()), digits)?;
    match base.t {
        _ if base.classification == Classification::NonErgodic => {
            Err(Error::NonErgodic("block base has eigenvalues that are roots of unity".into()))
        }
        0 => Ok(ResonanceProfile::trivial(digits)),
        1 => {
            let theta = base.unit_args[0].clone();
            let clusters = block_generating_poly(spec.powers())
                .terms()
                .map(|(e, k)| (frac(theta.clone() * BigReal::from_i64_digits(e, digits)), k.clone()))
                .collect();
            Ok(ResonanceProfile::from_clusters(
                spec.powers().len(),
                clusters,
                Method::ExactBlock,
                digits,
            ))
        }
        _ => resonance_numeric(&spectrum_of_block(spec, digits)?),
    }
}

/// `(1/N) Σ_{n=1}^{N} ∏ᵢ (2 − 2cos(2πθᵢn))`, the Cesàro mean of `V_n`.
pub fn m_cesaro_oracle<T: Real>(unit_args: &[T], n_max: u64) -> T {
    let digits = unit_args.first().map(|x| x.digits()).unwrap_or(15);
    let one = T::from_f64_digits(1.0, digits);
    let two = T::from_f64_digits(2.0, digits);
    let two_pi = T::pi(digits) * two.clone();
    let mut sum = T::from_f64_digits(0.0, digits);
    for n in 1..=n_max {
        let nn = T::from_i64_digits(n as i64, digits);
        let v = unit_args.iter().fold(one.clone(), |acc, theta| {
            let x = frac(theta.clone() * nn.clone());
            acc * (two.clone() - two.clone() * (two_pi.clone() * x).cos())
        });
        sum = sum + v;
    }
    sum / T::from_i64_digits(n_max as i64, digits)
}

/// Real part of `−Σ_{ω≠1} K(ω)·log(1 − ω)`.
pub fn resonance_log_constant(profile: &ResonanceProfile) -> Result<BigReal> {
    let d = profile.precision_digits;
    let acc = accept_tolerance(d);
    let one = BigReal::from_f64(1.0, d);
    let mut re = BigReal::from_f64(0.0, d);
    let mut im = BigReal::from_f64(0.0, d);
    for r in profile.omegas.iter().filter(|r| !r.arg.is_zero_value()) {
        let z = Complex::new(one.clone() - r.omega.re.clone(), -r.omega.im.clone());
        let modulus = z.norm_sqr().sqrt();
        if modulus <= acc {
            return Err(Error::PrecisionAmbiguity(format!(
                "resonance point at argument {} is within tolerance of 1",
                r.arg.to_decimal(20)
            )));
        }
        let k = BigReal::from_bigint(&r.k, d);
        re = re - k.clone() * modulus.ln();
        im = im - k * z.im.atan2(&z.re);
    }
    if im.abs() > BigReal::ten_pow_neg(d / 3, d) {
        return Err(Error::Internal(format!(
            "imaginary part {} of the log constant does not cancel",
            im.to_decimal(10)
        )));
    }
    Ok(re)
}
