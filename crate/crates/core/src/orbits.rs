//! Fixed-point counts, closed-orbit counts, and Mertens partial sums.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{divisors, mobius};
use crate::automorphism::Automorphism;
use crate::bigreal::BigReal;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::scalar::Real;
use crate::spectral::{Classification, Spectrum};

pub const DEFAULT_WORKING_DIGITS: u32 = 60;
pub const MIN_WORKING_DIGITS: u32 = 40;

/// `F_T(n) = |det(Mⁿ − I)|` for an ergodic `M`.
pub fn fix_count(m: &IntMatrix, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let aut = Automorphism::from_matrix(m.clone())?;
    aut.require_ergodic()?;
    let f = m.det_power_minus_identity(n).abs();
    if f.is_zero() {
        return Err(Error::Internal(format!("F({n}) = 0 for an ergodic matrix")));
    }
    Ok(f)
}

/// `O_T(n)`: closed orbits of length exactly `n`.
pub fn orbit_count(m: &IntMatrix, n: u64) -> Result<BigInt> {
    let fix: Vec<BigInt> = divisors(n).into_iter().map(|d| fix_count(m, d)).collect::<Result<_>>()?;
    let sum = divisors(n)
        .iter()
        .zip(&fix)
        .fold(BigInt::zero(), |acc, (&d, f)| acc + BigInt::from(mobius(n / d)) * f);
    exact_quotient(sum, n)
}

fn exact_quotient(sum: BigInt, n: u64) -> Result<BigInt> {
    let (q, r) = sum.div_rem(&BigInt::from(n));
    if !r.is_zero() {
        return Err(Error::Internal(format!("Möbius sum for n = {n} is not divisible by {n}")));
    }
    Ok(q)
}

/// Fixed-point counts `F(1..=n_max)` of an ergodic automorphism.
pub fn fix_counts(aut: &Automorphism, n_max: usize) -> Result<Vec<BigInt>> {
    aut.require_ergodic()?;
    aut.power_minus_identity_dets(n_max)
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            if d.is_zero() {
                Err(Error::Internal(format!("F({}) = 0 for an ergodic automorphism", i + 1)))
            } else {
                Ok(d.abs())
            }
        })
        .collect()
}

/// Möbius inversion of a full prefix `F(1..=N)`.
pub fn orbit_counts_from_fix(fix: &[BigInt]) -> Result<Vec<BigInt>> {
    (1..=fix.len() as u64)
        .map(|n| {
            let sum = divisors(n)
                .into_iter()
                .fold(BigInt::zero(), |acc, d| acc + BigInt::from(mobius(n / d)) * &fix[d as usize - 1]);
            exact_quotient(sum, n)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRow {
    pub n: u64,
    #[serde(serialize_with = "as_decimal")]
    pub fix: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub orbits: BigInt,
    pub mertens: BigReal,
}

fn as_decimal<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Rows `n = 1..=N` of `F`, `O` and `M` for one automorphism.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitTable {
    pub rows: Vec<OrbitRow>,
    pub entropy_h: BigReal,
    pub classification: Classification,
    pub working_digits: u32,
}

impl OrbitTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `M(1), M(2), …` in order.
    pub fn mertens_values(&self) -> Vec<BigReal> {
        self.rows.iter().map(|r| r.mertens.clone()).collect()
    }

    /// The Mertens sum up to `n`; `M(0) = 0`.
    pub fn mertens(&self, n: usize) -> BigReal {
        match n {
            0 => BigReal::from_f64(0.0, self.working_digits),
            _ => self.rows[n - 1].mertens.clone(),
        }
    }

    /// CSV with header `n,F,O,M`.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Internal(e.to_string());
        w.write_record(["n", "F", "O", "M"]).map_err(io)?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                r.fix.to_string(),
                r.orbits.to_string(),
                r.mertens.to_decimal(self.working_digits),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Internal(e.to_string()))
    }
}

/// `M(n) = Σ_{k≤n} O(k)·e^{−hk}` for `n = 1..=n_max`.
///
/// Each term is evaluated as `exp(ln O(k) − h·k)` so nothing overflows.
pub fn mertens_series(aut: &Automorphism, n_max: usize, working_digits: u32) -> Result<OrbitTable> {
    if working_digits < MIN_WORKING_DIGITS {
        return Err(Error::InvalidArgument(format!(
            "working precision must be at least {MIN_WORKING_DIGITS} digits, got {working_digits}"
        )));
    }
    aut.require_ergodic()?;
    let spectrum = aut.spectrum(working_digits)?;
    let inner = working_digits + 10 + (n_max.max(1) as f64).log10().ceil() as u32;
    let h = aut.spectrum(inner)?.entropy_h;
    let fix = fix_counts(aut, n_max)?;
    let orbits = orbit_counts_from_fix(&fix)?;
    let mut acc = BigReal::from_f64(0.0, inner);
    let mut rows = Vec::with_capacity(n_max);
    for (i, (f, o)) in fix.into_iter().zip(orbits).enumerate() {
        let n = i as u64 + 1;
        if o.is_negative() {
            return Err(Error::Internal(format!("O({n}) is negative")));
        }
        if !o.is_zero() {
            let exponent = BigReal::ln_bigint(&o, inner) - h.clone() * BigReal::from_i64_digits(n as i64, inner);
            acc = acc + exponent.exp();
        }
        rows.push(OrbitRow {
            n,
            fix: f,
            orbits: o,
            mertens: acc.with_digits(working_digits),
        });
    }
    Ok(OrbitTable {
        rows,
        entropy_h: spectrum.entropy_h,
        classification: spectrum.classification,
        working_digits,
    })
}

/// `E_n = |F(n)/|Λ|ⁿ − V_n|` for `n = 1..=fix.len()`, at the spectrum's precision.
///
/// The deviation decays like `κ^{−n}`, so resolving it up to `n` needs about
/// `n·log₁₀ κ` digits beyond the target accuracy.
pub fn decay_deviations(spectrum: &Spectrum, fix: &[BigInt]) -> Vec<BigReal> {
    let d = spectrum.precision_digits;
    let mut lambda_pow = BigReal::from_f64(1.0, d);
    fix.iter()
        .enumerate()
        .map(|(i, f)| {
            lambda_pow = lambda_pow.clone() * spectrum.lambda_abs.clone();
            let ratio = BigReal::from_bigint(f, d) / lambda_pow.clone();
            (ratio - spectrum.almost_periodic_factor(i as u64 + 1)).abs()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    }

    fn a() -> IntMatrix {
        m(&[&[0, 0, 0, -1], &[1, 0, 0, 8], &[0, 1, 0, -6], &[0, 0, 1, 8]])
    }

    #[test]
    fn fix_and_orbit_counts_of_a() {
        let a = a();
        assert_eq!(fix_count(&a, 1).unwrap(), BigInt::from(8));
        assert_eq!(fix_count(&a, 3).unwrap(), BigInt::from(1352));
        assert_eq!(orbit_count(&a, 2).unwrap(), BigInt::from(92));
        assert_eq!(orbit_count(&a, 3).unwrap(), BigInt::from(448));
    }

    #[test]
    fn golden_mean_counts() {
        let g = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(fix_count(&g, 2).unwrap(), BigInt::from(5));
        assert_eq!(orbit_count(&g, 2).unwrap(), BigInt::from(2));
    }

    #[test]
    fn rotation_is_rejected() {
        let r = m(&[&[0, -1], &[1, 0]]);
        assert!(matches!(fix_count(&r, 1), Err(Error::NonErgodic(_))));
    }

    #[test]
    fn first_mertens_terms() {
        let t = mertens_series(&Automorphism::from_matrix(a()).unwrap(), 2, 60).unwrap();
        assert!((t.rows[0].mertens.to_f64() - 1.091_757_901_292_857_5).abs() < 1e-11);
        assert!((t.rows[1].mertens.to_f64() - 2.805_164_916_656_223).abs() < 1e-11);
    }

    #[test]
    fn deviation_decays() {
        let aut = Automorphism::from_matrix(a()).unwrap();
        let spec = aut.spectrum(80).unwrap();
        let e = decay_deviations(&spec, &fix_counts(&aut, 30).unwrap());
        let kappa = spec.kappa.clone().unwrap().to_f64();
        for n in 10..30 {
            let scaled = e[n - 1].to_f64() * kappa.powi(n as i32);
            assert!(scaled < 10.0, "n = {n}: {scaled}");
        }
    }

    #[test]
    fn empty_table() {
        let t = mertens_series(&Automorphism::from_matrix(a()).unwrap(), 0, 60).unwrap();
        assert!(t.is_empty());
        assert!(t.mertens(0).is_zero_value());
    }

    #[test]
    fn csv_layout() {
        let t = mertens_series(&Automorphism::from_matrix(a()).unwrap(), 3, 40).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,F,O,M");
        assert!(lines[3].starts_with("3,1352,448,"));
    }
}
