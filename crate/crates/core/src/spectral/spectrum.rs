use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::roots::{aberth, cabs, initial_guesses};
use crate::bigreal::BigReal;
use crate::error::{Error, Result};
use crate::linalg::{root_of_unity_orders, BlockSpec, CharPoly, IntPoly};
use crate::scalar::Real;

pub const DEFAULT_PRECISION: u32 = 60;
pub const MIN_PRECISION: u32 = 30;

pub type HpComplex = Complex<BigReal>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Hyperbolic,
    Quasihyperbolic,
    NonErgodic,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Hyperbolic => "hyperbolic",
            Classification::Quasihyperbolic => "quasihyperbolic",
            Classification::NonErgodic => "non_ergodic",
        }
    }

    pub fn is_ergodic(&self) -> bool {
        !matches!(self, Classification::NonErgodic)
    }
}

/// An eigenvalue with its algebraic multiplicity.
#[derive(Clone, Debug)]
pub struct Root {
    pub value: HpComplex,
    pub multiplicity: u32,
}

impl Root {
    pub fn modulus(&self) -> BigReal {
        cabs(&self.value)
    }
}

/// Eigenvalue data and the invariants derived from it.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Sorted by decreasing modulus, ties by decreasing imaginary part.
    pub roots: Vec<Root>,
    /// Eigenvalues outside the unit circle, with multiplicity.
    pub s: usize,
    /// Unit-modulus conjugate pairs, with multiplicity.
    pub t: usize,
    pub entropy_h: BigReal,
    pub lambda_abs: BigReal,
    /// `min{|λ_s|, |λ_{s+2t+1}|⁻¹}`; absent when no eigenvalue lies outside the circle.
    pub kappa: Option<BigReal>,
    pub rate_r: Option<BigReal>,
    /// One `θ ∈ (0, 1/2)` per unit pair, eigenvalues `e^{±2πiθ}`.
    pub unit_args: Vec<BigReal>,
    pub classification: Classification,
    /// Orders `k` with `Φ_k` dividing the characteristic polynomial.
    pub root_of_unity_orders: Vec<u64>,
    pub precision_digits: u32,
}

/// `10^{−P/2}`: two values closer than this are treated as equal.
pub fn accept_tolerance(digits: u32) -> BigReal {
    BigReal::ten_pow_neg(digits / 2, digits)
}

/// `10^{−P/4}`: separations between this and the accept tolerance are ambiguous.
pub fn ambiguity_band(digits: u32) -> BigReal {
    BigReal::ten_pow_neg(digits / 4, digits)
}

fn check_precision(digits: u32) -> Result<()> {
    if digits < MIN_PRECISION {
        return Err(Error::InvalidArgument(format!(
            "precision must be at least {MIN_PRECISION} digits, got {digits}"
        )));
    }
    Ok(())
}

fn hp(x: f64, digits: u32) -> BigReal {
    BigReal::from_f64(x, digits)
}

fn roots_of_square_free(q: &IntPoly, digits: u32) -> Result<Vec<HpComplex>> {
    let deg = q.degree().unwrap_or(0);
    let coeffs: Vec<BigReal> = q.coeffs().iter().map(|c| BigReal::from_bigint(c, digits)).collect();
    if deg == 1 {
        let r = -(coeffs[0].clone() / coeffs[1].clone());
        return Ok(vec![Complex::new(r, hp(0.0, digits))]);
    }
    let fc: Vec<f64> = q.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let seeds: Vec<HpComplex> = if fc.iter().all(|c| c.is_finite()) {
        let r = aberth(&fc, initial_guesses(&fc, 15), &1e-13, 500);
        r.roots
            .into_iter()
            .map(|z| Complex::new(hp(z.re, digits), hp(z.im, digits)))
            .collect()
    } else {
        Vec::new()
    };
    let seeds = if seeds.len() == deg && seeds.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        seeds
    } else {
        initial_guesses(&coeffs, digits)
    };
    let tol = BigReal::ten_pow_neg(digits + 2, digits);
    let refined = aberth(&coeffs, seeds, &tol, 500);
    if !refined.converged {
        return Err(Error::NoConvergence { poly: q.to_string() });
    }
    Ok(refined.roots)
}

/// Pairs every non-real root with its nearest conjugate partner and makes the
/// pair exactly conjugate; near-real roots become real.
fn symmetrize(mut roots: Vec<HpComplex>, digits: u32, poly: &IntPoly) -> Result<Vec<HpComplex>> {
    let tol = accept_tolerance(digits);
    let zero = hp(0.0, digits);
    let mut out = Vec::with_capacity(roots.len());
    while let Some(z) = roots.pop() {
        if z.im.abs() <= tol {
            out.push(Complex::new(z.re, zero.clone()));
            continue;
        }
        let target = z.conj();
        let (idx, dist) = roots
            .iter()
            .enumerate()
            .map(|(i, w)| (i, cabs(&(w.clone() - target.clone()))))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal))
            .ok_or_else(|| Error::Internal(format!("unpaired complex root of {poly}")))?;
        if dist > tol {
            return Err(Error::PrecisionAmbiguity(format!(
                "root {z:?} of {poly} has no conjugate within tolerance"
            )));
        }
        let w = roots.swap_remove(idx);
        let two = hp(2.0, digits);
        let re = (z.re.clone() + w.re.clone()) / two.clone();
        let im = (z.im.clone().abs() + w.im.clone().abs()) / two;
        out.push(Complex::new(re.clone(), im.clone()));
        out.push(Complex::new(re, -im));
    }
    Ok(out)
}

fn order_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| {
        b.modulus()
            .partial_cmp(&a.modulus())
            .unwrap_or(Ordering::Equal)
            .then(b.value.im.partial_cmp(&a.value.im).unwrap_or(Ordering::Equal))
    });
}

/// All eigenvalues of `p` with multiplicities, at `digits` significant digits.
///
/// Multiplicities come from an exact square-free decomposition; each
/// square-free factor is solved separately.
pub fn find_roots(p: &CharPoly, digits: u32) -> Result<Vec<Root>> {
    check_precision(digits)?;
    let mut out = Vec::new();
    for (factor, mult) in p.poly().square_free_decomposition() {
        let roots = symmetrize(roots_of_square_free(&factor, digits)?, digits, &factor)?;
        out.extend(roots.into_iter().map(|value| Root {
            value,
            multiplicity: mult,
        }));
    }
    order_roots(&mut out);
    Ok(out)
}

/// Folds `x mod 1` into `[0, 1/2]`, the argument of the upper eigenvalue of a pair.
pub fn fold_unit_arg(x: &BigReal) -> BigReal {
    let frac = x.clone() - x.floor();
    let half = x.lift(0.5);
    if frac > half {
        x.lift(1.0) - frac
    } else {
        frac
    }
}

impl Spectrum {
    fn assemble(
        roots: Vec<Root>,
        orders: Vec<u64>,
        unit_args: Option<Vec<BigReal>>,
        digits: u32,
    ) -> Result<Spectrum> {
        let acc = accept_tolerance(digits);
        let band = ambiguity_band(digits);
        let one = hp(1.0, digits);
        let two_pi = BigReal::pi(digits) * hp(2.0, digits);

        let mut s = 0usize;
        let mut upper = 0usize;
        let mut lower = 0usize;
        let mut entropy = hp(0.0, digits);
        let mut lambda_abs = hp(1.0, digits);
        let mut min_outside: Option<BigReal> = None;
        let mut min_inside_inv: Option<BigReal> = None;
        let mut args = Vec::new();
        for r in &roots {
            let m = r.modulus();
            let gap = (m.clone() - one.clone()).abs();
            let mult = r.multiplicity as usize;
            if gap <= acc {
                if r.value.im.abs() <= acc {
                    if orders.is_empty() {
                        return Err(Error::PrecisionAmbiguity(format!(
                            "real eigenvalue {:?} lies on the unit circle but no cyclotomic factor divides the polynomial",
                            r.value.re
                        )));
                    }
                } else if r.value.im > BigReal::zero() {
                    upper += mult;
                    let theta = r.value.im.atan2(&r.value.re) / two_pi.clone();
                    args.extend(std::iter::repeat_n(theta, mult));
                } else {
                    lower += mult;
                }
            } else if gap <= band {
                return Err(Error::PrecisionAmbiguity(format!(
                    "eigenvalue modulus {m:?} is within 10^-{} of 1 but not within 10^-{}",
                    digits / 4,
                    digits / 2
                )));
            } else if m > one {
                s += mult;
                for _ in 0..mult {
                    entropy = entropy + m.ln();
                    lambda_abs = lambda_abs * m.clone();
                }
                min_outside = Some(match min_outside {
                    None => m.clone(),
                    Some(v) => v.min_of(m.clone()),
                });
            } else {
                let inv = one.clone() / m.clone();
                min_inside_inv = Some(match min_inside_inv {
                    None => inv,
                    Some(v) => v.min_of(inv),
                });
            }
        }
        if upper != lower {
            return Err(Error::Internal(format!(
                "unit-circle eigenvalues are not closed under conjugation ({upper} above, {lower} below)"
            )));
        }
        let kappa = min_outside.map(|o| match min_inside_inv {
            Some(i) => o.min_of(i),
            None => o,
        });
        let rate_r = kappa.as_ref().map(|k| k.clone().min_of(lambda_abs.sqrt()));
        let t = upper;
        let classification = if !orders.is_empty() || s == 0 {
            Classification::NonErgodic
        } else if t == 0 {
            Classification::Hyperbolic
        } else {
            Classification::Quasihyperbolic
        };
        let unit_args = match unit_args {
            Some(given) => given,
            None => {
                args.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
                args
            }
        };
        Ok(Spectrum {
            roots,
            s,
            t,
            entropy_h: entropy,
            lambda_abs,
            kappa,
            rate_r,
            unit_args,
            classification,
            root_of_unity_orders: orders,
            precision_digits: digits,
        })
    }

    pub fn dim(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity as usize).sum()
    }

    /// The `2t` unit-modulus eigenvalues, repeated by multiplicity.
    pub fn unit_eigenvalues(&self) -> Vec<HpComplex> {
        let two_pi = BigReal::pi(self.precision_digits) * hp(2.0, self.precision_digits);
        let mut out = Vec::with_capacity(2 * self.t);
        for theta in &self.unit_args {
            let phi = two_pi.clone() * theta.clone();
            let (c, s) = (phi.cos(), phi.sin());
            out.push(Complex::new(c.clone(), s.clone()));
            out.push(Complex::new(c, -s));
        }
        out
    }

    /// `V_n = ∏ (2 − 2cos(2πθᵢn))` at the spectrum's precision.
    pub fn almost_periodic_factor(&self, n: u64) -> BigReal {
        let d = self.precision_digits;
        let two = hp(2.0, d);
        let two_pi_n = BigReal::pi(d) * two.clone() * BigReal::from_i64_digits(n as i64, d);
        self.unit_args.iter().fold(hp(1.0, d), |acc, theta| {
            acc * (two.clone() - two.clone() * (two_pi_n.clone() * theta.clone()).cos())
        })
    }

    /// `∏ |λᵢⁿ − 1|` over all eigenvalues with multiplicity.
    pub fn fixed_point_estimate(&self, n: u64) -> BigReal {
        let d = self.precision_digits;
        let one = Complex::new(hp(1.0, d), hp(0.0, d));
        self.roots.iter().fold(hp(1.0, d), |acc, r| {
            let z = complex_pow(&r.value, n) - one.clone();
            let m = cabs(&z);
            (0..r.multiplicity).fold(acc, |a, _| a * m.clone())
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.precision_digits;
        let roots: Vec<serde_json::Value> = self
            .roots
            .iter()
            .map(|r| {
                serde_json::json!([r.value.re.to_decimal(d), r.value.im.to_decimal(d), r.multiplicity.to_string()])
            })
            .collect();
        serde_json::json!({
            "classification": self.classification.as_str(),
            "precision_digits": d,
            "dim": self.dim(),
            "s": self.s,
            "t": self.t,
            "entropy_h": self.entropy_h.to_decimal(d),
            "lambda_abs": self.lambda_abs.to_decimal(d),
            "kappa": self.kappa.as_ref().map(|k| k.to_decimal(d)),
            "rate_r": self.rate_r.as_ref().map(|k| k.to_decimal(d)),
            "unit_args": self.unit_args.iter().map(|t| t.to_decimal(d)).collect::<Vec<_>>(),
            "root_of_unity_orders": self.root_of_unity_orders,
            "roots": roots,
        })
    }
}

pub(crate) fn complex_pow(z: &HpComplex, mut n: u64) -> HpComplex {
    let d = z.re.digits();
    let mut result = Complex::new(hp(1.0, d), hp(0.0, d));
    let mut base = z.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = result * base.clone();
        }
        n >>= 1;
        if n > 0 {
            base = base.clone() * base;
        }
    }
    result
}

/// Full spectral classification of a characteristic polynomial.
///
/// Ergodicity is decided exactly (cyclotomic divisibility); unit-circle
/// membership numerically at `10^{−P/2}` with an ambiguity band at `10^{−P/4}`.
pub fn classify(p: &CharPoly, digits: u32) -> Result<Spectrum> {
    check_precision(digits)?;
    let orders = root_of_unity_orders(p.poly());
    let roots = find_roots(p, digits)?;
    Spectrum::assemble(roots, orders, None, digits)
}

/// Spectrum of `⊕ base^{a_k}` from the spectrum of `base`: each eigenvalue
/// `λ` contributes `λ^{a_k}`, and each unit argument `θ` contributes `a_k·θ`
/// folded into `(0, 1/2)`.
pub fn spectrum_of_block(spec: &BlockSpec, digits: u32) -> Result<Spectrum> {
    let base = classify(&CharPoly::of(spec.base()), digits)?;
    if !base.classification.is_ergodic() {
        return Err(Error::NonErgodic(format!(
            "block base has eigenvalues that are roots of unity (orders {:?})",
            base.root_of_unity_orders
        )));
    }
    let acc = accept_tolerance(digits);
    let mut merged: Vec<Root> = Vec::new();
    for &a in spec.powers() {
        for r in &base.roots {
            let z = complex_pow(&r.value, a as u64);
            match merged.iter_mut().find(|m| cabs(&(m.value.clone() - z.clone())) <= acc) {
                Some(m) => m.multiplicity += r.multiplicity,
                None => merged.push(Root {
                    value: z,
                    multiplicity: r.multiplicity,
                }),
            }
        }
    }
    order_roots(&mut merged);
    let mut args = Vec::with_capacity(spec.powers().len() * base.t);
    for &a in spec.powers() {
        let scale = BigReal::from_i64_digits(a as i64, digits);
        args.extend(base.unit_args.iter().map(|theta| fold_unit_arg(&(theta.clone() * scale.clone()))));
    }
    let s = Spectrum::assemble(merged, Vec::new(), Some(args), digits)?;
    debug_assert_eq!(s.t, spec.powers().len() * base.t);
    Ok(s)
}
