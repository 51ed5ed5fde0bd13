use crate::bigreal::BigReal;
use crate::error::{Error, Result};
use crate::orbits::OrbitTable;
use crate::scalar::Real;
use crate::spectral::Classification;

use super::bernoulli::euler_maclaurin_tail;

/// `D(N) = M(N) − log N − C − σ·tail(N, k)` over a sampling range.
#[derive(Clone, Debug)]
pub struct ExpansionReport<T> {
    pub order: usize,
    /// Sign `σ ∈ {+1, −1}` attached to the Bernoulli tail, chosen as the one
    /// giving the smaller `max |D|`.
    pub tail_sign: i8,
    pub c_hat: T,
    pub range: (usize, usize),
    pub deviations: Vec<(usize, T)>,
    pub max_abs_deviation: T,
    /// Set when the table is shorter than 100 terms.
    pub wide_tolerance: bool,
}

/// `(ĉ, deviations, max |deviation|)` for one tail sign.
type SignedDeviations<T> = (T, Vec<(usize, T)>, T);

fn deviations_for_sign<T: Real>(values: &[T], k: usize, sign: i8, range: (usize, usize)) -> Result<SignedDeviations<T>> {
    let n_max = values.len();
    let digits = values[n_max - 1].digits();
    let s = T::from_i64_digits(sign as i64, digits);
    let model = |n: usize| -> Result<T> {
        let tail: T = euler_maclaurin_tail(n as u64, k, digits)?;
        Ok(T::from_i64_digits(n as i64, digits).ln() + s.clone() * tail)
    };
    let c_hat = values[n_max - 1].clone() - model(n_max)?;
    let mut max_abs = T::from_f64_digits(0.0, digits);
    let mut out = Vec::with_capacity(range.1 - range.0 + 1);
    for n in range.0..=range.1 {
        let d = values[n - 1].clone() - model(n)? - c_hat.clone();
        max_abs = max_abs.max_of(d.abs());
        out.push((n, d));
    }
    Ok((c_hat, out, max_abs))
}

/// Compares a series `values[n − 1] = M(n)` against `log N + C + σ·tail(N, k)`.
///
/// `C` is calibrated at the last term. The range is `[min(100, N/2), N]`.
pub fn expansion_check_series<T: Real>(values: &[T], k: usize) -> Result<ExpansionReport<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("Euler–Maclaurin order k must be positive".into()));
    }
    let n_max = values.len();
    if n_max < 2 {
        return Err(Error::InvalidArgument("expansion check needs at least two terms".into()));
    }
    let range = ((n_max / 2).clamp(1, 100), n_max);
    let plus = deviations_for_sign(values, k, 1, range)?;
    let minus = deviations_for_sign(values, k, -1, range)?;
    let (sign, (c_hat, deviations, max_abs_deviation)) = if plus.2 < minus.2 { (1, plus) } else { (-1, minus) };
    Ok(ExpansionReport {
        order: k,
        tail_sign: sign,
        c_hat,
        range,
        deviations,
        max_abs_deviation,
        wide_tolerance: n_max < 100,
    })
}

impl<T: Real> ExpansionReport<T> {
    /// `max |D(N)|` restricted to `lo ≤ N ≤ hi`.
    pub fn max_abs_on(&self, lo: usize, hi: usize) -> T {
        self.deviations
            .iter()
            .filter(|(n, _)| (lo..=hi).contains(n))
            .fold(self.c_hat.lift(0.0), |acc, (_, d)| acc.max_of(d.abs()))
    }
}

pub fn hyperbolic_expansion_check(table: &OrbitTable, k: usize) -> Result<ExpansionReport<BigReal>> {
    if table.classification != Classification::Hyperbolic {
        return Err(Error::InvalidArgument(format!(
            "expansion check requires a hyperbolic table, got {}",
            table.classification.as_str()
        )));
    }
    expansion_check_series(&table.mertens_values(), k)
}
