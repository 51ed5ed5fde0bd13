use crate::bigreal::BigReal;
use crate::orbits::OrbitTable;
use crate::scalar::Real;

use super::fit::MertensFit;

/// Raw residuals below this are treated as an exact fit.
pub const EXACT_FIT_THRESHOLD: f64 = 1e-12;

/// Behaviour of `n·(M(n) − m·log n − C)` over the fit window.
#[derive(Clone, Debug)]
pub struct OscillationReport<T> {
    /// `round(m̂)`.
    pub m_int: i64,
    /// `C` from least squares of `M(n) − m·log n` on `{1, 1/n}`.
    pub c_hat: T,
    /// Coefficient of `1/n` in the same regression.
    pub one_over_n: T,
    pub scaled: Vec<(usize, T)>,
    pub max_abs: T,
    pub median_abs: T,
    /// `max ≤ 10·median`.
    pub bounded: bool,
    pub sign_changes: usize,
    /// Local extrema of the scaled sequence.
    pub direction_changes: usize,
    /// Local extrema in the upper half of the window.
    pub direction_changes_upper: usize,
    pub no_oscillation_detectable: bool,
}

/// Solves the 2×2 normal equations for `y ≈ c + b/n`.
fn fit_constant_and_inverse<T: Real>(ns: &[usize], ys: &[T]) -> (T, T) {
    let digits = ys[0].digits();
    let zero = T::from_f64_digits(0.0, digits);
    let one = T::from_f64_digits(1.0, digits);
    let (mut s1, mut su, mut suu, mut sy, mut suy) = (zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero);
    for (&n, y) in ns.iter().zip(ys) {
        let u = one.clone() / T::from_i64_digits(n as i64, digits);
        s1 = s1 + one.clone();
        su = su + u.clone();
        suu = suu + u.clone() * u.clone();
        sy = sy + y.clone();
        suy = suy + u * y.clone();
    }
    let det = s1.clone() * suu.clone() - su.clone() * su.clone();
    let c = (suu * sy.clone() - su.clone() * suy.clone()) / det.clone();
    let b = (s1 * suy - su * sy) / det;
    (c, b)
}

fn count_direction_changes<T: Real>(xs: &[T]) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for w in xs.windows(2) {
        let d = w[1].clone() - w[0].clone();
        if d.is_zero() {
            continue;
        }
        let up = d > T::zero();
        if last.is_some_and(|prev| prev != up) {
            changes += 1;
        }
        last = Some(up);
    }
    changes
}

/// Oscillation diagnostics for a series `values[n − 1] = M(n)` and its fit.
pub fn oscillation_series<T: Real>(values: &[T], fit: &MertensFit<T>) -> OscillationReport<T> {
    let (lo, hi) = fit.window;
    let digits = values[hi - 1].digits();
    let m_int = fit.m_hat.to_f64().round() as i64;
    let m = T::from_i64_digits(m_int, digits);
    let ns: Vec<usize> = (lo..=hi).collect();
    let ys: Vec<T> = ns
        .iter()
        .map(|&n| values[n - 1].clone() - m.clone() * T::from_i64_digits(n as i64, digits).ln())
        .collect();
    let (c_hat, one_over_n) = fit_constant_and_inverse(&ns, &ys);
    let raw: Vec<T> = ys.iter().map(|y| y.clone() - c_hat.clone()).collect();
    let scaled_vals: Vec<T> = ns
        .iter()
        .zip(&raw)
        .map(|(&n, r)| r.clone() * T::from_i64_digits(n as i64, digits))
        .collect();
    let max_raw = raw.iter().fold(T::zero(), |a, r| a.max_of(r.abs()));
    let mut abs: Vec<T> = scaled_vals.iter().map(|x| x.abs()).collect();
    abs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let median_abs = abs[abs.len() / 2].clone();
    let max_abs = abs[abs.len() - 1].clone();
    let bounded = max_abs <= median_abs.clone() * T::from_f64_digits(10.0, digits);
    let sign_changes = scaled_vals
        .windows(2)
        .filter(|w| (w[0] > T::zero()) != (w[1] > T::zero()))
        .count();
    let direction_changes = count_direction_changes(&scaled_vals);
    let mid = scaled_vals.len() / 2;
    let direction_changes_upper = count_direction_changes(&scaled_vals[mid..]);
    OscillationReport {
        m_int,
        c_hat,
        one_over_n,
        scaled: ns.into_iter().zip(scaled_vals).collect(),
        max_abs,
        median_abs,
        bounded,
        sign_changes,
        direction_changes,
        direction_changes_upper,
        no_oscillation_detectable: max_raw.to_f64() <= EXACT_FIT_THRESHOLD,
    }
}

pub fn oscillation_report(table: &OrbitTable, fit: &MertensFit<BigReal>) -> OscillationReport<BigReal> {
    oscillation_series(&table.mertens_values(), fit)
}
