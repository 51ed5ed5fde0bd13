use serde::Serialize;

use crate::bigreal::BigReal;
use crate::error::{Error, Result};
use crate::orbits::OrbitTable;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    #[default]
    TwoPoint,
    LeastSquares,
}

impl FitMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            FitMethod::TwoPoint => "two_point",
            FitMethod::LeastSquares => "least_squares",
        }
    }
}

/// `M(n) ≈ m̂·log n + Ĉ` over a window.
#[derive(Clone, Debug)]
pub struct MertensFit<T> {
    pub m_hat: T,
    pub c_hat: T,
    pub window: (usize, usize),
    /// `(n, M(n) − m̂·log n − Ĉ)` for every `n` in the window.
    pub residuals: Vec<(usize, T)>,
    pub method: FitMethod,
}

impl<T: Real> MertensFit<T> {
    /// Largest `|residual|` over the lower and the upper half of the window.
    pub fn half_window_maxima(&self) -> (T, T) {
        let mid = (self.window.0 + self.window.1) / 2;
        let zero = self.m_hat.lift(0.0);
        let mut lo = zero.clone();
        let mut hi = zero;
        for (n, r) in &self.residuals {
            if *n <= mid {
                lo = lo.max_of(r.abs());
            } else {
                hi = hi.max_of(r.abs());
            }
        }
        (lo, hi)
    }

    pub fn max_abs_residual(&self) -> T {
        let (a, b) = self.half_window_maxima();
        a.max_of(b)
    }
}

/// `(N/4, N)`.
pub fn default_window(n_max: usize) -> (usize, usize) {
    (n_max / 4, n_max)
}

pub fn check_window(window: (usize, usize), len: usize) -> Result<()> {
    let (lo, hi) = window;
    let bad = |reason: &str| {
        Err(Error::InvalidWindow {
            lo,
            hi,
            reason: reason.into(),
        })
    };
    if lo < 10 {
        return bad("lower end must be at least 10");
    }
    if hi > len {
        return bad(&format!("upper end exceeds the table length {len}"));
    }
    if hi < 2 * lo {
        return bad("window too small: upper end must be at least twice the lower end");
    }
    Ok(())
}

/// Fits a Mertens series given as `values[n − 1] = M(n)`.
pub fn fit_series<T: Real>(values: &[T], window: (usize, usize), method: FitMethod) -> Result<MertensFit<T>> {
    check_window(window, values.len())?;
    let (lo, hi) = window;
    let digits = values[hi - 1].digits();
    let ln = |n: usize| T::from_i64_digits(n as i64, digits).ln();
    let m_hat = match method {
        FitMethod::TwoPoint => (values[hi - 1].clone() - values[lo - 1].clone()) / (ln(hi) - ln(lo)),
        FitMethod::LeastSquares => {
            let count = T::from_i64_digits((hi - lo + 1) as i64, digits);
            let xs: Vec<T> = (lo..=hi).map(ln).collect();
            let x_mean = xs.iter().fold(T::zero(), |a, x| a + x.clone()) / count.clone();
            let y_mean = values[lo - 1..hi].iter().fold(T::zero(), |a, y| a + y.clone()) / count;
            let (mut sxy, mut sxx) = (T::zero(), T::zero());
            for (x, y) in xs.iter().zip(&values[lo - 1..hi]) {
                let dx = x.clone() - x_mean.clone();
                sxy = sxy + dx.clone() * (y.clone() - y_mean.clone());
                sxx = sxx + dx.clone() * dx;
            }
            sxy / sxx
        }
    };
    if !m_hat.is_finite() {
        return Err(Error::Internal("fitted slope is not finite".into()));
    }
    let offsets: Vec<T> = (lo..=hi).map(|n| values[n - 1].clone() - m_hat.clone() * ln(n)).collect();
    let c_hat = offsets.iter().fold(T::zero(), |a, x| a + x.clone()) / T::from_i64_digits(offsets.len() as i64, digits);
    let residuals = (lo..=hi).zip(offsets).map(|(n, o)| (n, o - c_hat.clone())).collect();
    Ok(MertensFit {
        m_hat,
        c_hat,
        window,
        residuals,
        method,
    })
}

pub fn fit_mertens(table: &OrbitTable, window: (usize, usize), method: FitMethod) -> Result<MertensFit<BigReal>> {
    fit_series(&table.mertens_values(), window, method)
}
