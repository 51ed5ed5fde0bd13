//! Dense univariate polynomials over an exact ring, constant term first.

use std::fmt;

use num_integer::Integer;
use num_traits::{Num, Signed};

use super::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Num> Poly<T> {
    /// Builds a polynomial from coefficients `[a₀, a₁, …]`, trimming zero leading terms.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c·xᵏ`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix<T>) -> Matrix<T> {
        let mut acc = Matrix::zeros(m.dim());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add_scalar_identity(c);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Poly::constant(T::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Poly::new(out)
    }

    /// `xᵈ·p(1/x)`, the coefficient reversal.
    pub fn reversed(&self) -> Self {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn is_palindromic(&self) -> bool {
        let r = self.reversed();
        r == *self || r == self.scale(&(T::zero() - T::one()))
    }

    /// Quotient and remainder when each step's division by the leading
    /// coefficient of `divisor` is exact. Returns `None` otherwise.
    pub fn div_rem_exact(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Poly::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            let q = c.clone() / lead.clone();
            if q.clone() * lead.clone() != c {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = rem[idx].clone() - q.clone() * dc.clone();
            }
            quot[k - dd] = q;
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact quotient; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_exact(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Remainder of `lc(b)ᵏ·a` modulo `b` for the smallest workable `k`;
    /// equal to the true remainder up to a nonzero constant.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let lead = b.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let shift = Poly::monomial(r.leading(), dr - db);
            r = r.scale(&lead).sub(&shift.mul(b));
        }
        r
    }
}

impl<T: Clone + Integer + Signed> Poly<T> {
    pub fn from_i64(c: &[i64]) -> Self
    where
        T: From<i64>,
    {
        Poly::new(c.iter().map(|&x| T::from(x)).collect())
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Poly::new(self.coeffs.iter().map(|x| x.clone() / c.clone()).collect())
    }

    /// Greatest common divisor over the rationals, returned primitive with a
    /// positive leading coefficient (primitive pseudo-remainder sequence).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Square-free decomposition `p = c·∏ qᵢ^{mᵢ}` with each `qᵢ` primitive,
    /// square-free, and pairwise coprime. Constant factors are dropped.
    pub fn square_free_decomposition(&self) -> Vec<(Self, u32)> {
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut b = f.gcd(&f.derivative());
        let mut c = f.exact_div(&b).expect("gcd divides its argument").primitive_part();
        let mut mult = 1;
        while c.degree().unwrap_or(0) > 0 {
            let d = c.gcd(&b);
            let factor = c.exact_div(&d).expect("gcd divides its argument").primitive_part();
            if factor.degree().unwrap_or(0) > 0 {
                out.push((factor, mult));
            }
            b = b.exact_div(&d).expect("gcd divides its argument");
            c = d;
            mult += 1;
        }
        out
    }

    /// `p(−x)`.
    pub fn negate_variable(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }
}

/// Resultant `Res(f, g)` as the determinant of the Sylvester matrix.
pub fn resultant<T: Clone + Num>(f: &Poly<T>, g: &Poly<T>) -> T {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return T::zero();
    };
    if m == 0 {
        return (0..n).fold(T::one(), |acc, _| acc * f.leading());
    }
    if n == 0 {
        return (0..m).fold(T::one(), |acc, _| acc * g.leading());
    }
    let size = m + n;
    let mut rows = vec![vec![T::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    Matrix::new(rows).expect("Sylvester matrix is square").det()
}

impl<T: fmt::Display + Clone + Num + PartialOrd> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < T::zero();
            let mag = if neg { T::zero() - c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: fmt::Display + Clone + Num + PartialOrd> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
