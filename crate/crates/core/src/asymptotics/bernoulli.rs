use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let next = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(next);
    }
    row
}

/// `B_0, …, B_k` as exact rationals, with the convention `B_1 = −1/2`.
pub fn bernoulli_numbers(k: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for m in 1..=k {
        let binom = binomial_row(m + 1);
        let s = (0..m).fold(BigRational::zero(), |acc, j| {
            acc + BigRational::from_integer(binom[j].clone()) * &b[j]
        });
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `Σ_{r=0}^{k−1} B_{r+1} / ((r+1)·N^{r+1})` with its ingredients kept exact.
#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliTail {
    pub order: usize,
    /// `B_1, …, B_k`.
    pub coefficients: Vec<BigRational>,
    pub n: u64,
    pub exact: BigRational,
}

impl BernoulliTail {
    pub fn new(n: u64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("Euler–Maclaurin order k must be positive".into()));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("N must be positive".into()));
        }
        let coefficients: Vec<BigRational> = bernoulli_numbers(k).into_iter().skip(1).collect();
        let nn = BigInt::from(n);
        let exact = coefficients.iter().enumerate().fold(BigRational::zero(), |acc, (r, b)| {
            let denom = BigInt::from(r + 1) * nn.pow(r as u32 + 1);
            acc + b / BigRational::from_integer(denom)
        });
        Ok(BernoulliTail {
            order: k,
            coefficients,
            n,
            exact,
        })
    }

    pub fn value<T: Real>(&self, digits: u32) -> T {
        T::from_ratio_digits(&self.exact, digits)
    }
}

pub fn euler_maclaurin_tail_exact(n: u64, k: usize) -> Result<BigRational> {
    BernoulliTail::new(n, k).map(|t| t.exact)
}

pub fn euler_maclaurin_tail<T: Real>(n: u64, k: usize, digits: u32) -> Result<T> {
    BernoulliTail::new(n, k).map(|t| t.value(digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn first_bernoulli_numbers() {
        let b = bernoulli_numbers(6);
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[3], q(0, 1));
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[6], q(1, 42));
    }

    #[test]
    fn recurrence_holds() {
        let b = bernoulli_numbers(21);
        for n in 1..=20 {
            let binom = binomial_row(n + 1);
            let s = (0..=n).fold(BigRational::zero(), |acc, j| acc + BigRational::from_integer(binom[j].clone()) * &b[j]);
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn tail_values() {
        assert_eq!(euler_maclaurin_tail_exact(1, 2).unwrap(), q(-5, 12));
        assert_eq!(euler_maclaurin_tail_exact(10, 1).unwrap(), q(-1, 20));
        let v: f64 = euler_maclaurin_tail(10, 2, 15).unwrap();
        assert!((v + 0.049_166_666_666_666_67).abs() < 1e-15);
        assert!(euler_maclaurin_tail_exact(10, 0).is_err());
    }
}
