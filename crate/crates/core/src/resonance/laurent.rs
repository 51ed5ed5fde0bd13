use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Num, One};

/// Finitely supported Laurent polynomial `Σ c_e z^e`, `e ∈ ℤ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<T> {
    terms: BTreeMap<i64, T>,
}

impl<T: Clone + Num> LaurentPoly<T> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    pub fn monomial(c: T, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, T)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(T::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> T {
        self.terms.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Drops every term with `|e| > bound`.
    pub fn prune(&mut self, bound: i64) {
        self.terms.retain(|e, _| e.abs() <= bound);
    }

    /// Sum of all coefficients, i.e. the value at `z = 1`.
    pub fn coefficient_sum(&self) -> T {
        self.terms.values().fold(T::zero(), |acc, c| acc + c.clone())
    }
}

/// `2 − z^a − z^{−a}`, the signed subset generating factor of one unit pair
/// whose argument is `a·θ`.
pub fn pair_factor(a: i64) -> LaurentPoly<BigInt> {
    let two = BigInt::from(2);
    if a == 0 {
        return LaurentPoly::zero();
    }
    LaurentPoly::from_terms([(0, two), (a, -BigInt::one()), (-a, -BigInt::one())])
}

/// Full product `∏ (2 − z^{a_j} − z^{−a_j})`.
pub fn block_generating_poly(powers: &[u32]) -> LaurentPoly<BigInt> {
    powers
        .iter()
        .fold(LaurentPoly::one(), |acc, &a| acc.mul(&pair_factor(a as i64)))
}

/// Constant term of `∏ (2 − z^{a_j} − z^{−a_j})`.
///
/// This is `K(1)` for `⊕ A^{a_j}` when the unit arguments are `a_j·θ` with
/// `θ` irrational. Exponents that can no longer return to zero are pruned
/// after every factor.
pub fn m_exact_block(powers: &[u32]) -> BigInt {
    let mut remaining: i64 = powers.iter().map(|&a| a as i64).sum();
    let mut acc = LaurentPoly::one();
    for &a in powers {
        remaining -= a as i64;
        acc = acc.mul(&pair_factor(a as i64));
        acc.prune(remaining);
    }
    acc.constant_term()
}

/// `[m_exact_block([1..t]) for t = 1..=max_t]`.
pub fn m_sequence(max_t: u32) -> Vec<BigInt> {
    let total: i64 = (1..=max_t as i64).sum();
    let mut acc = LaurentPoly::one();
    let mut out = Vec::with_capacity(max_t as usize);
    let mut used = 0i64;
    for t in 1..=max_t as i64 {
        used += t;
        acc = acc.mul(&pair_factor(t));
        out.push(acc.constant_term());
        acc.prune(total - used);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn multiplication_and_cancellation() {
        let p = LaurentPoly::from_terms([(1, 1i64), (-1, 1)]);
        let q = LaurentPoly::from_terms([(1, 1i64), (-1, -1)]);
        let r = p.mul(&q);
        assert_eq!(r, LaurentPoly::from_terms([(2, 1), (-2, -1)]));
        assert_eq!(r.constant_term(), 0);
    }

    #[test]
    fn single_pair() {
        assert_eq!(m_exact_block(&[1]), BigInt::from(2));
        assert_eq!(pair_factor(3).coefficient_sum(), BigInt::from(0));
    }

    #[test]
    fn sum_heavy_example() {
        assert_eq!(m_exact_block(&[1, 2, 3, 5, 7, 8, 11, 13]), BigInt::from(16));
    }

    #[test]
    fn sequence_prefix() {
        assert_eq!(m_sequence(5), big(&[2, 4, 6, 10, 12]));
        assert_eq!(m_sequence(1), big(&[2]));
    }

    #[test]
    fn pruned_matches_full_product() {
        let powers = [2, 3, 3, 7, 1];
        assert_eq!(m_exact_block(&powers), block_generating_poly(&powers).constant_term());
    }
}
