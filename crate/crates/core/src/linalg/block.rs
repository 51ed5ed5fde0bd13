use num_bigint::BigInt;
use num_traits::One;

use super::matrix::Matrix;
use super::poly::Poly;
use crate::error::{Error, Result};

/// The construction `base^{a₁} ⊕ base^{a₂} ⊕ … ⊕ base^{a_t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    base: Matrix<BigInt>,
    powers: Vec<u32>,
}

impl BlockSpec {
    pub fn new(base: Matrix<BigInt>, powers: Vec<u32>) -> Result<Self> {
        if powers.is_empty() {
            return Err(Error::Malformed("block powers must be nonempty".into()));
        }
        if powers.contains(&0) {
            return Err(Error::Malformed("block powers must be positive".into()));
        }
        Ok(BlockSpec { base, powers })
    }

    pub fn base(&self) -> &Matrix<BigInt> {
        &self.base
    }

    pub fn powers(&self) -> &[u32] {
        &self.powers
    }

    pub fn dim(&self) -> usize {
        self.base.dim() * self.powers.len()
    }

    pub fn to_matrix(&self) -> Matrix<BigInt> {
        let blocks: Vec<_> = self.powers.iter().map(|&a| self.base.pow(a as u64)).collect();
        Matrix::direct_sum(&blocks)
    }

    /// Product of the blocks' characteristic polynomials.
    pub fn char_poly(&self) -> Poly<BigInt> {
        self.powers
            .iter()
            .fold(Poly::constant(BigInt::one()), |acc, &a| acc.mul(&self.base.pow(a as u64).char_poly()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Matrix<BigInt> {
        let r = [[0, 0, 0, -1], [1, 0, 0, 8], [0, 1, 0, -6], [0, 0, 1, 8]];
        Matrix::new(r.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn dimension_and_char_poly() {
        let b = BlockSpec::new(a(), vec![1, 2, 3]).unwrap();
        assert_eq!(b.dim(), 12);
        assert_eq!(b.char_poly(), b.to_matrix().char_poly());
    }

    #[test]
    fn rejects_bad_powers() {
        assert!(BlockSpec::new(a(), vec![]).is_err());
        assert!(BlockSpec::new(a(), vec![1, 0]).is_err());
    }
}
