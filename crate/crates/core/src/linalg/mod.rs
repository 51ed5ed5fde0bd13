//! Exact linear algebra over arbitrary-precision integers.

mod block;
mod cyclotomic;
mod matrix;
mod poly;

pub use block::BlockSpec;
pub use cyclotomic::{admissible_orders, cyclotomic, cyclotomic_table, root_of_unity_orders};
pub use matrix::{Matrix, PowerChain};
pub use poly::{resultant, Poly};

use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Square matrix of arbitrary-precision integers.
pub type IntMatrix = Matrix<BigInt>;

/// Polynomial with arbitrary-precision integer coefficients.
pub type IntPoly = Poly<BigInt>;

/// Monic characteristic polynomial `det(xI − M)` of an integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharPoly(IntPoly);

impl CharPoly {
    pub fn of(m: &IntMatrix) -> Self {
        CharPoly(m.char_poly())
    }

    pub fn from_poly(p: IntPoly) -> Option<Self> {
        (p.degree().unwrap_or(0) >= 1 && p.is_monic()).then_some(CharPoly(p))
    }

    pub fn poly(&self) -> &IntPoly {
        &self.0
    }

    pub fn into_poly(self) -> IntPoly {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap_or(0)
    }

    /// Constant coefficient is `±1`, i.e. the matrix lies in `GL_d(ℤ)`.
    pub fn is_unimodular(&self) -> bool {
        self.0.coeff(0).abs().is_one()
    }
}

pub fn char_poly(m: &IntMatrix) -> CharPoly {
    CharPoly::of(m)
}

pub fn det(m: &IntMatrix) -> BigInt {
    m.det()
}

pub fn matrix_power(m: &IntMatrix, n: u64) -> IntMatrix {
    m.pow(n)
}

/// `det(Mⁿ − I)`; its absolute value counts the points fixed by `Tⁿ`.
pub fn det_power_minus_identity(m: &IntMatrix, n: u64) -> BigInt {
    m.det_power_minus_identity(n)
}

/// `Res(p, xⁿ − 1) = ±∏(λᵢⁿ − 1)`, the root-side route to `det(Mⁿ − I)`.
pub fn resultant_power_minus_one(p: &CharPoly, n: u64) -> BigInt {
    let xn1 = IntPoly::monomial(BigInt::one(), n as usize).sub(&IntPoly::constant(BigInt::one()));
    resultant(p.poly(), &xn1)
}
