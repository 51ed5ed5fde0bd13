//! Validated toral automorphisms: a unimodular matrix or a block construction.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg::{root_of_unity_orders, BlockSpec, CharPoly, IntMatrix};
use crate::spectral::{classify, spectrum_of_block, Spectrum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Matrix(IntMatrix),
    Block(BlockSpec),
}

/// An element of `GL_d(ℤ)`, possibly given as `⊕ base^{a_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    source: Source,
    char_poly: CharPoly,
}

fn require_unimodular(m: &IntMatrix) -> Result<()> {
    let det = m.det();
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular { det: det.to_string() });
    }
    Ok(())
}

impl Automorphism {
    pub fn from_matrix(m: IntMatrix) -> Result<Self> {
        require_unimodular(&m)?;
        let char_poly = CharPoly::of(&m);
        Ok(Automorphism {
            source: Source::Matrix(m),
            char_poly,
        })
    }

    pub fn from_block(spec: BlockSpec) -> Result<Self> {
        require_unimodular(spec.base())?;
        let char_poly = CharPoly::from_poly(spec.char_poly())
            .ok_or_else(|| Error::Internal("block characteristic polynomial is not monic".into()))?;
        Ok(Automorphism {
            source: Source::Block(spec),
            char_poly,
        })
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn block(&self) -> Option<&BlockSpec> {
        match &self.source {
            Source::Block(b) => Some(b),
            Source::Matrix(_) => None,
        }
    }

    pub fn char_poly(&self) -> &CharPoly {
        &self.char_poly
    }

    pub fn dim(&self) -> usize {
        self.char_poly.degree()
    }

    /// The full `d×d` matrix (block constructions are materialized).
    pub fn matrix(&self) -> IntMatrix {
        match &self.source {
            Source::Matrix(m) => m.clone(),
            Source::Block(b) => b.to_matrix(),
        }
    }

    /// Exact ergodicity: no cyclotomic factor divides the characteristic polynomial.
    pub fn ergodicity_obstructions(&self) -> Vec<u64> {
        root_of_unity_orders(self.char_poly.poly())
    }

    pub fn require_ergodic(&self) -> Result<()> {
        let orders = self.ergodicity_obstructions();
        if orders.is_empty() {
            Ok(())
        } else {
            Err(Error::NonErgodic(format!(
                "eigenvalues include roots of unity of order {orders:?}"
            )))
        }
    }

    pub fn spectrum(&self, digits: u32) -> Result<Spectrum> {
        match &self.source {
            Source::Matrix(_) => classify(&self.char_poly, digits),
            Source::Block(b) => spectrum_of_block(b, digits),
        }
    }

    /// `det(Tⁿ − I)` for `n = 1..=n_max`, signed.
    ///
    /// Powers are built incrementally. For a block construction only the base
    /// chain is walked, using `det(⊕ Bᵃ)ⁿ − I) = ∏ det(B^{a·n} − I)`.
    pub fn power_minus_identity_dets(&self, n_max: usize) -> Vec<BigInt> {
        let minus_one = -BigInt::one();
        match &self.source {
            Source::Matrix(m) => m
                .powers()
                .take(n_max)
                .map(|p| p.add_scalar_identity(&minus_one).det())
                .collect(),
            Source::Block(b) => {
                let max_a = *b.powers().iter().max().expect("nonempty powers") as usize;
                let mut base_dets: Vec<Option<BigInt>> = vec![None; max_a * n_max + 1];
                for n in 1..=n_max {
                    for &a in b.powers() {
                        base_dets[a as usize * n] = Some(BigInt::one());
                    }
                }
                for (k, p) in b.base().powers().take(max_a * n_max).enumerate() {
                    if let Some(slot) = base_dets[k + 1].as_mut() {
                        *slot = p.add_scalar_identity(&minus_one).det();
                    }
                }
                (1..=n_max)
                    .map(|n| {
                        b.powers()
                            .iter()
                            .map(|&a| base_dets[a as usize * n].clone().expect("filled above"))
                            .product()
                    })
                    .collect()
            }
        }
    }
}
