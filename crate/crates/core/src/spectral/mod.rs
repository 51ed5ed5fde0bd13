//! Eigenvalues, unit-circle structure and ergodicity classification.

mod roots;
mod spectrum;

pub use roots::{aberth, initial_guesses, Refined};
pub use spectrum::{
    accept_tolerance, ambiguity_band, classify, find_roots, fold_unit_arg, spectrum_of_block, Classification,
    HpComplex, Root, Spectrum, DEFAULT_PRECISION, MIN_PRECISION,
};
