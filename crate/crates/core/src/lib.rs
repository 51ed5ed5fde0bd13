//! Periodic-orbit statistics for ergodic toral automorphisms.
//!
//! An automorphism is given by a matrix in `GL_d(ℤ)` or by a block
//! construction `⊕ A^{a_k}`. The crate computes its spectrum, the exact
//! fixed-point and closed-orbit counts, the Mertens sums
//! `M(N) = Σ_{n≤N} O(n)·e^{−hn}`, and the coefficient `m` in
//! `M(N) = m·log N + C + O(1/N)`.
//!
//! Integer work is exact (`BigInt`). Real work is generic over [`Real`] and
//! runs at a chosen decimal precision through [`BigReal`]; the aliases below
//! fix that choice for the common entry points.

pub mod arith;
pub mod asymptotics;
pub mod automorphism;
pub mod bigreal;
pub mod error;
pub mod io;
pub mod linalg;
pub mod orbits;
pub mod resonance;
pub mod scalar;
pub mod spectral;

pub use automorphism::Automorphism;
pub use bigreal::BigReal;
pub use error::{Error, Result};
pub use linalg::{BlockSpec, CharPoly, IntMatrix, IntPoly};
pub use orbits::OrbitTable;
pub use resonance::{LaurentPoly, ResonanceProfile};
pub use scalar::Real;
pub use spectral::{Classification, Spectrum};

/// Mertens fit at working precision.
pub type MertensFit = asymptotics::MertensFit<BigReal>;
/// Euler–Maclaurin comparison at working precision.
pub type ExpansionReport = asymptotics::ExpansionReport<BigReal>;
/// Remainder diagnostics at working precision.
pub type OscillationReport = asymptotics::OscillationReport<BigReal>;
/// Exact Laurent polynomials over the integers.
pub type IntLaurent = LaurentPoly<num_bigint::BigInt>;
