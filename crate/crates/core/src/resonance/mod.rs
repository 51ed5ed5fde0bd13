//! The resonance set `Ω`, signed counts `K(ω)` and the Mertens coefficient `m = K(1)`.

mod laurent;
mod profile;

pub use laurent::{block_generating_poly, m_exact_block, m_sequence, pair_factor, LaurentPoly};
pub use profile::{
    aggregate_arguments, m_cesaro_oracle, resonance_exact_block, resonance_log_constant, resonance_numeric, Method,
    Resonance, ResonanceProfile, MAX_NUMERIC_PAIRS,
};
