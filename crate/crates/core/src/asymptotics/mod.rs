//! Fitting `M(N) ≈ m·log N + C`, the hyperbolic Euler–Maclaurin expansion,
//! and the shape of the `O(1/N)` remainder.

mod bernoulli;
mod expansion;
mod fit;
mod oscillation;

pub use bernoulli::{bernoulli_numbers, euler_maclaurin_tail, euler_maclaurin_tail_exact, BernoulliTail};
pub use expansion::{expansion_check_series, hyperbolic_expansion_check, ExpansionReport};
pub use fit::{check_window, default_window, fit_mertens, fit_series, FitMethod, MertensFit};
pub use oscillation::{oscillation_report, oscillation_series, OscillationReport, EXACT_FIT_THRESHOLD};
