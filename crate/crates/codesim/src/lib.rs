//! Desk-scale simulation of likelihood-encoded channel-simulation codes and
//! the double-binned two-receiver broadcast code built from them.
//!
//! Blocklengths stay small enough to enumerate sequence spaces outright, so
//! the headline quantities are exact rather than sampled: the divergence
//! between a codebook's induced output law and its memoryless target
//! ([`resolvability_divergence`]), the chance the encoder's pick is jointly
//! typical with the state ([`typicality_prob`]), and the information a
//! fixed broadcast codebook leaks to the second receiver
//! ([`exact_leakage`]). Decoding error rates, the one quantity without a
//! tractable closed form, come from seeded Monte-Carlo trials
//! ([`run_bc_trials`]) with deterministic, thread-count-independent
//! reports. All randomness is counter-based: codewords and trials are
//! regenerated on demand from the experiment seed and their index tuple.

pub mod bc;
pub mod error;
pub mod presets;
pub mod resolvability;
mod rng;
mod seq;

pub use bc::{
    bc_encode, decode1, decode2, exact_leakage, g12, gen_bc_codebook, run_bc_ensemble,
    run_bc_trials,
    BcCodeConfig, BcCodebook, BcCounts, BcRates, Decode1Output, Decode2Output, LeakageMethod,
    LeakageReport, TrialReport, DEFAULT_DECODER_EPS, SEARCH_BUDGET,
};
pub use error::{Result, SimError};
pub use resolvability::{
    divergence_and_tv, encoder_weights, ensemble_divergences, induced_v_pmf, likelihood_encode,
    resolvability_divergence, typicality_prob, ResolvabilityCodebook, ResolvabilityProblem,
    ENUM_BUDGET,
};
pub use rng::derive_seeds;

/// Number of table slots carried by a rate at blocklength `n`:
/// `⌊2^{n·rate}⌋`, clamped to at least one. The small additive guard keeps
/// exact powers of two from rounding down through float noise.
pub fn message_count(n: usize, rate: f64) -> usize {
    let raw = (n as f64 * rate).exp2() + 1e-9;
    if raw >= usize::MAX as f64 {
        usize::MAX
    } else {
        (raw.floor() as usize).max(1)
    }
}

/// The rate a count of table slots actually carries at blocklength `n`.
pub fn realized_rate(count: usize, n: usize) -> f64 {
    (count as f64).log2() / n as f64
}
