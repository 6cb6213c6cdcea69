//! Letter-typical sequences: the empirical PMF must match the reference
//! within a multiplicative ε on every letter.

use serde::{Deserialize, Serialize};

use crate::error::{ProbError, Result};
use crate::pmf::Pmf;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypicalityParams {
    pub eps: f64,
}

impl TypicalityParams {
    pub fn new(eps: f64) -> Result<Self> {
        if eps < 0.0 || !eps.is_finite() {
            return Err(ProbError::InvalidParam(format!("eps = {eps}")));
        }
        Ok(Self { eps })
    }
}

/// True iff |ν(a) − P(a)| ≤ ε·P(a) for every letter a, where ν is the
/// empirical PMF of `seq`. Letters of zero reference mass must not occur.
pub fn is_letter_typical(seq: &[usize], p: &Pmf, params: TypicalityParams) -> Result<bool> {
    if seq.is_empty() {
        return Err(ProbError::EmptySequence);
    }
    let mut counts = vec![0usize; p.len()];
    for &letter in seq {
        if letter >= p.len() {
            return Err(ProbError::InvalidParam(format!(
                "letter {letter} outside alphabet of size {}",
                p.len()
            )));
        }
        counts[letter] += 1;
    }
    let n = seq.len() as f64;
    for (a, &c) in counts.iter().enumerate() {
        let nu = c as f64 / n;
        let pa = p.prob(a);
        if (nu - pa).abs() > params.eps * pa {
            return Ok(false);
        }
    }
    Ok(true)
}
