//! Channel-simulation codes over a state pair `(S0, S)`: a codebook of
//! `U`-sequences, a likelihood encoder picking bin members, and exact
//! evaluation of how close the induced output law over `V`-sequences comes
//! to the memoryless target.

use probkit::{is_letter_typical, CondPmf, JointPmf, Pmf, TypicalityParams};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Result, SimError};
use crate::rng::{sample_weights, stream_rng, TAG_RESOLVE_WORD};
use crate::seq::{fill_product, unrank_seq};
use crate::{message_count, realized_rate};

pub const AXIS_S0: &str = "S0";
pub const AXIS_S: &str = "S";
pub const AXIS_U: &str = "U";
pub const AXIS_V: &str = "V";

/// Cap on `(|S0|·|S|·|V|)^n`, the cell count of the exact enumerations.
pub const ENUM_BUDGET: u128 = 1 << 24;

/// A channel-simulation instance: the single-letter law `Q_{S0,S,U,V}`, the
/// blocklength, the two code rates, and the codebook seed.
///
/// The per-codeword rate `rt` spreads the codebook over bins and the
/// in-bin rate `rp` sizes each bin; their integer counts are fixed at
/// construction and the realized rates are reported back, since `2^{n·r}`
/// rarely is an integer.
#[derive(Debug, Clone)]
pub struct ResolvabilityProblem {
    joint: JointPmf,
    n: usize,
    rt: f64,
    rp: f64,
    seed: u64,
    w_count: usize,
    i_count: usize,
    s0_pmf: Pmf,
    s_given_s0: CondPmf,
    u_given_s0: CondPmf,
    s_given_s0u: CondPmf,
    v_given_s0su: CondPmf,
    v_given_s0s: CondPmf,
}

impl ResolvabilityProblem {
    /// Validates the axis layout `(S0, S, U, V)`, the rates, and the
    /// enumeration budget, then precomputes the conditional kernels.
    pub fn new(joint: JointPmf, n: usize, rt: f64, rp: f64, seed: u64) -> Result<Self> {
        let names: Vec<&str> = joint.axes().iter().map(|a| a.name.as_str()).collect();
        if names != [AXIS_S0, AXIS_S, AXIS_U, AXIS_V] {
            return Err(SimError::InvalidInput(format!(
                "joint must have axes (S0, S, U, V), got {:?}",
                names
            )));
        }
        if n == 0 {
            return Err(SimError::InvalidInput("blocklength must be positive".into()));
        }
        for (name, rate) in [("rt", rt), ("rp", rp)] {
            if !rate.is_finite() || rate < 0.0 {
                return Err(SimError::InvalidInput(format!(
                    "rate {name} must be finite and nonnegative, got {rate}"
                )));
            }
        }
        let s0 = joint.axis_size(AXIS_S0)?;
        let s = joint.axis_size(AXIS_S)?;
        let v = joint.axis_size(AXIS_V)?;
        let per_letter = (s0 as u128) * (s as u128) * (v as u128);
        let needed = per_letter
            .checked_pow(n as u32)
            .ok_or(SimError::Budget {
                detail: "state/output sequence enumeration",
                needed: u128::MAX,
                budget: ENUM_BUDGET,
            })?;
        if needed > ENUM_BUDGET {
            return Err(SimError::Budget {
                detail: "state/output sequence enumeration",
                needed,
                budget: ENUM_BUDGET,
            });
        }
        let w_count = message_count(n, rt);
        let i_count = message_count(n, rp);
        if (w_count as u128) * (i_count as u128) > ENUM_BUDGET {
            return Err(SimError::InvalidInput(format!(
                "codebook holds {w_count}x{i_count} words, beyond any tractable enumeration"
            )));
        }

        let s0_pmf = joint.marginalize(&[AXIS_S0])?.flatten();
        let s_given_s0 = CondPmf::from_joint(&joint, &[AXIS_S0], &[AXIS_S])?;
        let u_given_s0 = CondPmf::from_joint(&joint, &[AXIS_S0], &[AXIS_U])?;
        let s_given_s0u = CondPmf::from_joint(&joint, &[AXIS_S0, AXIS_U], &[AXIS_S])?;
        let v_given_s0su = CondPmf::from_joint(&joint, &[AXIS_S0, AXIS_S, AXIS_U], &[AXIS_V])?;
        let v_given_s0s = CondPmf::from_joint(&joint, &[AXIS_S0, AXIS_S], &[AXIS_V])?;

        Ok(Self {
            joint,
            n,
            rt,
            rp,
            seed,
            w_count,
            i_count,
            s0_pmf,
            s_given_s0,
            u_given_s0,
            s_given_s0u,
            v_given_s0su,
            v_given_s0s,
        })
    }

    pub fn joint(&self) -> &JointPmf {
        &self.joint
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rt(&self) -> f64 {
        self.rt
    }

    pub fn rp(&self) -> f64 {
        self.rp
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of bins `W` in the codebook.
    pub fn w_count(&self) -> usize {
        self.w_count
    }

    /// Number of codewords `I` per bin.
    pub fn i_count(&self) -> usize {
        self.i_count
    }

    pub fn realized_rt(&self) -> f64 {
        realized_rate(self.w_count, self.n)
    }

    pub fn realized_rp(&self) -> f64 {
        realized_rate(self.i_count, self.n)
    }

    pub fn s0_size(&self) -> usize {
        self.s0_pmf.len()
    }

    pub fn s_size(&self) -> usize {
        self.s_given_s0.row(0).len()
    }

    pub fn u_size(&self) -> usize {
        self.u_given_s0.row(0).len()
    }

    pub fn v_size(&self) -> usize {
        self.v_given_s0s.row(0).len()
    }

    /// The same instance with a different codebook seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    fn validate_state(&self, s0seq: &[usize], sseq: &[usize]) -> Result<()> {
        if s0seq.len() != self.n || sseq.len() != self.n {
            return Err(SimError::InvalidInput(format!(
                "state sequences must have length {}, got {} and {}",
                self.n,
                s0seq.len(),
                sseq.len()
            )));
        }
        if let Some(&bad) = s0seq.iter().find(|&&a| a >= self.s0_size()) {
            return Err(SimError::InvalidInput(format!(
                "s0 letter {bad} outside alphabet of size {}",
                self.s0_size()
            )));
        }
        if let Some(&bad) = sseq.iter().find(|&&a| a >= self.s_size()) {
            return Err(SimError::InvalidInput(format!(
                "s letter {bad} outside alphabet of size {}",
                self.s_size()
            )));
        }
        Ok(())
    }
}

/// A seeded codebook for a [`ResolvabilityProblem`]: for every `s0`-sequence,
/// a `W×I` table of `U`-sequences drawn letterwise from `Q_{U|S0}`.
///
/// Codewords are regenerated on demand from a stream keyed by
/// `(seed, s0, w, i)` rather than stored, so arbitrarily large tables cost
/// nothing until touched and results never depend on generation order.
#[derive(Debug, Clone)]
pub struct ResolvabilityCodebook {
    problem: ResolvabilityProblem,
}

impl ResolvabilityCodebook {
    pub fn new(problem: ResolvabilityProblem) -> Self {
        Self { problem }
    }

    pub fn problem(&self) -> &ResolvabilityProblem {
        &self.problem
    }

    /// The codeword `u(s0, w, i)`.
    pub fn codeword(&self, s0seq: &[usize], w: usize, i: usize) -> Result<Vec<usize>> {
        self.problem.validate_state(s0seq, s0seq)?;
        self.check_slot(w, i)?;
        let mut word = vec![0usize; self.problem.n];
        self.codeword_into(s0seq, w, i, &mut word);
        Ok(word)
    }

    fn check_slot(&self, w: usize, i: usize) -> Result<()> {
        if w >= self.problem.w_count || i >= self.problem.i_count {
            return Err(SimError::InvalidInput(format!(
                "codeword slot (w={w}, i={i}) outside the {}x{} table",
                self.problem.w_count, self.problem.i_count
            )));
        }
        Ok(())
    }

    fn codeword_into(&self, s0seq: &[usize], w: usize, i: usize, out: &mut [usize]) {
        let mut tags = Vec::with_capacity(3 + s0seq.len());
        tags.push(TAG_RESOLVE_WORD);
        tags.push(w as u64);
        tags.push(i as u64);
        tags.extend(s0seq.iter().map(|&a| a as u64));
        let mut rng = stream_rng(self.problem.seed, &tags);
        for (slot, &s0) in out.iter_mut().zip(s0seq) {
            let row = self.problem.u_given_s0.row(s0);
            *slot = sample_weights(&mut rng, row.probs())
                .expect("conditional rows have unit mass");
        }
    }

    /// All `w_count × i_count` codewords for one `s0`-sequence, flattened.
    fn table_for(&self, s0seq: &[usize]) -> Vec<usize> {
        let p = &self.problem;
        let mut words = vec![0usize; p.w_count * p.i_count * p.n];
        for w in 0..p.w_count {
            for i in 0..p.i_count {
                let at = (w * p.i_count + i) * p.n;
                self.codeword_into(s0seq, w, i, &mut words[at..at + p.n]);
            }
        }
        words
    }
}

/// The likelihood of observing `sseq` given one codeword, letter by letter.
fn state_weight(p: &ResolvabilityProblem, s0seq: &[usize], sseq: &[usize], word: &[usize]) -> f64 {
    let u_size = p.u_size();
    s0seq
        .iter()
        .zip(sseq)
        .zip(word)
        .map(|((&s0, &s), &u)| p.s_given_s0u.prob(s0 * u_size + u, s))
        .product()
}

/// The encoder's unnormalized bin weights `Q^n_{S|U,S0}(sseq | u(s0,w,i), s0seq)`
/// over `i`, the quantities the likelihood encoder samples proportionally to.
pub fn encoder_weights(
    cb: &ResolvabilityCodebook,
    w: usize,
    s0seq: &[usize],
    sseq: &[usize],
) -> Result<Vec<f64>> {
    let p = &cb.problem;
    p.validate_state(s0seq, sseq)?;
    cb.check_slot(w, 0)?;
    let mut word = vec![0usize; p.n];
    Ok((0..p.i_count)
        .map(|i| {
            cb.codeword_into(s0seq, w, i, &mut word);
            state_weight(p, s0seq, sseq, &word)
        })
        .collect())
}

/// Samples a bin member with probability proportional to its likelihood of
/// having produced `sseq`. Returns `None` — the distinguished encoder-failure
/// outcome — when every weight in the bin is zero, which cannot happen when
/// `Q_{S|U,S0}` has full support.
pub fn likelihood_encode(
    cb: &ResolvabilityCodebook,
    w: usize,
    s0seq: &[usize],
    sseq: &[usize],
    rng: &mut impl Rng,
) -> Result<Option<usize>> {
    let weights = encoder_weights(cb, w, s0seq, sseq)?;
    Ok(sample_weights(rng, &weights))
}

/// Scratch buffers for the exact output-law enumerations.
struct VScratch {
    acc: Vec<f64>,
    prod: Vec<f64>,
}

impl VScratch {
    fn new(p: &ResolvabilityProblem) -> Self {
        let cells = p.v_size().pow(p.n as u32);
        Self {
            acc: vec![0.0; cells],
            prod: vec![0.0; cells],
        }
    }
}

/// Accumulates the exact induced law over `V`-sequences for one `(s0, s)`
/// state pair into `scratch.acc`, given the flattened codeword table.
fn induced_into(
    p: &ResolvabilityProblem,
    words: &[usize],
    s0seq: &[usize],
    sseq: &[usize],
    scratch: &mut VScratch,
) -> Result<()> {
    let v_size = p.v_size();
    let s_size = p.s_size();
    let u_size = p.u_size();
    scratch.acc.fill(0.0);
    let mut rows: Vec<&[f64]> = Vec::with_capacity(p.n);
    for w in 0..p.w_count {
        let bin = &words[w * p.i_count * p.n..(w + 1) * p.i_count * p.n];
        let weights: Vec<f64> = (0..p.i_count)
            .map(|i| state_weight(p, s0seq, sseq, &bin[i * p.n..(i + 1) * p.n]))
            .collect();
        let denom: f64 = weights.iter().sum();
        if !(denom > 0.0) {
            return Err(SimError::EncoderFailure(format!(
                "bin w={w} at s0={s0seq:?}, s={sseq:?}"
            )));
        }
        for (i, &wt) in weights.iter().enumerate() {
            if wt <= 0.0 {
                continue;
            }
            let coef = wt / denom / p.w_count as f64;
            let word = &bin[i * p.n..(i + 1) * p.n];
            rows.clear();
            for t in 0..p.n {
                let from = (s0seq[t] * s_size + sseq[t]) * u_size + word[t];
                rows.push(p.v_given_s0su.row(from).probs());
            }
            fill_product(&rows, v_size, &mut scratch.prod);
            for (a, &b) in scratch.acc.iter_mut().zip(&scratch.prod) {
                *a += coef * b;
            }
        }
    }
    Ok(())
}

/// The exact conditional law the codebook induces on `V`-sequences given a
/// state pair: the bin-uniform, likelihood-weighted mixture of the product
/// rows of `Q_{V|U,S0,S}` along each codeword.
pub fn induced_v_pmf(
    cb: &ResolvabilityCodebook,
    s0seq: &[usize],
    sseq: &[usize],
) -> Result<Pmf> {
    let p = &cb.problem;
    p.validate_state(s0seq, sseq)?;
    let words = cb.table_for(s0seq);
    let mut scratch = VScratch::new(p);
    induced_into(p, &words, s0seq, sseq, &mut scratch)?;
    Ok(Pmf::new(scratch.acc)?)
}

/// Exact conditional divergence in bits between the induced and the target
/// product law over `V`-sequences, averaged over `Q^n_{S0,S}`, paired with
/// the matching averaged total-variation distance.
pub fn divergence_and_tv(cb: &ResolvabilityCodebook) -> Result<(f64, f64)> {
    let p = &cb.problem;
    let v_size = p.v_size();
    let s_size = p.s_size();
    let s0_cells = p.s0_size().pow(p.n as u32);
    let s_cells = s_size.pow(p.n as u32);
    let mut scratch = VScratch::new(p);
    let mut target = vec![0.0; scratch.acc.len()];
    let mut s0seq = vec![0usize; p.n];
    let mut sseq = vec![0usize; p.n];
    let mut rows: Vec<&[f64]> = Vec::with_capacity(p.n);
    let mut kl = 0.0;
    let mut tv = 0.0;
    for s0rank in 0..s0_cells {
        unrank_seq(s0rank, p.s0_size(), &mut s0seq);
        let q0: f64 = s0seq.iter().map(|&a| p.s0_pmf.prob(a)).product();
        if q0 <= 0.0 {
            continue;
        }
        let words = cb.table_for(&s0seq);
        for srank in 0..s_cells {
            unrank_seq(srank, s_size, &mut sseq);
            let qs: f64 = s0seq
                .iter()
                .zip(&sseq)
                .map(|(&s0, &s)| p.s_given_s0.prob(s0, s))
                .product();
            if qs <= 0.0 {
                continue;
            }
            induced_into(p, &words, &s0seq, &sseq, &mut scratch)?;
            rows.clear();
            for t in 0..p.n {
                rows.push(p.v_given_s0s.row(s0seq[t] * s_size + sseq[t]).probs());
            }
            fill_product(&rows, v_size, &mut target);
            let mut kl_term = 0.0;
            let mut tv_term = 0.0;
            for (&induced, &tgt) in scratch.acc.iter().zip(&target) {
                if induced > 0.0 {
                    kl_term += induced * (induced.log2() - tgt.log2());
                }
                tv_term += (induced - tgt).abs();
            }
            kl += q0 * qs * kl_term;
            tv += q0 * qs * 0.5 * tv_term;
        }
    }
    Ok((kl, tv))
}

/// Exact divergence in bits between the codebook-induced and the target
/// conditional output law, weighted by the state law. Finite for every
/// generated codebook: a codeword only receives encoder weight at states it
/// is jointly compatible with, so the induced law never charges a
/// `V`-sequence the target excludes.
pub fn resolvability_divergence(cb: &ResolvabilityCodebook) -> Result<f64> {
    divergence_and_tv(cb).map(|pair| pair.0)
}

/// Exact probability that the state pair together with the encoder's chosen
/// codeword from bin `w` lands in the letter-typical set of `Q_{S0,S,U}`.
pub fn typicality_prob(cb: &ResolvabilityCodebook, w: usize, eps: f64) -> Result<f64> {
    let p = &cb.problem;
    cb.check_slot(w, 0)?;
    let params = TypicalityParams::new(eps)?;
    let triple_pmf = p.joint.marginalize(&[AXIS_S0, AXIS_S, AXIS_U])?.flatten();
    let s_size = p.s_size();
    let u_size = p.u_size();
    let s0_cells = p.s0_size().pow(p.n as u32);
    let s_cells = s_size.pow(p.n as u32);
    let mut s0seq = vec![0usize; p.n];
    let mut sseq = vec![0usize; p.n];
    let mut triple = vec![0usize; p.n];
    let mut total = 0.0;
    for s0rank in 0..s0_cells {
        unrank_seq(s0rank, p.s0_size(), &mut s0seq);
        let q0: f64 = s0seq.iter().map(|&a| p.s0_pmf.prob(a)).product();
        if q0 <= 0.0 {
            continue;
        }
        let mut bin = vec![0usize; p.i_count * p.n];
        for i in 0..p.i_count {
            let at = i * p.n;
            cb.codeword_into(&s0seq, w, i, &mut bin[at..at + p.n]);
        }
        for srank in 0..s_cells {
            unrank_seq(srank, s_size, &mut sseq);
            let qs: f64 = s0seq
                .iter()
                .zip(&sseq)
                .map(|(&s0, &s)| p.s_given_s0.prob(s0, s))
                .product();
            if qs <= 0.0 {
                continue;
            }
            let weights: Vec<f64> = (0..p.i_count)
                .map(|i| state_weight(p, &s0seq, &sseq, &bin[i * p.n..(i + 1) * p.n]))
                .collect();
            let denom: f64 = weights.iter().sum();
            if !(denom > 0.0) {
                return Err(SimError::EncoderFailure(format!(
                    "bin w={w} at s0={s0seq:?}, s={sseq:?}"
                )));
            }
            for (i, &wt) in weights.iter().enumerate() {
                if wt <= 0.0 {
                    continue;
                }
                let word = &bin[i * p.n..(i + 1) * p.n];
                for t in 0..p.n {
                    triple[t] = (s0seq[t] * s_size + sseq[t]) * u_size + word[t];
                }
                if is_letter_typical(&triple, &triple_pmf, params)? {
                    total += q0 * qs * wt / denom;
                }
            }
        }
    }
    Ok(total)
}

/// Exact divergences of independently seeded codebooks for the same problem,
/// evaluated in parallel; pair with [`crate::derive_seeds`] for an ensemble.
pub fn ensemble_divergences(problem: &ResolvabilityProblem, seeds: &[u64]) -> Result<Vec<f64>> {
    seeds
        .par_iter()
        .map(|&seed| resolvability_divergence(&ResolvabilityCodebook::new(problem.with_seed(seed))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use probkit::{axis, JointPmf};

    fn tiny_problem(n: usize, rt: f64, rp: f64, seed: u64) -> ResolvabilityProblem {
        // S0 uniform binary; S = S0 flipped w.p. 0.3; U = S flipped w.p. 0.2;
        // V = U flipped w.p. 0.1. Full support everywhere.
        let joint = JointPmf::from_fn(
            vec![axis(AXIS_S0, 2), axis(AXIS_S, 2), axis(AXIS_U, 2), axis(AXIS_V, 2)],
            |idx| {
                let flip = |a: usize, b: usize, p: f64| if a == b { 1.0 - p } else { p };
                0.5 * flip(idx[0], idx[1], 0.3) * flip(idx[1], idx[2], 0.2) * flip(idx[2], idx[3], 0.1)
            },
        )
        .unwrap();
        ResolvabilityProblem::new(joint, n, rt, rp, seed).unwrap()
    }

    #[test]
    fn rejects_wrong_axis_layout() {
        let joint = JointPmf::from_fn(
            vec![axis("S", 2), axis(AXIS_S0, 2), axis(AXIS_U, 2), axis(AXIS_V, 2)],
            |_| 1.0 / 16.0,
        )
        .unwrap();
        let err = ResolvabilityProblem::new(joint, 2, 1.0, 1.0, 0).unwrap_err();
        assert!(matches!(err, SimError::InvalidInput(_)));
    }

    #[test]
    fn rejects_budget_overflow() {
        let joint = JointPmf::from_fn(
            vec![axis(AXIS_S0, 4), axis(AXIS_S, 4), axis(AXIS_U, 2), axis(AXIS_V, 4)],
            |_| 1.0 / 128.0,
        )
        .unwrap();
        let err = ResolvabilityProblem::new(joint, 5, 1.0, 1.0, 0).unwrap_err();
        assert!(matches!(err, SimError::Budget { .. }));
    }

    #[test]
    fn codeword_is_seed_and_slot_deterministic() {
        let p = tiny_problem(4, 1.0, 0.5, 11);
        let cb = ResolvabilityCodebook::new(p.clone());
        let again = ResolvabilityCodebook::new(p.with_seed(11));
        let s0 = [0, 1, 1, 0];
        assert_eq!(
            cb.codeword(&s0, 2, 0).unwrap(),
            again.codeword(&s0, 2, 0).unwrap()
        );
        let other_seed = ResolvabilityCodebook::new(p.with_seed(12));
        let differs = (0..p.w_count())
            .any(|w| cb.codeword(&s0, w, 0).unwrap() != other_seed.codeword(&s0, w, 0).unwrap());
        assert!(differs);
    }

    #[test]
    fn realized_rates_round_down_to_integer_counts() {
        let p = tiny_problem(3, 0.7, 0.4, 0);
        assert_eq!(p.w_count(), 4); // floor(2^2.1)
        assert_eq!(p.i_count(), 2); // floor(2^1.2)
        assert!(p.realized_rt() <= 0.7 + 1e-12);
        assert!(p.realized_rp() <= 0.4 + 1e-12);
    }

    #[test]
    fn divergence_and_tv_are_finite_and_consistent() {
        let p = tiny_problem(3, 0.8, 0.6, 5);
        let cb = ResolvabilityCodebook::new(p);
        let (kl, tv) = divergence_and_tv(&cb).unwrap();
        assert!(kl.is_finite());
        assert!(kl >= -1e-9);
        assert!((0.0..=1.0 + 1e-12).contains(&tv));
    }
}
