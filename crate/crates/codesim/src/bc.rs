//! The simulated two-receiver broadcast code: superposed cloud centers, a
//! double-binned confidential codebook whose bin members are picked by a
//! likelihood encoder, deterministic cooperation binning, joint-typicality
//! decoders with the fixed default-on-failure convention, Monte-Carlo error
//! trials, and exact leakage accounting.

use probkit::{is_letter_typical, CondPmf, Pmf, TypicalityParams};
use rand::Rng;
use rayon::prelude::*;
use regions::{AuxPmf, BcChannel};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::rng::{
    derive_seeds, sample_weights, stream_rng, TAG_TRIAL, TAG_U0_WORD, TAG_U1_WORD, TAG_U2_WORD,
};
use crate::seq::{fill_product, Log2Sum};
use crate::{message_count, realized_rate};

/// Decoder typicality slack used when a config does not choose one.
pub const DEFAULT_DECODER_EPS: f64 = 0.1;

/// Cap on `|Y2|^n × (message space)`, the exact-leakage enumeration size,
/// and on either receiver's candidate search space.
pub const SEARCH_BUDGET: u128 = 1 << 24;

/// The seven rate dials of the code, in bits per letter: common `r0`,
/// confidential `r1`, the split public rates `r20` (decoded by both
/// receivers) and `r22` (receiver 2 only), the cooperation-link rate `r12`,
/// and the confidential codebook's secrecy-bin rate `rt` and bin-member
/// rate `rp`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BcRates {
    pub r0: f64,
    pub r1: f64,
    pub r20: f64,
    pub r22: f64,
    pub r12: f64,
    pub rt: f64,
    pub rp: f64,
}

impl BcRates {
    /// The full public rate `r20 + r22`.
    pub fn r2(&self) -> f64 {
        self.r20 + self.r22
    }
}

/// Everything needed to instantiate one code: the channel, the auxiliary
/// joint `Q_{U0,U1,U2,X}` the codebooks are drawn from, the blocklength,
/// the rate dials, the decoder typicality slack, and the codebook seed.
#[derive(Debug, Clone)]
pub struct BcCodeConfig {
    pub ch: BcChannel,
    pub aux: AuxPmf,
    pub n: usize,
    pub rates: BcRates,
    pub eps: f64,
    pub seed: u64,
}

/// Integer table sizes realized from the rate dials at blocklength `n`;
/// every count is `⌊2^{n·r}⌋` clamped to at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BcCounts {
    pub m0: usize,
    pub m1: usize,
    pub m20: usize,
    pub m22: usize,
    pub mw: usize,
    pub mi: usize,
    pub cells: usize,
}

impl BcCounts {
    pub fn from_rates(n: usize, rates: &BcRates) -> Self {
        Self {
            m0: message_count(n, rates.r0),
            m1: message_count(n, rates.r1),
            m20: message_count(n, rates.r20),
            m22: message_count(n, rates.r22),
            mw: message_count(n, rates.rt),
            mi: message_count(n, rates.rp),
            cells: message_count(n, rates.r12),
        }
    }

    /// Number of cloud centers, one per `(m0, m20)` pair.
    pub fn mp(&self) -> usize {
        self.m0 * self.m20
    }

    /// Number of public messages, one per `(m20, m22)` pair.
    pub fn m2(&self) -> usize {
        self.m20 * self.m22
    }

    /// The rates these integer counts actually carry at blocklength `n`.
    pub fn realized(&self, n: usize) -> BcRates {
        BcRates {
            r0: realized_rate(self.m0, n),
            r1: realized_rate(self.m1, n),
            r20: realized_rate(self.m20, n),
            r22: realized_rate(self.m22, n),
            r12: realized_rate(self.cells, n),
            rt: realized_rate(self.mw, n),
            rp: realized_rate(self.mi, n),
        }
    }
}

/// A seeded code instance. Codeword tables are indexed `u0[mp]`,
/// `u1[mp, m1, w, i]`, `u2[mp, m22]` and regenerated on demand from streams
/// keyed by those tuples; the cooperation bin map sends `mp` to
/// `mp mod cells`, so cells partition the cloud indices round-robin.
#[derive(Debug, Clone)]
pub struct BcCodebook {
    cfg: BcCodeConfig,
    counts: BcCounts,
    q_u0: Pmf,
    q_u1_given_u0: CondPmf,
    q_u2_given_u0: CondPmf,
    q_u2_given_u0u1: CondPmf,
    q_x_given_u: CondPmf,
    q_y2_given_u: CondPmf,
    t1_pmf: Pmf,
    t2_pmf: Pmf,
    u1_size: usize,
    u2_size: usize,
}

/// Derives the per-letter kernels and typicality references from the
/// auxiliary joint extended by the channel, and checks the search budget.
pub fn gen_bc_codebook(cfg: BcCodeConfig) -> Result<BcCodebook> {
    if cfg.n == 0 {
        return Err(SimError::InvalidInput("blocklength must be positive".into()));
    }
    if !cfg.eps.is_finite() || cfg.eps < 0.0 {
        return Err(SimError::InvalidInput(format!(
            "typicality eps must be finite and nonnegative, got {}",
            cfg.eps
        )));
    }
    TypicalityParams::new(cfg.eps)?;
    for (name, rate) in [
        ("r0", cfg.rates.r0),
        ("r1", cfg.rates.r1),
        ("r20", cfg.rates.r20),
        ("r22", cfg.rates.r22),
        ("r12", cfg.rates.r12),
        ("rt", cfg.rates.rt),
        ("rp", cfg.rates.rp),
    ] {
        if !rate.is_finite() || rate < 0.0 {
            return Err(SimError::InvalidInput(format!(
                "rate {name} must be finite and nonnegative, got {rate}"
            )));
        }
    }
    if cfg.aux.x_size() != cfg.ch.x_size() {
        return Err(SimError::InvalidInput(format!(
            "auxiliary joint drives an input alphabet of size {}, channel expects {}",
            cfg.aux.x_size(),
            cfg.ch.x_size()
        )));
    }
    let counts = BcCounts::from_rates(cfg.n, &cfg.rates);
    let search1 = counts.mp() as u128 * counts.m1 as u128 * counts.mw as u128 * counts.mi as u128;
    let search2 = counts.mp() as u128 * counts.m22 as u128;
    if search1 > SEARCH_BUDGET || search2 > SEARCH_BUDGET {
        return Err(SimError::Budget {
            detail: "receiver candidate search",
            needed: search1.max(search2),
            budget: SEARCH_BUDGET,
        });
    }

    let full = cfg.aux.joint().extend(cfg.ch.law())?;
    let q_u0 = full.marginalize(&["U0"])?.flatten();
    let q_u1_given_u0 = CondPmf::from_joint(&full, &["U0"], &["U1"])?;
    let q_u2_given_u0 = CondPmf::from_joint(&full, &["U0"], &["U2"])?;
    let q_u2_given_u0u1 = CondPmf::from_joint(&full, &["U0", "U1"], &["U2"])?;
    let q_x_given_u = CondPmf::from_joint(&full, &["U0", "U1", "U2"], &["X"])?;
    let q_y2_given_u = CondPmf::from_joint(&full, &["U0", "U1", "U2"], &["Y2"])?;
    let t1_pmf = full.marginalize(&["U0", "U1", "Y1"])?.flatten();
    let t2_pmf = full.marginalize(&["U0", "U2", "Y2"])?.flatten();
    let u1_size = full.axis_size("U1")?;
    let u2_size = full.axis_size("U2")?;

    Ok(BcCodebook {
        cfg,
        counts,
        q_u0,
        q_u1_given_u0,
        q_u2_given_u0,
        q_u2_given_u0u1,
        q_x_given_u,
        q_y2_given_u,
        t1_pmf,
        t2_pmf,
        u1_size,
        u2_size,
    })
}

impl BcCodebook {
    pub fn cfg(&self) -> &BcCodeConfig {
        &self.cfg
    }

    pub fn counts(&self) -> BcCounts {
        self.counts
    }

    /// The cooperation bin carrying cloud index `mp`.
    pub fn bin_of(&self, mp: usize) -> usize {
        mp % self.counts.cells
    }

    /// The cloud-center codeword for cloud index `mp`.
    pub fn u0_word(&self, mp: usize) -> Result<Vec<usize>> {
        self.check_mp(mp)?;
        let mut word = vec![0usize; self.cfg.n];
        self.u0_into(mp, &mut word);
        Ok(word)
    }

    /// The confidential-codebook word at `(mp, m1, w, i)`.
    pub fn u1_word(&self, mp: usize, m1: usize, w: usize, i: usize) -> Result<Vec<usize>> {
        self.check_mp(mp)?;
        let c = self.counts;
        if m1 >= c.m1 || w >= c.mw || i >= c.mi {
            return Err(SimError::InvalidInput(format!(
                "confidential slot (m1={m1}, w={w}, i={i}) outside the {}x{}x{} table",
                c.m1, c.mw, c.mi
            )));
        }
        let mut u0 = vec![0usize; self.cfg.n];
        self.u0_into(mp, &mut u0);
        let mut word = vec![0usize; self.cfg.n];
        self.u1_into(mp, m1, w, i, &u0, &mut word);
        Ok(word)
    }

    /// The public-satellite codeword at `(mp, m22)`.
    pub fn u2_word(&self, mp: usize, m22: usize) -> Result<Vec<usize>> {
        self.check_mp(mp)?;
        if m22 >= self.counts.m22 {
            return Err(SimError::InvalidInput(format!(
                "public slot m22={m22} outside the {} table",
                self.counts.m22
            )));
        }
        let mut u0 = vec![0usize; self.cfg.n];
        self.u0_into(mp, &mut u0);
        let mut word = vec![0usize; self.cfg.n];
        self.u2_into(mp, m22, &u0, &mut word);
        Ok(word)
    }

    fn check_mp(&self, mp: usize) -> Result<()> {
        if mp >= self.counts.mp() {
            return Err(SimError::InvalidInput(format!(
                "cloud index {mp} outside the {} table",
                self.counts.mp()
            )));
        }
        Ok(())
    }

    fn u0_into(&self, mp: usize, out: &mut [usize]) {
        let mut rng = stream_rng(self.cfg.seed, &[TAG_U0_WORD, mp as u64]);
        for slot in out.iter_mut() {
            *slot = sample_weights(&mut rng, self.q_u0.probs())
                .expect("marginal rows have unit mass");
        }
    }

    fn u1_into(&self, mp: usize, m1: usize, w: usize, i: usize, u0: &[usize], out: &mut [usize]) {
        let tags = [TAG_U1_WORD, mp as u64, m1 as u64, w as u64, i as u64];
        let mut rng = stream_rng(self.cfg.seed, &tags);
        for (slot, &a0) in out.iter_mut().zip(u0) {
            *slot = sample_weights(&mut rng, self.q_u1_given_u0.row(a0).probs())
                .expect("conditional rows have unit mass");
        }
    }

    fn u2_into(&self, mp: usize, m22: usize, u0: &[usize], out: &mut [usize]) {
        let tags = [TAG_U2_WORD, mp as u64, m22 as u64];
        let mut rng = stream_rng(self.cfg.seed, &tags);
        for (slot, &a0) in out.iter_mut().zip(u0) {
            *slot = sample_weights(&mut rng, self.q_u2_given_u0.row(a0).probs())
                .expect("conditional rows have unit mass");
        }
    }

    /// The likelihood weights `Q^n_{U2|U1,U0}(u2 | u1(mp,m1,w,·), u0)` over
    /// the bin members `i`, the encoder's selection measure.
    fn bin_weights(&self, mp: usize, m1: usize, w: usize, u0: &[usize], u2: &[usize]) -> Vec<f64> {
        let mut u1 = vec![0usize; self.cfg.n];
        (0..self.counts.mi)
            .map(|i| {
                self.u1_into(mp, m1, w, i, u0, &mut u1);
                u0.iter()
                    .zip(&u1)
                    .zip(u2)
                    .map(|((&a0, &a1), &a2)| {
                        self.q_u2_given_u0u1.prob(a0 * self.u1_size + a1, a2)
                    })
                    .product()
            })
            .collect()
    }
}

/// Core encoding path: uniform secrecy bin, likelihood-selected bin member,
/// then the input sequence letterwise through `Q_{X|U0,U1,U2}`. `None` is the
/// encoder-failure outcome (every bin weight zero).
fn encode_words(
    cb: &BcCodebook,
    mp: usize,
    m1: usize,
    m22: usize,
    rng: &mut impl Rng,
) -> Option<Vec<usize>> {
    let n = cb.cfg.n;
    let mut u0 = vec![0usize; n];
    cb.u0_into(mp, &mut u0);
    let mut u2 = vec![0usize; n];
    cb.u2_into(mp, m22, &u0, &mut u2);
    let w = rng.gen_range(0..cb.counts.mw);
    let weights = cb.bin_weights(mp, m1, w, &u0, &u2);
    let i = sample_weights(rng, &weights)?;
    let mut u1 = vec![0usize; n];
    cb.u1_into(mp, m1, w, i, &u0, &mut u1);
    let mut x = vec![0usize; n];
    for t in 0..n {
        let from = (u0[t] * cb.u1_size + u1[t]) * cb.u2_size + u2[t];
        x[t] = sample_weights(rng, cb.q_x_given_u.row(from).probs())
            .expect("conditional rows have unit mass");
    }
    Some(x)
}

/// Encodes the message triple into a channel input sequence. `None` is the
/// distinguished encoder-failure outcome, impossible when `Q_{U2|U1,U0}` has
/// full support.
pub fn bc_encode(
    cb: &BcCodebook,
    m0: usize,
    m1: usize,
    m2: usize,
    rng: &mut impl Rng,
) -> Result<Option<Vec<usize>>> {
    let c = cb.counts;
    if m0 >= c.m0 || m1 >= c.m1 || m2 >= c.m2() {
        return Err(SimError::InvalidInput(format!(
            "message ({m0}, {m1}, {m2}) outside the {}x{}x{} space",
            c.m0,
            c.m1,
            c.m2()
        )));
    }
    let m20 = m2 / c.m22;
    let m22 = m2 % c.m22;
    let mp = m0 * c.m20 + m20;
    Ok(encode_words(cb, mp, m1, m22, rng))
}

/// Receiver 1's decision, along with the full superposition index it
/// settled on. `unique` records whether a unique typical triple was found;
/// otherwise every component is the default first index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decode1Output {
    pub m0: usize,
    pub m1: usize,
    pub mp: usize,
    pub w: usize,
    pub unique: bool,
}

/// Receiver 2's decision, along with the cloud pair it settled on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decode2Output {
    pub m0: usize,
    pub m2: usize,
    pub mp: usize,
    pub m22: usize,
    pub unique: bool,
}

/// Searches for the unique `(mp, m1, w)` whose cloud and confidential words
/// are jointly letter-typical with `y1seq` under the `(U0, U1, Y1)` letter
/// law, any bin member counting as a witness. No candidate, or more than
/// one, falls back to the first message, per the fixed decoder convention.
pub fn decode1(cb: &BcCodebook, y1seq: &[usize], eps: f64) -> Result<Decode1Output> {
    let c = cb.counts;
    check_output_seq(cb, y1seq, cb.cfg.ch.y1_size(), "y1")?;
    let params = TypicalityParams::new(eps)?;
    let n = cb.cfg.n;
    let y1_size = cb.cfg.ch.y1_size();
    let mut u0 = vec![0usize; n];
    let mut u1 = vec![0usize; n];
    let mut triple = vec![0usize; n];
    let mut found: Option<(usize, usize, usize)> = None;
    'search: for mp in 0..c.mp() {
        cb.u0_into(mp, &mut u0);
        for m1 in 0..c.m1 {
            for w in 0..c.mw {
                let mut witnessed = false;
                for i in 0..c.mi {
                    cb.u1_into(mp, m1, w, i, &u0, &mut u1);
                    for t in 0..n {
                        triple[t] = (u0[t] * cb.u1_size + u1[t]) * y1_size + y1seq[t];
                    }
                    if is_letter_typical(&triple, &cb.t1_pmf, params)? {
                        witnessed = true;
                        break;
                    }
                }
                if witnessed {
                    if found.is_some() {
                        found = None;
                        break 'search;
                    }
                    found = Some((mp, m1, w));
                }
            }
        }
    }
    Ok(match found {
        Some((mp, m1, w)) => Decode1Output {
            m0: mp / c.m20,
            m1,
            mp,
            w,
            unique: true,
        },
        None => Decode1Output {
            m0: 0,
            m1: 0,
            mp: 0,
            w: 0,
            unique: false,
        },
    })
}

/// The cooperation message: the bin index of whatever cloud receiver 1
/// settled on, conveyed to receiver 2 even after a fallback decision.
pub fn g12(cb: &BcCodebook, decoded: &Decode1Output) -> usize {
    cb.bin_of(decoded.mp)
}

/// Searches for the unique `(mp, m22)` with `mp` in the conveyed bin whose
/// cloud and public words are jointly letter-typical with `y2seq` under the
/// `(U0, U2, Y2)` letter law; no candidate, or more than one, falls back to
/// the first message.
pub fn decode2(cb: &BcCodebook, m12: usize, y2seq: &[usize], eps: f64) -> Result<Decode2Output> {
    let c = cb.counts;
    if m12 >= c.cells {
        return Err(SimError::InvalidInput(format!(
            "cooperation message {m12} outside the {} bins",
            c.cells
        )));
    }
    check_output_seq(cb, y2seq, cb.cfg.ch.y2_size(), "y2")?;
    let params = TypicalityParams::new(eps)?;
    let n = cb.cfg.n;
    let y2_size = cb.cfg.ch.y2_size();
    let mut u0 = vec![0usize; n];
    let mut u2 = vec![0usize; n];
    let mut triple = vec![0usize; n];
    let mut found: Option<(usize, usize)> = None;
    'search: for mp in (m12..c.mp()).step_by(c.cells) {
        cb.u0_into(mp, &mut u0);
        for m22 in 0..c.m22 {
            cb.u2_into(mp, m22, &u0, &mut u2);
            for t in 0..n {
                triple[t] = (u0[t] * cb.u2_size + u2[t]) * y2_size + y2seq[t];
            }
            if is_letter_typical(&triple, &cb.t2_pmf, params)? {
                if found.is_some() {
                    found = None;
                    break 'search;
                }
                found = Some((mp, m22));
            }
        }
    }
    Ok(match found {
        Some((mp, m22)) => Decode2Output {
            m0: mp / c.m20,
            m2: (mp % c.m20) * c.m22 + m22,
            mp,
            m22,
            unique: true,
        },
        None => Decode2Output {
            m0: 0,
            m2: 0,
            mp: 0,
            m22: 0,
            unique: false,
        },
    })
}

fn check_output_seq(cb: &BcCodebook, seq: &[usize], size: usize, name: &str) -> Result<()> {
    if seq.len() != cb.cfg.n {
        return Err(SimError::InvalidInput(format!(
            "{name} sequence must have length {}, got {}",
            cb.cfg.n,
            seq.len()
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&a| a >= size) {
        return Err(SimError::InvalidInput(format!(
            "{name} letter {bad} outside alphabet of size {size}"
        )));
    }
    Ok(())
}

/// Outcome counts of a Monte-Carlo error run, with the Wilson 95% interval
/// on the joint error rate. Encoder failures are counted as errors at both
/// receivers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialReport {
    pub trials: usize,
    pub errors1: usize,
    pub errors2: usize,
    pub joint_errors: usize,
    pub encoder_failures: usize,
    pub error_rate: f64,
    pub ci95: (f64, f64),
    pub seed: u64,
}

/// Runs independent message-transmission trials and estimates the joint
/// error probability. Trials are independent and draw their randomness from
/// `(seed, trial index)`, so the report does not depend on thread count.
pub fn run_bc_trials(cfg: &BcCodeConfig, trials: usize) -> Result<TrialReport> {
    if trials == 0 {
        return Err(SimError::InvalidInput("need at least one trial".into()));
    }
    let cb = gen_bc_codebook(cfg.clone())?;
    let (errors1, errors2, joint_errors, encoder_failures) = (0..trials)
        .into_par_iter()
        .map(|k| run_one_trial(&cb, k as u64))
        .reduce(
            || (0usize, 0usize, 0usize, 0usize),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3),
        );
    let error_rate = joint_errors as f64 / trials as f64;
    Ok(TrialReport {
        trials,
        errors1,
        errors2,
        joint_errors,
        encoder_failures,
        error_rate,
        ci95: wilson95(joint_errors, trials),
        seed: cfg.seed,
    })
}

/// Pools trials across independently drawn codebooks: book `k` is keyed by
/// the `k`-th seed derived from `cfg.seed` and contributes `trials_each`
/// trials. The pooled counts estimate the codebook-ensemble average error,
/// which is far less noisy at small blocklengths than the conditional error
/// of any single draw (one codeword collision can dominate a whole book).
pub fn run_bc_ensemble(
    cfg: &BcCodeConfig,
    books: usize,
    trials_each: usize,
) -> Result<TrialReport> {
    if books == 0 || trials_each == 0 {
        return Err(SimError::InvalidInput(
            "need at least one codebook and one trial per codebook".into(),
        ));
    }
    gen_bc_codebook(cfg.clone())?;
    let seeds = derive_seeds(cfg.seed, books);
    let (errors1, errors2, joint_errors, encoder_failures) = seeds
        .into_par_iter()
        .map(|sk| {
            let mut book_cfg = cfg.clone();
            book_cfg.seed = sk;
            let cb = gen_bc_codebook(book_cfg).expect("validated above");
            let mut acc = (0usize, 0usize, 0usize, 0usize);
            for t in 0..trials_each {
                let r = run_one_trial(&cb, t as u64);
                acc = (acc.0 + r.0, acc.1 + r.1, acc.2 + r.2, acc.3 + r.3);
            }
            acc
        })
        .reduce(
            || (0usize, 0usize, 0usize, 0usize),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3),
        );
    let trials = books * trials_each;
    let error_rate = joint_errors as f64 / trials as f64;
    Ok(TrialReport {
        trials,
        errors1,
        errors2,
        joint_errors,
        encoder_failures,
        error_rate,
        ci95: wilson95(joint_errors, trials),
        seed: cfg.seed,
    })
}

fn run_one_trial(cb: &BcCodebook, k: u64) -> (usize, usize, usize, usize) {
    let c = cb.counts;
    let mut rng = stream_rng(cb.cfg.seed, &[TAG_TRIAL, k]);
    let m0 = rng.gen_range(0..c.m0);
    let m1 = rng.gen_range(0..c.m1);
    let m2 = rng.gen_range(0..c.m2());
    let m20 = m2 / c.m22;
    let m22 = m2 % c.m22;
    let mp = m0 * c.m20 + m20;
    let x = match encode_words(cb, mp, m1, m22, &mut rng) {
        Some(x) => x,
        None => return (1, 1, 1, 1),
    };
    let y2_size = cb.cfg.ch.y2_size();
    let n = cb.cfg.n;
    let mut y1 = vec![0usize; n];
    let mut y2 = vec![0usize; n];
    for t in 0..n {
        let row = cb.cfg.ch.law().row(x[t]);
        let pair = sample_weights(&mut rng, row.probs()).expect("channel rows have unit mass");
        y1[t] = pair / y2_size;
        y2[t] = pair % y2_size;
    }
    let eps = cb.cfg.eps;
    let d1 = decode1(cb, &y1, eps).expect("trial sequences are in-range");
    let m12 = g12(cb, &d1);
    let d2 = decode2(cb, m12, &y2, eps).expect("trial sequences are in-range");
    let e1 = (d1.m0, d1.m1) != (m0, m1);
    let e2 = (d2.m0, d2.m2) != (m0, m2);
    (e1 as usize, e2 as usize, (e1 || e2) as usize, 0)
}

fn wilson95(successes: usize, trials: usize) -> (f64, f64) {
    let z = 1.959963984540054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z * ((p * (1.0 - p) + z * z / (4.0 * n)) / n).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LeakageMethod {
    Exact,
    Sampled,
}

/// Information leaked to receiver 2 about the confidential message.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeakageReport {
    /// `I(M1; M12, Y2^n)` in bits, counting the conveyed bin index.
    pub leakage_bits: f64,
    /// `I(M1; Y2^n)` in bits, from the channel output alone.
    pub output_only_bits: f64,
    pub method: LeakageMethod,
    /// Sample count when estimated rather than enumerated.
    pub trials: Option<usize>,
}

/// Computes the leakage exactly by enumerating the joint law of
/// `(M1, M12, Y2^n)`: uniform messages and secrecy bins, the encoder's
/// likelihood weights over bin members, and the product channel rows to
/// receiver 2, accumulated in log space cell by cell.
///
/// The cooperation index entering the joint is the bin of the true cloud
/// center, the quantity the code actually pins down; decoding noise can
/// only degrade it.
pub fn exact_leakage(cb: &BcCodebook) -> Result<LeakageReport> {
    let c = cb.counts;
    if c.m1 == 1 {
        // A constant confidential message carries no information, so both
        // measures are identically zero; skip the enumeration.
        return Ok(LeakageReport {
            leakage_bits: 0.0,
            output_only_bits: 0.0,
            method: LeakageMethod::Exact,
            trials: None,
        });
    }
    let n = cb.cfg.n;
    let y2_size = cb.cfg.ch.y2_size();
    let y2_cells = (y2_size as u128).pow(n as u32);
    let message_space =
        c.mp() as u128 * c.m1 as u128 * c.m22 as u128 * c.mw as u128 * c.mi as u128;
    let needed = y2_cells.saturating_mul(message_space);
    if needed > SEARCH_BUDGET {
        return Err(SimError::Budget {
            detail: "exact leakage enumeration",
            needed,
            budget: SEARCH_BUDGET,
        });
    }
    let y2n = y2_cells as usize;
    let mut acc = vec![Log2Sum::new(); c.m1 * c.cells * y2n];
    let log_uniform = -((c.mp() * c.m1 * c.m22 * c.mw) as f64).log2();
    let mut u0 = vec![0usize; n];
    let mut u1 = vec![0usize; n];
    let mut u2 = vec![0usize; n];
    let mut prod = vec![0.0; y2n];
    let mut rows: Vec<&[f64]> = Vec::with_capacity(n);
    for mp in 0..c.mp() {
        cb.u0_into(mp, &mut u0);
        let m12 = cb.bin_of(mp);
        for m22 in 0..c.m22 {
            cb.u2_into(mp, m22, &u0, &mut u2);
            for m1 in 0..c.m1 {
                for w in 0..c.mw {
                    let weights = cb.bin_weights(mp, m1, w, &u0, &u2);
                    let denom: f64 = weights.iter().sum();
                    if !(denom > 0.0) {
                        return Err(SimError::EncoderFailure(format!(
                            "bin (mp={mp}, m1={m1}, m22={m22}, w={w})"
                        )));
                    }
                    for (i, &wt) in weights.iter().enumerate() {
                        if wt <= 0.0 {
                            continue;
                        }
                        let coef_log = log_uniform + (wt / denom).log2();
                        cb.u1_into(mp, m1, w, i, &u0, &mut u1);
                        rows.clear();
                        for t in 0..n {
                            let from = (u0[t] * cb.u1_size + u1[t]) * cb.u2_size + u2[t];
                            rows.push(cb.q_y2_given_u.row(from).probs());
                        }
                        fill_product(&rows, y2_size, &mut prod);
                        let base = (m1 * c.cells + m12) * y2n;
                        for (rank, &p) in prod.iter().enumerate() {
                            if p > 0.0 {
                                acc[base + rank].push(coef_log + p.log2());
                            }
                        }
                    }
                }
            }
        }
    }

    // The accumulated joint has at most 2^24 cells, far above underflow, so
    // the final information measures can live in linear space.
    let joint: Vec<f64> = acc
        .iter()
        .map(|cell| {
            let v = cell.value();
            if v == f64::NEG_INFINITY {
                0.0
            } else {
                v.exp2()
            }
        })
        .collect();
    let rest = c.cells * y2n;
    let mut p_m1 = vec![0.0; c.m1];
    let mut p_rest = vec![0.0; rest];
    for m1 in 0..c.m1 {
        for r in 0..rest {
            let p = joint[m1 * rest + r];
            p_m1[m1] += p;
            p_rest[r] += p;
        }
    }
    let mut leakage_bits = 0.0;
    for m1 in 0..c.m1 {
        for r in 0..rest {
            let p = joint[m1 * rest + r];
            if p > 0.0 {
                leakage_bits += p * (p.log2() - p_m1[m1].log2() - p_rest[r].log2());
            }
        }
    }
    let mut marginal = vec![0.0; c.m1 * y2n];
    let mut p_y2 = vec![0.0; y2n];
    for m1 in 0..c.m1 {
        for m12 in 0..c.cells {
            for rank in 0..y2n {
                let p = joint[(m1 * c.cells + m12) * y2n + rank];
                marginal[m1 * y2n + rank] += p;
                p_y2[rank] += p;
            }
        }
    }
    let mut output_only_bits = 0.0;
    for m1 in 0..c.m1 {
        for rank in 0..y2n {
            let p = marginal[m1 * y2n + rank];
            if p > 0.0 {
                output_only_bits += p * (p.log2() - p_m1[m1].log2() - p_y2[rank].log2());
            }
        }
    }
    Ok(LeakageReport {
        leakage_bits,
        output_only_bits,
        method: LeakageMethod::Exact,
        trials: None,
    })
}
