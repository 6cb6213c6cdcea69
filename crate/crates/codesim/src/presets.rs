//! Frozen demonstration instances behind the command-line presets and the
//! acceptance experiments. Each builder fixes a channel geometry and rate
//! point whose qualitative behaviour (divergence decay, error-rate decay,
//! leakage gap) is the point of the experiment; only blocklength and seed
//! vary.

use probkit::binary::{bconv, hb, hb_inv};
use probkit::{axis, JointPmf};
use regions::{AuxPmf, BcChannel, StructureKind};

use crate::bc::{BcCodeConfig, BcRates, DEFAULT_DECODER_EPS};
use crate::error::Result;
use crate::resolvability::{ResolvabilityProblem, AXIS_S, AXIS_S0, AXIS_U, AXIS_V};

/// Per-letter rate carried by the bin-member index in the demo instance,
/// chosen so the index count is exactly five at blocklength five.
fn demo_index_rate() -> f64 {
    5f64.log2() / 5.0
}

fn flip(a: usize, b: usize, p: f64) -> f64 {
    if a == b {
        1.0 - p
    } else {
        p
    }
}

/// Finds the root of a decreasing function on `[lo, hi]` by bisection.
fn solve_decreasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, target: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The resolvability instance behind the `lemma1-demo` preset: two parallel
/// binary symmetric chains `S_j → U_j → V_j` (no common state), with flip
/// probabilities tuned so the bin-member rate floor `I(U; S)` and the total
/// rate floor `I(U; V, S)` land 0.1 bits under the preset rates
/// `rp = log2(5)/5` and `rp + rt = log2(5)/5 + 1`. With both margins at
/// +0.1 bits the induced output law drifts toward the product target as the
/// blocklength grows.
pub fn lemma1_demo(n: usize, seed: u64) -> Result<ResolvabilityProblem> {
    demo_problem(n, demo_index_rate(), seed)
}

/// The same chains with the bin-member rate set 0.1 bits *below* its floor:
/// bins are too sparse to cover the state sequence, so the induced law stays
/// bounded away from the target no matter the blocklength.
pub fn lemma1_demo_starved(n: usize, seed: u64) -> Result<ResolvabilityProblem> {
    let floor = demo_index_rate() - 0.1;
    demo_problem(n, floor - 0.1, seed)
}

fn demo_problem(n: usize, rp: f64, seed: u64) -> Result<ResolvabilityProblem> {
    let coverage_floor = demo_index_rate() - 0.1;
    let mu1 = hb_inv(1.0 - coverage_floor);
    let nu1 = solve_decreasing(|nu| hb(bconv(mu1, nu)) - hb(nu), 0.0, 0.5, 0.63);
    let mu2 = 0.5;
    let nu2 = hb_inv(0.63);
    let joint = JointPmf::from_fn(
        vec![
            axis(AXIS_S0, 1),
            axis(AXIS_S, 4),
            axis(AXIS_U, 4),
            axis(AXIS_V, 4),
        ],
        |idx| {
            let (s, u, v) = (idx[1], idx[2], idx[3]);
            let chain = |j: usize, mu: f64, nu: f64| {
                flip(s >> j & 1, u >> j & 1, mu) * flip(u >> j & 1, v >> j & 1, nu)
            };
            0.25 * chain(1, mu1, nu1) * chain(0, mu2, nu2)
        },
    )?;
    ResolvabilityProblem::new(joint, n, 1.0, rp, seed)
}

/// The broadcast instance behind the error-trend runs: a noiseless 8-ary
/// input split as `X = (U1, U2)`, receiver 1 reading `U1` and receiver 2
/// reading `U2`. Every rate constraint holds with at least 0.1 bits of
/// slack, so decoding errors come only from codeword collisions, whose
/// probability shrinks with the blocklength. The generous typicality slack
/// makes the decoders pure codeword-compatibility tests.
pub fn marton_trend(n: usize, seed: u64) -> Result<BcCodeConfig> {
    trend_config(n, 1.0, seed)
}

/// The trend instance with the confidential rate pushed 0.5 bits past what
/// receiver 1's observation can support, so its candidate list collides
/// almost surely.
pub fn marton_trend_overloaded(n: usize, seed: u64) -> Result<BcCodeConfig> {
    trend_config(n, 1.9, seed)
}

fn trend_config(n: usize, r1: f64, seed: u64) -> Result<BcCodeConfig> {
    let aux = AuxPmf::new(JointPmf::from_fn(
        vec![axis("U0", 1), axis("U1", 4), axis("U2", 2), axis("X", 8)],
        |idx| {
            if idx[3] == idx[1] * 2 + idx[2] {
                0.125
            } else {
                0.0
            }
        },
    )?)?;
    let rows = (0..8)
        .map(|x| {
            let mut row = vec![0.0; 8];
            row[x] = 1.0;
            row
        })
        .collect();
    let ch = BcChannel::new(8, 4, 2, rows, StructureKind::Deterministic)?;
    Ok(BcCodeConfig {
        ch,
        aux,
        n,
        rates: BcRates {
            r0: 0.0,
            r1,
            r20: 0.0,
            r22: 0.5,
            r12: 0.2,
            rt: 0.5,
            rp: 0.1,
        },
        eps: 3.0,
        seed,
    })
}

/// The broadcast instance behind the leakage comparison: the confidential
/// word carries two bits `(A, B)`, the public satellite is a noisy copy of
/// `B`, and receiver 2's channel is a binary flip whose noise level depends
/// on `B`. Receiver 2's output is therefore correlated with the
/// confidential message unless the secrecy bins soak that correlation up.
pub fn marton_leak(n: usize, seed: u64) -> Result<BcCodeConfig> {
    leak_config(n, 0.5, 0.5, seed)
}

/// The leakage instance with both secrecy-bin rates removed, the ablation
/// the double-binned code is measured against.
pub fn marton_leak_ablation(n: usize, seed: u64) -> Result<BcCodeConfig> {
    leak_config(n, 0.0, 0.0, seed)
}

fn leak_config(n: usize, rt: f64, rp: f64, seed: u64) -> Result<BcCodeConfig> {
    let aux = AuxPmf::new(JointPmf::from_fn(
        vec![axis("U0", 1), axis("U1", 4), axis("U2", 2), axis("X", 8)],
        |idx| {
            let (u1, u2, x) = (idx[1], idx[2], idx[3]);
            if x != u1 * 2 + u2 {
                return 0.0;
            }
            0.25 * flip(u1 & 1, u2, 0.25)
        },
    )?)?;
    let rows = (0..8usize)
        .map(|x| {
            let u2 = x & 1;
            let noise = if x >> 1 & 1 == 0 { 0.05 } else { 0.25 };
            let y1 = x >> 1;
            let mut row = vec![0.0; 8];
            row[y1 * 2 + u2] = 1.0 - noise;
            row[y1 * 2 + (1 - u2)] = noise;
            row
        })
        .collect();
    let ch = BcChannel::new(8, 4, 2, rows, StructureKind::SemiDeterministic)?;
    Ok(BcCodeConfig {
        ch,
        aux,
        n,
        rates: BcRates {
            r0: 0.0,
            r1: 0.5,
            r20: 0.0,
            r22: 0.0,
            r12: 0.2,
            rt,
            rp,
        },
        eps: DEFAULT_DECODER_EPS,
        seed,
    })
}
