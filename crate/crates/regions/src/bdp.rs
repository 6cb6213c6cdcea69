//! Binary dirty-paper setting: a binary symmetric channel with crossover
//! `eps` whose input is corrupted by an additive interfering bit known to
//! the encoder, active with probability `q`. Two knowledge models are
//! compared: full causal state information at both ends versus
//! encoder-side binning.

use probkit::binary::{bconv, hb};
use probkit::envelope::upper_concave_envelope;

use crate::error::{RegionError, Result};

#[derive(Debug, Clone, Copy)]
pub struct BdpParams {
    pub q: f64,
    pub eps: f64,
}

impl BdpParams {
    pub fn new(q: f64, eps: f64) -> Result<Self> {
        for (name, v) in [("q", q), ("eps", eps)] {
            if !(0.0..=0.5).contains(&v) {
                return Err(RegionError::InvalidParam(format!(
                    "{name} must lie in [0, 1/2], got {v}"
                )));
            }
        }
        Ok(Self { q, eps })
    }
}

/// Capacity with the interference known at both encoder and decoder:
/// `Hb(q * eps) - Hb(eps)` (the star denoting binary convolution).
pub fn bdp_fcsi_capacity(p: BdpParams) -> f64 {
    hb(bconv(p.q, p.eps)) - hb(p.eps)
}

/// Capacity with encoder-only knowledge, by binning against the
/// interference: the upper concave envelope of
/// `t -> max(0, Hb(t) - Hb(eps))` evaluated at `q`.
pub fn bdp_gp_capacity(p: BdpParams) -> f64 {
    const GRID: usize = 10_000;
    let mut xs = Vec::with_capacity(GRID + 1);
    let mut ys = Vec::with_capacity(GRID + 1);
    for k in 0..=GRID {
        let t = 0.5 * k as f64 / GRID as f64;
        xs.push(t);
        ys.push((hb(t) - hb(p.eps)).max(0.0));
    }
    upper_concave_envelope(&xs, &ys, p.q).expect("q lies within the grid span")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fcsi_hand_value() {
        let p = BdpParams::new(0.1, 0.1).unwrap();
        let expect = hb(0.18) - hb(0.1);
        assert!((bdp_fcsi_capacity(p) - expect).abs() < 1e-15);
        assert!((bdp_fcsi_capacity(p) - 0.21108).abs() < 1e-5);
    }

    #[test]
    fn gp_matches_chord_from_origin_oracle() {
        // Below the tangency point the envelope is the chord from (0, 0)
        // through the best (t, Hb(t) - Hb(eps)).
        let p = BdpParams::new(0.1, 0.1).unwrap();
        let mut oracle: f64 = (hb(p.q) - hb(p.eps)).max(0.0);
        for k in 1..=500_000 {
            let t = 0.5 * k as f64 / 500_000.0;
            if t <= p.q {
                continue;
            }
            let f = (hb(t) - hb(p.eps)).max(0.0);
            oracle = oracle.max(p.q * f / t);
        }
        let gp = bdp_gp_capacity(p);
        assert!((gp - oracle).abs() < 1e-6, "gp {gp} vs oracle {oracle}");
    }

    #[test]
    fn knowledge_at_decoder_strictly_helps_at_interior_points() {
        let p = BdpParams::new(0.1, 0.1).unwrap();
        let gap = bdp_fcsi_capacity(p) - bdp_gp_capacity(p);
        assert!(gap > 0.05, "gap {gap}");
    }

    #[test]
    fn capacities_coincide_at_the_endpoints() {
        for eps in [0.05, 0.1, 0.2] {
            let full = BdpParams::new(0.5, eps).unwrap();
            assert!((bdp_fcsi_capacity(full) - (1.0 - hb(eps))).abs() < 1e-12);
            assert!((bdp_gp_capacity(full) - (1.0 - hb(eps))).abs() < 1e-9);
            let none = BdpParams::new(0.0, eps).unwrap();
            assert!(bdp_fcsi_capacity(none).abs() < 1e-12);
            assert!(bdp_gp_capacity(none).abs() < 1e-9);
        }
    }
}
