use probkit::{axis, JointPmf};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{RegionError, Result};

/// Joint distribution of the auxiliary triple and the channel input, with
/// axes `(U0, U1, U2, X)`. Alphabet sizes are capped at the values that
/// suffice for the inner bound: `|U0| <= |X| + 5`, `|U1| <= |X|`,
/// `|U2| <= |X|`.
#[derive(Debug, Clone)]
pub struct AuxPmf {
    joint: JointPmf,
}

pub const AXIS_U0: &str = "U0";
pub const AXIS_U1: &str = "U1";
pub const AXIS_U2: &str = "U2";
pub const AXIS_X: &str = "X";

impl AuxPmf {
    pub fn new(joint: JointPmf) -> Result<Self> {
        let names: Vec<&str> = joint.axes().iter().map(|a| a.name.as_str()).collect();
        if names != [AXIS_U0, AXIS_U1, AXIS_U2, AXIS_X] {
            return Err(RegionError::InvalidParam(format!(
                "auxiliary joint must have axes (U0, U1, U2, X), got {:?}",
                names
            )));
        }
        let x = joint.axis_size(AXIS_X)?;
        let caps = [
            (AXIS_U0, joint.axis_size(AXIS_U0)?, x + 5),
            (AXIS_U1, joint.axis_size(AXIS_U1)?, x),
            (AXIS_U2, joint.axis_size(AXIS_U2)?, x),
        ];
        for (name, size, cap) in caps {
            if size > cap {
                return Err(RegionError::CardinalityCap {
                    axis: match name {
                        AXIS_U0 => "U0",
                        AXIS_U1 => "U1",
                        _ => "U2",
                    },
                    size,
                    cap,
                });
            }
        }
        Ok(Self { joint })
    }

    pub fn joint(&self) -> &JointPmf {
        &self.joint
    }

    pub fn x_size(&self) -> usize {
        self.joint.axis_size(AXIS_X).expect("validated at construction")
    }

    /// Draws a full-support joint from the flat Dirichlet over the simplex,
    /// deterministically in `seed`.
    pub fn random(u0: usize, u1: usize, u2: usize, x: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cells = u0
            .checked_mul(u1)
            .and_then(|n| n.checked_mul(u2))
            .and_then(|n| n.checked_mul(x))
            .ok_or_else(|| RegionError::InvalidParam("alphabet product overflows".into()))?;
        let weights = dirichlet_flat(&mut rng, cells);
        let joint = JointPmf::new(
            vec![
                axis(AXIS_U0, u0),
                axis(AXIS_U1, u1),
                axis(AXIS_U2, u2),
                axis(AXIS_X, x),
            ],
            weights,
        )?;
        Self::new(joint)
    }
}

/// Samples one point from the flat Dirichlet via normalized exponentials.
pub(crate) fn dirichlet_flat<R: Rng>(rng: &mut R, cells: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..cells)
        .map(|_| {
            let u: f64 = rng.gen();
            -(1.0 - u).ln()
        })
        .collect();
    let total: f64 = w.iter().sum();
    if total <= 0.0 {
        // All draws hit the measure-zero corner; fall back to uniform.
        return vec![1.0 / cells as f64; cells];
    }
    for v in &mut w {
        *v /= total;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_draw_is_normalized_and_deterministic() {
        let a = AuxPmf::random(2, 2, 2, 3, 7).unwrap();
        let b = AuxPmf::random(2, 2, 2, 3, 7).unwrap();
        assert_eq!(a.joint().probs(), b.joint().probs());
        let mass: f64 = a.joint().probs().iter().sum();
        assert!((mass - 1.0).abs() < 1e-12);
        assert_eq!(a.joint().n_cells(), 24);
    }

    #[test]
    fn different_seeds_differ() {
        let a = AuxPmf::random(2, 2, 2, 3, 1).unwrap();
        let b = AuxPmf::random(2, 2, 2, 3, 2).unwrap();
        assert_ne!(a.joint().probs(), b.joint().probs());
    }

    #[test]
    fn caps_are_enforced() {
        let err = AuxPmf::random(9, 2, 2, 3, 0).unwrap_err();
        assert!(matches!(
            err,
            RegionError::CardinalityCap { axis: "U0", size: 9, cap: 8 }
        ));
        assert!(AuxPmf::random(8, 3, 3, 3, 0).is_ok());
        assert!(AuxPmf::random(2, 4, 2, 3, 0).is_err());
    }
}
