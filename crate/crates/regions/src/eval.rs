use probkit::{compose, cond_entropy, joint_entropy, mutual_info, JointPmf, Pmf};

use crate::auxdist::AuxPmf;
use crate::bounds::RateBounds;
use crate::channel::BcChannel;
use crate::error::{RegionError, Result};

fn check_input_size(joint: &JointPmf, ch: &BcChannel) -> Result<()> {
    let x = joint.axis_size("X")?;
    if x != ch.x_size() {
        return Err(RegionError::InvalidParam(format!(
            "input axis has size {}, channel expects {}",
            x,
            ch.x_size()
        )));
    }
    Ok(())
}

/// Evaluates the achievable-rate ceilings of the cooperative secrecy inner
/// bound at one auxiliary choice `(U0, U1, U2, X)`.
///
/// Labels: `R1`, `R0+R1`, `R0+R2`, `sum` (the latter capping `R0+R1+R2`).
pub fn inner_bound_eval(aux: &AuxPmf, ch: &BcChannel, r12: f64) -> Result<RateBounds> {
    check_input_size(aux.joint(), ch)?;
    let j = ch.join_outputs(aux.joint())?;
    let i_u1_y1_g0 = mutual_info(&j, &["U1"], &["Y1"], &["U0"])?;
    let i_u1_u2y2_g0 = mutual_info(&j, &["U1"], &["U2", "Y2"], &["U0"])?;
    let i_u0u1_y1 = mutual_info(&j, &["U0", "U1"], &["Y1"], &[])?;
    let i_u0u2_y2 = mutual_info(&j, &["U0", "U2"], &["Y2"], &[])?;
    let i_u2_y2_g0 = mutual_info(&j, &["U2"], &["Y2"], &["U0"])?;

    let mut b = RateBounds::new(r12);
    b.push("R1", i_u1_y1_g0 - i_u1_u2y2_g0);
    b.push("R0+R1", i_u0u1_y1 - i_u1_u2y2_g0);
    b.push("R0+R2", i_u0u2_y2 + r12);
    b.push("sum", i_u0u1_y1 + i_u2_y2_g0 - i_u1_u2y2_g0);
    Ok(b)
}

/// Evaluates the secrecy-capacity region of a semi-deterministic channel at
/// one auxiliary choice, a joint over `(W, V, X)`.
///
/// Labels: `R1`, `R0+R1`, `R0+R2`, `sum`.
pub fn sd_region_eval(aux: &JointPmf, ch: &BcChannel, r12: f64) -> Result<RateBounds> {
    if !ch.is_semi_deterministic() {
        return Err(RegionError::WrongStructure {
            expected: "semi-deterministic",
        });
    }
    let names: Vec<&str> = aux.axes().iter().map(|a| a.name.as_str()).collect();
    if names != ["W", "V", "X"] {
        return Err(RegionError::InvalidParam(format!(
            "semi-deterministic evaluator needs axes (W, V, X), got {:?}",
            names
        )));
    }
    let x = ch.x_size();
    for (name, cap) in [("W", x + 3), ("V", x)] {
        let size = aux.axis_size(name)?;
        if size > cap {
            return Err(RegionError::CardinalityCap {
                axis: if name == "W" { "W" } else { "V" },
                size,
                cap,
            });
        }
    }
    check_input_size(aux, ch)?;
    let j = ch.join_outputs(aux)?;
    let h_y1_wvy2 = cond_entropy(&j, &["Y1"], &["W", "V", "Y2"])?;
    let i_w_y1 = mutual_info(&j, &["W"], &["Y1"], &[])?;
    let i_wv_y2 = mutual_info(&j, &["W", "V"], &["Y2"], &[])?;
    let i_v_y2_gw = mutual_info(&j, &["V"], &["Y2"], &["W"])?;

    let mut b = RateBounds::new(r12);
    b.push("R1", h_y1_wvy2);
    b.push("R0+R1", h_y1_wvy2 + i_w_y1);
    b.push("R0+R2", i_wv_y2 + r12);
    b.push("sum", h_y1_wvy2 + i_v_y2_gw + i_w_y1);
    Ok(b)
}

/// Evaluates the secrecy-capacity region of a physically degraded channel at
/// one auxiliary choice, a joint over `(W, X)`.
///
/// Labels: `R1`, `R0+R2`, `sum`.
pub fn pd_region_eval(aux: &JointPmf, ch: &BcChannel, r12: f64) -> Result<RateBounds> {
    if !ch.is_physically_degraded() {
        return Err(RegionError::WrongStructure {
            expected: "physically degraded",
        });
    }
    let names: Vec<&str> = aux.axes().iter().map(|a| a.name.as_str()).collect();
    if names != ["W", "X"] {
        return Err(RegionError::InvalidParam(format!(
            "degraded evaluator needs axes (W, X), got {:?}",
            names
        )));
    }
    let w_size = aux.axis_size("W")?;
    if w_size > ch.x_size() + 2 {
        return Err(RegionError::CardinalityCap {
            axis: "W",
            size: w_size,
            cap: ch.x_size() + 2,
        });
    }
    check_input_size(aux, ch)?;
    let j = ch.join_outputs(aux)?;
    let i_x_y1_gw = mutual_info(&j, &["X"], &["Y1"], &["W"])?;
    let i_x_y2_gw = mutual_info(&j, &["X"], &["Y2"], &["W"])?;
    let i_w_y2 = mutual_info(&j, &["W"], &["Y2"], &[])?;
    let i_x_y1 = mutual_info(&j, &["X"], &["Y1"], &[])?;

    let mut b = RateBounds::new(r12);
    b.push("R1", i_x_y1_gw - i_x_y2_gw);
    b.push("R0+R2", i_w_y2 + r12);
    b.push("sum", i_x_y1 - i_x_y2_gw);
    Ok(b)
}

/// Evaluates the no-common-message secrecy region of a channel whose outputs
/// are both deterministic functions of the input, at one input distribution.
///
/// Labels: `R1`, `R2`, `sum`.
pub fn dbc_region_eval(qx: &Pmf, ch: &BcChannel, r12: f64) -> Result<RateBounds> {
    if !ch.is_deterministic() {
        return Err(RegionError::WrongStructure {
            expected: "deterministic",
        });
    }
    if qx.len() != ch.x_size() {
        return Err(RegionError::InvalidParam(format!(
            "input distribution has {} letters, channel expects {}",
            qx.len(),
            ch.x_size()
        )));
    }
    let j = compose(qx, ch.law())?;
    let h_y1_y2 = cond_entropy(&j, &["Y1"], &["Y2"])?;
    let h_y2 = joint_entropy(&j, &["Y2"])?;
    let h_y1y2 = joint_entropy(&j, &["Y1", "Y2"])?;

    let mut b = RateBounds::new(r12);
    b.push("R1", h_y1_y2);
    b.push("R2", h_y2 + r12);
    b.push("sum", h_y1y2);
    Ok(b)
}

/// Evaluates the no-secrecy inner bound (private-message rates without any
/// equivocation constraint) at one auxiliary choice `(U0, U1, U2, X)`.
///
/// With `restricted` set, the first-receiver ceiling uses the tighter form
/// that excludes rate splitting through the common layer.
///
/// Labels: `R1`, `R2`, `R1+R2a`, `R1+R2b` (the region caps `R1 + R2` by the
/// smaller of the two sum entries).
pub fn nosec_region_eval(
    aux: &AuxPmf,
    ch: &BcChannel,
    r12: f64,
    restricted: bool,
) -> Result<RateBounds> {
    check_input_size(aux.joint(), ch)?;
    let j = ch.join_outputs(aux.joint())?;
    let i_u0u1_y1 = mutual_info(&j, &["U0", "U1"], &["Y1"], &[])?;
    let i_u0u2_y2 = mutual_info(&j, &["U0", "U2"], &["Y2"], &[])?;
    let i_u1_y1_g0 = mutual_info(&j, &["U1"], &["Y1"], &["U0"])?;
    let i_u2_y2_g0 = mutual_info(&j, &["U2"], &["Y2"], &["U0"])?;
    let i_u1_u2_g0 = mutual_info(&j, &["U1"], &["U2"], &["U0"])?;

    let r1 = if restricted {
        i_u1_y1_g0 + (i_u2_y2_g0 - i_u1_u2_g0).max(0.0)
    } else {
        i_u0u1_y1
    };

    let mut b = RateBounds::new(r12);
    b.push("R1", r1);
    b.push("R2", i_u0u2_y2 + r12);
    b.push("R1+R2a", i_u0u1_y1 + i_u2_y2_g0 - i_u1_u2_g0);
    b.push("R1+R2b", i_u1_y1_g0 + i_u0u2_y2 - i_u1_u2_g0 + r12);
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use probkit::axis;
    use std::collections::HashMap;

    const TOL: f64 = 1e-9;

    fn noiseless_bit_channel() -> BcChannel {
        // Y1 = X perfectly, Y2 constant.
        let rows = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        BcChannel::new(2, 2, 1, rows, crate::channel::StructureKind::General).unwrap()
    }

    fn aux_identity_u1(x_size: usize) -> AuxPmf {
        let axes = vec![
            axis("U0", 1),
            axis("U1", x_size),
            axis("U2", 1),
            axis("X", x_size),
        ];
        let joint = JointPmf::from_fn(axes, |idx| {
            if idx[1] == idx[3] {
                1.0 / x_size as f64
            } else {
                0.0
            }
        })
        .unwrap();
        AuxPmf::new(joint).unwrap()
    }

    #[test]
    fn degenerate_aux_gives_zero_rates() {
        let ch = noiseless_bit_channel();
        let axes = vec![axis("U0", 1), axis("U1", 1), axis("U2", 1), axis("X", 2)];
        let joint = JointPmf::from_fn(axes, |idx| if idx[3] == 0 { 1.0 } else { 0.0 }).unwrap();
        let aux = AuxPmf::new(joint).unwrap();
        let b = inner_bound_eval(&aux, &ch, 0.3).unwrap();
        assert!(b.raw("R1").unwrap().abs() < TOL);
        assert!(b.raw("R0+R1").unwrap().abs() < TOL);
        assert!((b.raw("R0+R2").unwrap() - 0.3).abs() < TOL);
        assert!(b.raw("sum").unwrap().abs() < TOL);
    }

    #[test]
    fn noiseless_bit_reaches_rate_one() {
        let ch = noiseless_bit_channel();
        let aux = aux_identity_u1(2);
        let b = inner_bound_eval(&aux, &ch, 0.0).unwrap();
        assert!((b.raw("R1").unwrap() - 1.0).abs() < TOL);
        assert!((b.raw("sum").unwrap() - 1.0).abs() < TOL);
    }

    /// Entropy of grouped cells computed straight from a flat cell list,
    /// bypassing the tensor marginalization code path.
    fn brute_entropy(cells: &[(Vec<usize>, f64)], keep: &[usize]) -> f64 {
        let mut acc: HashMap<Vec<usize>, f64> = HashMap::new();
        for (idx, p) in cells {
            let key: Vec<usize> = keep.iter().map(|&k| idx[k]).collect();
            *acc.entry(key).or_insert(0.0) += p;
        }
        acc.values()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum()
    }

    fn brute_mi(
        cells: &[(Vec<usize>, f64)],
        a: &[usize],
        b: &[usize],
        c: &[usize],
    ) -> f64 {
        let ac: Vec<usize> = a.iter().chain(c).copied().collect();
        let bc: Vec<usize> = b.iter().chain(c).copied().collect();
        let abc: Vec<usize> = a.iter().chain(b).chain(c).copied().collect();
        brute_entropy(cells, &ac) + brute_entropy(cells, &bc)
            - brute_entropy(cells, &abc)
            - brute_entropy(cells, c)
    }

    fn cells_of(j: &JointPmf) -> Vec<(Vec<usize>, f64)> {
        let sizes: Vec<usize> = j.axes().iter().map(|a| a.size).collect();
        let mut idx = vec![0usize; sizes.len()];
        (0..j.n_cells())
            .map(|r| {
                let mut rem = r;
                for (k, &s) in sizes.iter().enumerate().rev() {
                    idx[k] = rem % s;
                    rem /= s;
                }
                (idx.clone(), j.prob(&idx))
            })
            .collect()
    }

    #[test]
    fn inner_bound_matches_brute_force_on_random_aux() {
        let ch = crate::bbc::bbc_channel();
        for seed in 0..5u64 {
            let aux = AuxPmf::random(3, 2, 2, 3, seed).unwrap();
            let j = ch.join_outputs(aux.joint()).unwrap();
            let cells = cells_of(&j);
            // Axis order: U0 U1 U2 X Y1 Y2.
            let r1 = brute_mi(&cells, &[1], &[4], &[0]) - brute_mi(&cells, &[1], &[2, 5], &[0]);
            let r01 =
                brute_mi(&cells, &[0, 1], &[4], &[]) - brute_mi(&cells, &[1], &[2, 5], &[0]);
            let r02 = brute_mi(&cells, &[0, 2], &[5], &[]) + 0.15;
            let sum = brute_mi(&cells, &[0, 1], &[4], &[]) + brute_mi(&cells, &[2], &[5], &[0])
                - brute_mi(&cells, &[1], &[2, 5], &[0]);
            let b = inner_bound_eval(&aux, &ch, 0.15).unwrap();
            assert!((b.raw("R1").unwrap() - r1).abs() < TOL);
            assert!((b.raw("R0+R1").unwrap() - r01).abs() < TOL);
            assert!((b.raw("R0+R2").unwrap() - r02).abs() < TOL);
            assert!((b.raw("sum").unwrap() - sum).abs() < TOL);
        }
    }

    #[test]
    fn sd_eval_matches_brute_force_on_random_aux() {
        use rand::SeedableRng;
        let ch = crate::bbc::bbc_channel();
        for seed in 0..5u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let w = crate::auxdist::dirichlet_flat(&mut rng, 2 * 2 * 3);
            let aux =
                JointPmf::new(vec![axis("W", 2), axis("V", 2), axis("X", 3)], w).unwrap();
            let j = ch.join_outputs(&aux).unwrap();
            let cells = cells_of(&j);
            // Axis order: W V X Y1 Y2.
            let h_y1_wvy2 =
                brute_entropy(&cells, &[3, 0, 1, 4]) - brute_entropy(&cells, &[0, 1, 4]);
            let i_w_y1 = brute_mi(&cells, &[0], &[3], &[]);
            let i_wv_y2 = brute_mi(&cells, &[0, 1], &[4], &[]);
            let i_v_y2_gw = brute_mi(&cells, &[1], &[4], &[0]);
            let b = sd_region_eval(&aux, &ch, 0.1).unwrap();
            assert!((b.raw("R1").unwrap() - h_y1_wvy2).abs() < TOL);
            assert!((b.raw("R0+R1").unwrap() - (h_y1_wvy2 + i_w_y1)).abs() < TOL);
            assert!((b.raw("R0+R2").unwrap() - (i_wv_y2 + 0.1)).abs() < TOL);
            assert!(
                (b.raw("sum").unwrap() - (h_y1_wvy2 + i_v_y2_gw + i_w_y1)).abs() < TOL
            );
        }
    }

    #[test]
    fn pd_eval_with_constant_w_collapses_to_marginal_difference() {
        let ch = crate::bbc::pd_bbc_channel();
        let qx = [0.3, 0.45, 0.25];
        let aux = JointPmf::from_fn(vec![axis("W", 1), axis("X", 3)], |idx| qx[idx[1]]).unwrap();
        let j = ch.join_outputs(&aux).unwrap();
        let i_x_y1 = mutual_info(&j, &["X"], &["Y1"], &[]).unwrap();
        let i_x_y2 = mutual_info(&j, &["X"], &["Y2"], &[]).unwrap();
        let b = pd_region_eval(&aux, &ch, 0.05).unwrap();
        assert!((b.raw("R1").unwrap() - (i_x_y1 - i_x_y2)).abs() < TOL);
        assert!((b.raw("sum").unwrap() - (i_x_y1 - i_x_y2)).abs() < TOL);
        assert!((b.raw("R0+R2").unwrap() - 0.05).abs() < TOL);
    }

    #[test]
    fn pd_eval_with_w_equal_x_gives_zero_private_rate() {
        let ch = crate::bbc::pd_bbc_channel();
        let qx = [0.2, 0.5, 0.3];
        let aux = JointPmf::from_fn(vec![axis("W", 3), axis("X", 3)], |idx| {
            if idx[0] == idx[1] {
                qx[idx[1]]
            } else {
                0.0
            }
        })
        .unwrap();
        let b = pd_region_eval(&aux, &ch, 0.0).unwrap();
        assert!(b.raw("R1").unwrap().abs() < TOL);
    }

    #[test]
    fn dbc_eval_matches_hand_values() {
        let ch = crate::bbc::bbc_channel();
        let r12 = 0.1;

        // Point mass: everything degenerate.
        let b = dbc_region_eval(&Pmf::point_mass(3, 0), &ch, r12).unwrap();
        assert!(b.raw("R1").unwrap().abs() < TOL);
        assert!((b.raw("R2").unwrap() - r12).abs() < TOL);

        // (alpha, beta) = (0, 1/2): Y2 constant, Y1 a fair bit.
        let b = dbc_region_eval(&Pmf::new(vec![0.0, 0.5, 0.5]).unwrap(), &ch, r12).unwrap();
        assert!((b.raw("R1").unwrap() - 1.0).abs() < TOL);
        assert!((b.raw("R2").unwrap() - r12).abs() < TOL);
        assert!((b.raw("sum").unwrap() - 1.0).abs() < TOL);

        // (alpha, beta) = (1/2, 1/4).
        let b = dbc_region_eval(&Pmf::new(vec![0.5, 0.25, 0.25]).unwrap(), &ch, r12).unwrap();
        assert!((b.raw("R1").unwrap() - 0.5).abs() < TOL);
        assert!((b.raw("R2").unwrap() - (1.0 + r12)).abs() < TOL);
        assert!((b.raw("sum").unwrap() - 1.5).abs() < TOL);
    }

    #[test]
    fn nosec_with_degenerate_common_parts_reduces_to_point_to_point() {
        let ch = noiseless_bit_channel();
        let aux = aux_identity_u1(2);
        for restricted in [false, true] {
            let b = nosec_region_eval(&aux, &ch, 0.0, restricted).unwrap();
            assert!((b.raw("R1").unwrap() - 1.0).abs() < TOL);
            assert!(b.raw("R2").unwrap().abs() < TOL);
        }
    }

    #[test]
    fn nosec_on_degraded_channel_recovers_degraded_no_secrecy_region() {
        // Embedding W -> U0, X -> U1, constant U2 must reproduce the
        // degraded-channel region without secrecy: the second sum entry
        // equals R1 + R2 (inactive), the first equals I(X; Y1).
        use rand::SeedableRng;
        let ch = crate::bbc::pd_bbc_channel();
        for seed in 0..4u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xd00d);
            let w = crate::auxdist::dirichlet_flat(&mut rng, 2 * 3);
            let wx = JointPmf::new(vec![axis("W", 2), axis("X", 3)], w).unwrap();
            let aux_joint = JointPmf::from_fn(
                vec![axis("U0", 2), axis("U1", 3), axis("U2", 1), axis("X", 3)],
                |idx| {
                    if idx[1] == idx[3] {
                        wx.prob(&[idx[0], idx[3]])
                    } else {
                        0.0
                    }
                },
            )
            .unwrap();
            let aux = AuxPmf::new(aux_joint).unwrap();
            let b = nosec_region_eval(&aux, &ch, 0.2, true).unwrap();
            let j = ch.join_outputs(aux.joint()).unwrap();
            let i_x_y1_gw = mutual_info(&j, &["U1"], &["Y1"], &["U0"]).unwrap();
            let i_x_y1 = mutual_info(&j, &["U1"], &["Y1"], &[]).unwrap();
            let i_w_y2 = mutual_info(&j, &["U0"], &["Y2"], &[]).unwrap();
            assert!((b.raw("R1").unwrap() - i_x_y1_gw).abs() < TOL);
            assert!((b.raw("R2").unwrap() - (i_w_y2 + 0.2)).abs() < TOL);
            assert!((b.raw("R1+R2a").unwrap() - i_x_y1).abs() < TOL);
            let split_sum = b.raw("R1").unwrap() + b.raw("R2").unwrap();
            assert!((b.raw("R1+R2b").unwrap() - split_sum).abs() < TOL);
        }
    }

    #[test]
    fn wrong_structure_is_rejected() {
        let ch = noiseless_bit_channel();
        let aux = JointPmf::from_fn(vec![axis("W", 1), axis("X", 2)], |_| 0.5).unwrap();
        assert!(matches!(
            pd_region_eval(&aux, &ch, 0.0),
            Err(RegionError::WrongStructure { .. })
        ));
        assert!(matches!(
            dbc_region_eval(&Pmf::uniform(2), &ch, 0.0),
            Err(RegionError::WrongStructure { .. })
        ));
    }
}
