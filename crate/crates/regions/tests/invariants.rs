//! Structural properties every evaluator must satisfy: cooperation-rate
//! monotonicity, containment of the secrecy region in the no-secrecy one,
//! collapse identities between the general and structured evaluators, and
//! the fixed relaxation shift on degraded channels.

use probkit::{axis, mutual_info, JointPmf, Pmf};
use proptest::prelude::*;
use rand::SeedableRng;
use regions::auxdist::AuxPmf;
use regions::bbc::{bbc_channel, bbc_nosecrecy_bounds, bbc_secrecy_bounds, pd_bbc_channel};
use regions::{
    dbc_region_eval, inner_bound_eval, nosec_region_eval, pd_region_eval, sd_region_eval,
};

const TOL: f64 = 1e-9;

fn simplex2() -> impl Strategy<Value = (f64, f64)> {
    (0.0f64..1.0, 0.0f64..1.0).prop_map(|(a, b)| {
        // Uniformly folded onto alpha + beta <= 1.
        if a + b <= 1.0 {
            (a, b)
        } else {
            (1.0 - a, 1.0 - b)
        }
    })
}

fn random_wx(seed: u64, w: usize, x: usize) -> JointPmf {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..w * x)
        .map(|_| {
            use rand::Rng;
            let u: f64 = rng.gen();
            -(1.0 - u).ln()
        })
        .collect::<Vec<_>>();
    let total: f64 = weights.iter().sum();
    JointPmf::new(
        vec![axis("W", w), axis("X", x)],
        weights.iter().map(|v| v / total).collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cooperation_rate_only_helps(seed in any::<u64>(), r12 in 0.0f64..1.0, delta in 0.0f64..0.5) {
        let ch = bbc_channel();
        let aux = AuxPmf::random(3, 2, 2, 3, seed).unwrap();
        let lo = inner_bound_eval(&aux, &ch, r12).unwrap();
        let hi = inner_bound_eval(&aux, &ch, r12 + delta).unwrap();
        for (label, v) in lo.entries() {
            let w = hi.raw(label).unwrap();
            prop_assert!(w >= v - TOL, "{label} decreased: {v} -> {w}");
        }
    }

    #[test]
    fn secrecy_region_sits_inside_no_secrecy_region((alpha, beta) in simplex2(), r12 in 0.0f64..1.0) {
        let s = bbc_secrecy_bounds(alpha, beta, r12).unwrap();
        let ns = bbc_nosecrecy_bounds(alpha, beta, r12).unwrap();
        prop_assert!(ns.raw("R1").unwrap() >= s.raw("R1").unwrap() - TOL);
        prop_assert!((ns.raw("R2").unwrap() - s.raw("R2").unwrap()).abs() < TOL);
        prop_assert!((ns.raw("sum").unwrap() - s.raw("sum").unwrap()).abs() < TOL);
    }

    #[test]
    fn constant_auxiliaries_reduce_to_output_conditioning((alpha, beta) in simplex2(), r12 in 0.0f64..1.0) {
        // With both auxiliaries constant the first-receiver ceiling is
        // H(Y1 | Y2) and the others carry no channel information.
        let ch = bbc_channel();
        let qx = [alpha, beta, 1.0 - alpha - beta];
        let aux = JointPmf::from_fn(
            vec![axis("W", 1), axis("V", 1), axis("X", 3)],
            |idx| qx[idx[2]].max(0.0),
        ).unwrap();
        let b = sd_region_eval(&aux, &ch, r12).unwrap();
        let direct = dbc_region_eval(&Pmf::normalized(qx.to_vec()).unwrap(), &ch, r12).unwrap();
        prop_assert!((b.raw("R1").unwrap() - direct.raw("R1").unwrap()).abs() < TOL);
        prop_assert!((b.raw("R0+R1").unwrap() - direct.raw("R1").unwrap()).abs() < TOL);
        prop_assert!((b.raw("R0+R2").unwrap() - r12).abs() < TOL);
    }

    #[test]
    fn revealing_y2_as_v_recovers_the_closed_form((alpha, beta) in simplex2(), r12 in 0.0f64..1.0) {
        // Constant W and V equal to receiver 2's output make the
        // semi-deterministic ceilings match the closed forms exactly.
        let ch = bbc_channel();
        let h = [0usize, 1, 1];
        let qx = [alpha, beta, 1.0 - alpha - beta];
        let aux = JointPmf::from_fn(
            vec![axis("W", 1), axis("V", 2), axis("X", 3)],
            |idx| if idx[1] == h[idx[2]] { qx[idx[2]].max(0.0) } else { 0.0 },
        ).unwrap();
        let b = sd_region_eval(&aux, &ch, r12).unwrap();
        let form = bbc_secrecy_bounds(alpha, beta, r12).unwrap();
        prop_assert!((b.raw("R1").unwrap() - form.raw("R1").unwrap()).abs() < TOL);
        prop_assert!((b.raw("R0+R2").unwrap() - form.raw("R2").unwrap()).abs() < TOL);
        prop_assert!((b.raw("sum").unwrap() - form.raw("sum").unwrap()).abs() < TOL);
    }

    #[test]
    fn degraded_relaxation_shift_is_the_cross_information(seed in any::<u64>(), r12 in 0.0f64..1.0) {
        let ch = pd_bbc_channel();
        let wx = random_wx(seed, 3, 3);
        let pd = pd_region_eval(&wx, &ch, r12).unwrap();
        // No-secrecy counterpart through the general evaluator, embedding
        // W as the common auxiliary and X as receiver 1's.
        let aux = AuxPmf::new(JointPmf::from_fn(
            vec![axis("U0", 3), axis("U1", 3), axis("U2", 1), axis("X", 3)],
            |idx| if idx[1] == idx[3] { wx.prob(&[idx[0], idx[3]]) } else { 0.0 },
        ).unwrap()).unwrap();
        let ns = nosec_region_eval(&aux, &ch, r12, true).unwrap();
        let j = ch.join_outputs(&wx).unwrap();
        let shift = mutual_info(&j, &["X"], &["Y2"], &["W"]).unwrap();
        let gap = ns.raw("R1").unwrap() - pd.raw("R1").unwrap();
        prop_assert!((gap - shift).abs() < 1e-10, "gap {gap} vs shift {shift}");
    }

    #[test]
    fn no_cooperation_no_common_message_sum_face_is_inactive(seed in any::<u64>()) {
        // With constant W and r12 = 0 the sum ceiling equals the other two
        // faces stacked, so it never binds.
        let ch = bbc_channel();
        let vx = random_wx(seed, 2, 3);
        let aux = JointPmf::from_fn(vec![axis("W", 1), axis("V", 2), axis("X", 3)], |idx| {
            vx.prob(&[idx[1], idx[2]])
        })
        .unwrap();
        let b = sd_region_eval(&aux, &ch, 0.0).unwrap();
        let stacked = b.raw("R1").unwrap() + b.raw("R0+R2").unwrap();
        prop_assert!((b.raw("sum").unwrap() - stacked).abs() < TOL);
    }

    #[test]
    fn degraded_channels_collapse_the_general_bound(seed in any::<u64>(), r12 in 0.0f64..1.0) {
        // Embedding (U0, U1, U2) = (W, X, const) into the general inner
        // bound reproduces the degraded-channel ceilings exactly.
        let ch = pd_bbc_channel();
        let wx = random_wx(seed ^ 0xABCD, 2, 3);
        let aux = AuxPmf::new(JointPmf::from_fn(
            vec![axis("U0", 2), axis("U1", 3), axis("U2", 1), axis("X", 3)],
            |idx| if idx[1] == idx[3] { wx.prob(&[idx[0], idx[3]]) } else { 0.0 },
        ).unwrap()).unwrap();
        let general = inner_bound_eval(&aux, &ch, r12).unwrap();
        let direct = pd_region_eval(&wx, &ch, r12).unwrap();
        prop_assert!((general.raw("R1").unwrap() - direct.raw("R1").unwrap()).abs() < TOL);
        prop_assert!((general.raw("R0+R2").unwrap() - direct.raw("R0+R2").unwrap()).abs() < TOL);
        prop_assert!((general.raw("sum").unwrap() - direct.raw("sum").unwrap()).abs() < TOL);
    }
}
