//! Sampled outer envelope of a rate region in the `(R1, R2)` plane: draw
//! auxiliary distributions, evaluate the chosen family of ceilings, refine
//! promising draws by stochastic hill climbing, add a deterministic
//! structured grid, and keep the convex upper frontier of everything seen.

use probkit::{axis, Axis, JointPmf, Pmf};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::auxdist::{dirichlet_flat, AuxPmf};
use crate::bbc::{alpha_ladder, face_frontier_points};
use crate::bounds::RateBounds;
use crate::channel::BcChannel;
use crate::error::{RegionError, Result};
use crate::eval::{
    dbc_region_eval, inner_bound_eval, nosec_region_eval, pd_region_eval, sd_region_eval,
};

/// Which family of single-letter ceilings the sampler unions over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Inner,
    Sd,
    Pd,
    Dbc,
    Nosec,
    NosecRestricted,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SamplerParams {
    /// Number of random auxiliary draws. Zero short-circuits to the origin.
    pub n_samples: usize,
    pub seed: u64,
    /// Perturbation steps applied to each draw along its scalarized
    /// objective direction.
    pub hill_climb_steps: usize,
    /// Optional ceiling on every auxiliary alphabet, below the defaults
    /// implied by the family's cardinality caps.
    pub card_limit: Option<usize>,
}

impl Default for SamplerParams {
    fn default() -> Self {
        Self {
            n_samples: 256,
            seed: 1,
            hill_climb_steps: 120,
            card_limit: None,
        }
    }
}

/// Convex frontier estimate. `sources[i]` identifies what produced boundary
/// vertex `i`: the index of a random sample, or a structured-grid entry
/// (high bit set), or `u64::MAX` for the origin anchor.
#[derive(Debug, Clone, Serialize)]
pub struct RegionApprox {
    pub family: Family,
    pub r12: f64,
    pub r0: f64,
    pub boundary: Vec<(f64, f64)>,
    pub sources: Vec<u64>,
}

pub const STRUCTURED_BIT: u64 = 1 << 63;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn sample_seed(seed: u64, k: u64) -> u64 {
    splitmix(seed ^ splitmix(k.wrapping_add(0x51ED_2701)))
}

/// Auxiliary axis sizes for random draws, after the optional card limit.
fn family_dims(family: Family, x: usize, limit: Option<usize>) -> Vec<(&'static str, usize)> {
    let cap = |s: usize| limit.map_or(s, |l| s.min(l)).max(1);
    match family {
        Family::Inner | Family::Nosec | Family::NosecRestricted => vec![
            ("U0", cap(x + 5)),
            ("U1", cap(x)),
            ("U2", cap(x)),
        ],
        Family::Sd => vec![("W", cap(x + 3)), ("V", cap(x))],
        Family::Pd => vec![("W", cap(x + 2))],
        Family::Dbc => vec![],
    }
}

fn eval_weights(
    family: Family,
    ch: &BcChannel,
    r12: f64,
    dims: &[(&'static str, usize)],
    weights: Vec<f64>,
) -> Result<RateBounds> {
    let mut axes: Vec<Axis> = dims.iter().map(|&(n, s)| axis(n, s)).collect();
    axes.push(axis("X", ch.x_size()));
    match family {
        Family::Dbc => dbc_region_eval(&Pmf::new(weights)?, ch, r12),
        Family::Pd => pd_region_eval(&JointPmf::new(axes, weights)?, ch, r12),
        Family::Sd => sd_region_eval(&JointPmf::new(axes, weights)?, ch, r12),
        Family::Inner => {
            let aux = AuxPmf::new(JointPmf::new(axes, weights)?)?;
            inner_bound_eval(&aux, ch, r12)
        }
        Family::Nosec | Family::NosecRestricted => {
            let aux = AuxPmf::new(JointPmf::new(axes, weights)?)?;
            nosec_region_eval(&aux, ch, r12, family == Family::NosecRestricted)
        }
    }
}

/// Collapses labeled ceilings into `(R1 cap, R2 cap, sum cap)` at the given
/// common-message rate.
fn face_triple(family: Family, b: &RateBounds, r0: f64) -> (f64, f64, f64) {
    let get = |l: &str| b.raw(l).expect("evaluator emits fixed labels");
    match family {
        Family::Inner | Family::Sd => (
            get("R1").min(get("R0+R1") - r0),
            get("R0+R2") - r0,
            get("sum") - r0,
        ),
        Family::Pd => (get("R1"), get("R0+R2") - r0, get("sum") - r0),
        Family::Dbc => (get("R1"), get("R2"), get("sum")),
        Family::Nosec | Family::NosecRestricted => (
            get("R1"),
            get("R2"),
            get("R1+R2a").min(get("R1+R2b")),
        ),
    }
}

fn frontier_points(family: Family, b: &RateBounds, r0: f64) -> [(f64, f64); 3] {
    let (a, r2, c) = face_triple(family, b, r0);
    face_frontier_points(a, r2, c)
}

/// All ways to label `n` letters with blocks, at most `max_blocks` of them,
/// as restricted growth strings.
fn set_partitions(n: usize, max_blocks: usize) -> Vec<Vec<usize>> {
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, used: usize, n: usize, cap: usize) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=used.min(cap - 1) {
            cur.push(b);
            let next_used = used.max(b + 1);
            rec(out, cur, next_used, n, cap);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max_blocks == 0 {
        return out;
    }
    rec(&mut out, &mut Vec::new(), 0, n, max_blocks);
    out
}

/// Deterministic grid over the input simplex, denser near the boundary, plus
/// even splits of the mass left after fixing the first coordinate.
fn simplex_points(d: usize) -> Vec<Vec<f64>> {
    let vals = match d {
        0 | 1 => return vec![vec![1.0; d.min(1)]],
        2 | 3 => alpha_ladder(24),
        4 => alpha_ladder(8),
        _ => alpha_ladder(4),
    };
    let mut out = Vec::new();
    let mut cur = vec![0.0; d];
    fn rec(out: &mut Vec<Vec<f64>>, cur: &mut Vec<f64>, pos: usize, left: f64, vals: &[f64]) {
        if pos == cur.len() - 1 {
            cur[pos] = left.max(0.0);
            out.push(cur.clone());
            return;
        }
        for &v in vals {
            if v > left + 1e-12 {
                break;
            }
            cur[pos] = v;
            rec(out, cur, pos + 1, left - v, vals);
        }
    }
    rec(&mut out, &mut cur, 0, 1.0, &vals);
    for a in alpha_ladder(40) {
        let mut q = vec![(1.0 - a) / (d - 1) as f64; d];
        q[0] = a;
        out.push(q);
    }
    for q in &mut out {
        let total: f64 = q.iter().sum();
        for v in q.iter_mut() {
            *v /= total;
        }
    }
    out
}

/// Structured aux entries: `(axis sizes sans X, weight tensor)`.
fn structured_entries(
    family: Family,
    x: usize,
    limit: Option<usize>,
) -> Vec<(Vec<(&'static str, usize)>, Vec<f64>)> {
    if x > 6 {
        return Vec::new();
    }
    let capped = family_dims(family, x, limit);
    let dim_of = |name: &str| capped.iter().find(|d| d.0 == name).map(|d| d.1);
    let qxs = simplex_points(x);
    let mut out = Vec::new();
    match family {
        Family::Dbc => {
            for qx in &qxs {
                out.push((Vec::new(), qx.clone()));
            }
        }
        Family::Pd => {
            let w_cap = dim_of("W").unwrap();
            for part in set_partitions(x, w_cap.min(x)) {
                let blocks = part.iter().max().unwrap() + 1;
                for qx in &qxs {
                    let mut wts = vec![0.0; blocks * x];
                    for (letter, &q) in qx.iter().enumerate() {
                        wts[part[letter] * x + letter] = q;
                    }
                    out.push((vec![("W", blocks)], wts));
                }
            }
        }
        Family::Sd => {
            let w_cap = dim_of("W").unwrap();
            let v_cap = dim_of("V").unwrap();
            for part in set_partitions(x, x) {
                let blocks = part.iter().max().unwrap() + 1;
                for qx in &qxs {
                    if blocks <= v_cap {
                        // Constant W, V labels the blocks.
                        let mut wts = vec![0.0; blocks * x];
                        for (letter, &q) in qx.iter().enumerate() {
                            wts[part[letter] * x + letter] = q;
                        }
                        out.push((vec![("W", 1), ("V", blocks)], wts));
                    }
                    if blocks <= w_cap {
                        let mut wts = vec![0.0; blocks * x];
                        for (letter, &q) in qx.iter().enumerate() {
                            wts[part[letter] * x + letter] = q;
                        }
                        out.push((vec![("W", blocks), ("V", 1)], wts));
                    }
                }
            }
        }
        Family::Inner | Family::Nosec | Family::NosecRestricted => {
            let u0_cap = dim_of("U0").unwrap();
            let u1_cap = dim_of("U1").unwrap();
            let u2_cap = dim_of("U2").unwrap();
            if u1_cap < x {
                return Vec::new();
            }
            for part in set_partitions(x, x) {
                let blocks = part.iter().max().unwrap() + 1;
                for qx in &qxs {
                    if blocks <= u2_cap {
                        // U1 carries the input, U2 a coarsening of it.
                        let mut wts = vec![0.0; x * blocks * x];
                        for (letter, &q) in qx.iter().enumerate() {
                            wts[(letter * blocks + part[letter]) * x + letter] = q;
                        }
                        out.push((vec![("U0", 1), ("U1", x), ("U2", blocks)], wts));
                    }
                    if blocks <= u0_cap {
                        let mut wts = vec![0.0; blocks * x * x];
                        for (letter, &q) in qx.iter().enumerate() {
                            wts[(part[letter] * x + letter) * x + letter] = q;
                        }
                        out.push((vec![("U0", blocks), ("U1", x), ("U2", 1)], wts));
                    }
                }
            }
        }
    }
    out
}

fn upper_hull_tagged(mut pts: Vec<(f64, f64, u64)>) -> Vec<(f64, f64, u64)> {
    pts.retain(|p| p.0.is_finite() && p.1.is_finite());
    pts.sort_by(|a, b| {
        (a.0, a.1)
            .partial_cmp(&(b.0, b.1))
            .expect("finite coordinates")
    });
    let mut uniq: Vec<(f64, f64, u64)> = Vec::new();
    for p in pts {
        match uniq.last_mut() {
            Some(last) if last.0 == p.0 => *last = p,
            _ => uniq.push(p),
        }
    }
    let mut hull: Vec<(f64, f64, u64)> = Vec::new();
    for p in uniq {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Estimates the union region of one ceiling family over its auxiliary
/// choices, returning the convex upper frontier in the `(R1, R2)` plane at
/// fixed `r0`. Deterministic in `params.seed`, including under parallel
/// evaluation.
pub fn region_union_approx(
    ch: &BcChannel,
    family: Family,
    r12: f64,
    r0: f64,
    params: &SamplerParams,
) -> Result<RegionApprox> {
    if !(r12 >= 0.0) {
        return Err(RegionError::InvalidParam(format!(
            "r12 must be nonnegative, got {r12}"
        )));
    }
    let r0_allowed = matches!(family, Family::Inner | Family::Sd | Family::Pd);
    if r0 != 0.0 && !r0_allowed {
        return Err(RegionError::InvalidParam(
            "this family has no common-message layer; r0 must be 0".into(),
        ));
    }
    if !(r0 >= 0.0) {
        return Err(RegionError::InvalidParam(format!(
            "r0 must be nonnegative, got {r0}"
        )));
    }
    // Probe the family/channel pairing once so structural mismatches fail
    // loudly instead of vanishing inside the parallel loop.
    let dims = family_dims(family, ch.x_size(), params.card_limit);
    {
        let len = dims.iter().map(|d| d.1).product::<usize>() * ch.x_size();
        eval_weights(family, ch, r12, &dims, vec![1.0 / len as f64; len])?;
    }

    if params.n_samples == 0 {
        return Ok(RegionApprox {
            family,
            r12,
            r0,
            boundary: vec![(0.0, 0.0)],
            sources: vec![u64::MAX],
        });
    }

    let n_dirs = 21usize;
    let random_clouds: Vec<Vec<(f64, f64, u64)>> = (0..params.n_samples)
        .into_par_iter()
        .map(|k| -> Result<Vec<(f64, f64, u64)>> {
            let id = k as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(params.seed, id));
            let len = dims.iter().map(|d| d.1).product::<usize>() * ch.x_size();
            let mut w = dirichlet_flat(&mut rng, len);
            let lambda = (k % n_dirs) as f64 / (n_dirs - 1) as f64;
            let score_of = |pts: &[(f64, f64)]| -> f64 {
                pts.iter()
                    .map(|&(x, y)| lambda * x + (1.0 - lambda) * y)
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            let mut cloud = Vec::new();
            let b = eval_weights(family, ch, r12, &dims, w.clone())?;
            let pts = frontier_points(family, &b, r0);
            cloud.extend(pts.iter().map(|&(x, y)| (x, y, id)));
            let mut best_score = score_of(&pts);
            for step in 0..params.hill_climb_steps {
                let sigma = 1.5 * 0.97f64.powi(step as i32);
                let mut cand = w.clone();
                let cell = rng.gen_range(0..cand.len());
                let bump = (2.0 * rng.gen::<f64>() - 1.0) * sigma;
                cand[cell] *= bump.exp();
                let total: f64 = cand.iter().sum();
                for v in &mut cand {
                    *v /= total;
                }
                let b = eval_weights(family, ch, r12, &dims, cand.clone())?;
                let pts = frontier_points(family, &b, r0);
                let s = score_of(&pts);
                if s > best_score {
                    best_score = s;
                    w = cand;
                    cloud.extend(pts.iter().map(|&(x, y)| (x, y, id)));
                }
            }
            Ok(cloud)
        })
        .collect::<Result<_>>()?;

    let structured = structured_entries(family, ch.x_size(), params.card_limit);
    let structured_clouds: Vec<Vec<(f64, f64, u64)>> = structured
        .into_par_iter()
        .enumerate()
        .map(|(j, (sdims, wts))| -> Result<Vec<(f64, f64, u64)>> {
            let id = STRUCTURED_BIT | j as u64;
            let b = eval_weights(family, ch, r12, &sdims, wts)?;
            Ok(frontier_points(family, &b, r0)
                .iter()
                .map(|&(x, y)| (x, y, id))
                .collect())
        })
        .collect::<Result<_>>()?;

    let mut cloud = vec![(0.0, 0.0, u64::MAX)];
    cloud.extend(random_clouds.into_iter().flatten());
    cloud.extend(structured_clouds.into_iter().flatten());
    let hull = upper_hull_tagged(cloud);
    Ok(RegionApprox {
        family,
        r12,
        r0,
        boundary: hull.iter().map(|&(x, y, _)| (x, y)).collect(),
        sources: hull.iter().map(|&(_, _, id)| id).collect(),
    })
}

fn point_segment_dist(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 <= 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt()
}

fn directed_hausdorff(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    const SUBDIV: usize = 32;
    let dist_to_b = |p: (f64, f64)| -> f64 {
        if b.len() == 1 {
            return point_segment_dist(p, b[0], b[0]);
        }
        b.windows(2)
            .map(|w| point_segment_dist(p, w[0], w[1]))
            .fold(f64::INFINITY, f64::min)
    };
    let mut worst = 0.0f64;
    if a.len() == 1 {
        return dist_to_b(a[0]);
    }
    for w in a.windows(2) {
        for s in 0..=SUBDIV {
            let t = s as f64 / SUBDIV as f64;
            let p = (
                w[0].0 + t * (w[1].0 - w[0].0),
                w[0].1 + t * (w[1].1 - w[0].1),
            );
            worst = worst.max(dist_to_b(p));
        }
    }
    worst
}

/// Symmetric Hausdorff distance between two polylines, by dense sampling.
pub fn polyline_hausdorff(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bbc::{bbc_channel, bbc_secrecy_boundary, pd_bbc_channel};

    #[test]
    fn zero_budget_returns_origin() {
        let params = SamplerParams {
            n_samples: 0,
            ..Default::default()
        };
        let r = region_union_approx(&bbc_channel(), Family::Dbc, 0.1, 0.0, &params).unwrap();
        assert_eq!(r.boundary, vec![(0.0, 0.0)]);
        assert_eq!(r.sources, vec![u64::MAX]);
    }

    #[test]
    fn deterministic_in_seed() {
        let params = SamplerParams {
            n_samples: 16,
            seed: 42,
            hill_climb_steps: 10,
            card_limit: None,
        };
        let a = region_union_approx(&bbc_channel(), Family::Dbc, 0.2, 0.0, &params).unwrap();
        let b = region_union_approx(&bbc_channel(), Family::Dbc, 0.2, 0.0, &params).unwrap();
        assert_eq!(a.boundary, b.boundary);
        assert_eq!(a.sources, b.sources);
    }

    #[test]
    fn frontier_is_convex_and_starts_on_the_axis() {
        let params = SamplerParams {
            n_samples: 32,
            seed: 3,
            hill_climb_steps: 20,
            card_limit: None,
        };
        let r = region_union_approx(&bbc_channel(), Family::Dbc, 0.2, 0.0, &params).unwrap();
        assert_eq!(r.boundary[0].0, 0.0);
        for w in r.boundary.windows(2) {
            assert!(w[1].0 > w[0].0);
            assert!(w[1].1 <= w[0].1);
        }
        for w in r.boundary.windows(3) {
            let cross = (w[1].0 - w[0].0) * (w[2].1 - w[0].1)
                - (w[1].1 - w[0].1) * (w[2].0 - w[0].0);
            assert!(cross < 0.0, "hull not strictly convex at {:?}", w);
        }
    }

    #[test]
    fn dbc_union_matches_closed_form_sweep() {
        let params = SamplerParams {
            n_samples: 64,
            seed: 11,
            hill_climb_steps: 40,
            card_limit: None,
        };
        let r = region_union_approx(&bbc_channel(), Family::Dbc, 0.2, 0.0, &params).unwrap();
        let oracle = bbc_secrecy_boundary(0.2, 400);
        let d = polyline_hausdorff(&r.boundary, &oracle);
        assert!(d < 2e-3, "hausdorff {d}");
    }

    #[test]
    fn degraded_union_matches_the_deterministic_sweep() {
        let params = SamplerParams {
            n_samples: 48,
            seed: 7,
            hill_climb_steps: 30,
            card_limit: None,
        };
        let r = region_union_approx(&pd_bbc_channel(), Family::Pd, 0.2, 0.0, &params).unwrap();
        let oracle = bbc_secrecy_boundary(0.2, 400);
        let d = polyline_hausdorff(&r.boundary, &oracle);
        assert!(d < 5e-3, "hausdorff {d}");
    }

    #[test]
    fn structured_sources_are_tagged() {
        let params = SamplerParams {
            n_samples: 4,
            seed: 9,
            hill_climb_steps: 0,
            card_limit: None,
        };
        let r = region_union_approx(&bbc_channel(), Family::Dbc, 0.2, 0.0, &params).unwrap();
        assert!(r
            .sources
            .iter()
            .any(|&s| s != u64::MAX && s & STRUCTURED_BIT != 0));
    }

    #[test]
    fn r0_requires_a_common_message_family() {
        let err =
            region_union_approx(&bbc_channel(), Family::Dbc, 0.2, 0.1, &Default::default())
                .unwrap_err();
        assert!(matches!(err, RegionError::InvalidParam(_)));
    }

    #[test]
    fn hausdorff_basics() {
        let a = vec![(0.0, 1.0), (1.0, 0.0)];
        let b = vec![(0.0, 1.1), (1.0, 0.1)];
        let d = polyline_hausdorff(&a, &b);
        assert!((d - 0.1).abs() < 1e-9);
        assert_eq!(polyline_hausdorff(&a, &a), 0.0);
    }
}
