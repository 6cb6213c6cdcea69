//! The blackboard channel: a three-letter input writes a bit for each
//! receiver through the deterministic maps `y1 = g(x)`, `y2 = h(x)` with
//! `g = [0, 0, 1]` and `h = [0, 1, 1]`. Its secrecy and no-secrecy regions
//! have closed forms in the input masses `(alpha, beta)` that this module
//! evaluates, sweeps, and optimizes exactly.

use probkit::binary::{hb, hb_inv};
use probkit::envelope::upper_hull;
use probkit::Pmf;

use crate::bounds::RateBounds;
use crate::channel::{BcChannel, StructureKind};
use crate::error::{RegionError, Result};

/// Deterministic broadcast channel with `x in {0,1,2}`, `y1 = [x = 2]`,
/// `y2 = [x >= 1]`.
pub fn bbc_channel() -> BcChannel {
    let g = [0usize, 0, 1];
    let h = [0usize, 1, 1];
    let rows = (0..3)
        .map(|x| {
            let mut row = vec![0.0; 4];
            row[g[x] * 2 + h[x]] = 1.0;
            row
        })
        .collect();
    BcChannel::new(3, 2, 2, rows, StructureKind::Deterministic).expect("static channel")
}

/// Physically degraded variant: receiver 1 sees the input itself, receiver 2
/// sees `y2 = [y1 >= 1]` computed from it.
pub fn pd_bbc_channel() -> BcChannel {
    let h = [0usize, 1, 1];
    let rows = (0..3)
        .map(|x| {
            let mut row = vec![0.0; 6];
            row[x * 2 + h[x]] = 1.0;
            row
        })
        .collect();
    BcChannel::new(3, 3, 2, rows, StructureKind::PhysicallyDegraded).expect("static channel")
}

/// Two-component input `x = (x1, x2)`: receiver 1 gets `x1` through a binary
/// symmetric channel with flip probability `eps1`, receiver 2 gets
/// `x1 XOR x2` through one with flip probability `eps2`.
pub fn semi_orthogonal_channel(eps1: f64, eps2: f64) -> Result<BcChannel> {
    for (name, e) in [("eps1", eps1), ("eps2", eps2)] {
        if !(0.0..=0.5).contains(&e) {
            return Err(RegionError::InvalidParam(format!(
                "{} must lie in [0, 1/2], got {}",
                name, e
            )));
        }
    }
    let rows = (0..4usize)
        .map(|x| {
            let x1 = x >> 1;
            let x2 = x & 1;
            let mut row = vec![0.0; 4];
            for y1 in 0..2usize {
                let p1 = if y1 == x1 { 1.0 - eps1 } else { eps1 };
                for y2 in 0..2usize {
                    let p2 = if y2 == (x1 ^ x2) { 1.0 - eps2 } else { eps2 };
                    row[y1 * 2 + y2] = p1 * p2;
                }
            }
            row
        })
        .collect();
    BcChannel::new(4, 2, 2, rows, StructureKind::General)
}

/// Input distribution `(alpha, beta, 1 - alpha - beta)` over the three
/// letters.
pub fn bbc_input(alpha: f64, beta: f64) -> Result<Pmf> {
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) || alpha + beta > 1.0 + 1e-12
    {
        return Err(RegionError::InvalidParam(format!(
            "need alpha, beta >= 0 with alpha + beta <= 1, got ({}, {})",
            alpha, beta
        )));
    }
    let gamma = (1.0 - alpha - beta).max(0.0);
    Ok(Pmf::normalized(vec![alpha, beta, gamma])?)
}

/// `(1 - alpha) * Hb(beta / (1 - alpha))`, continued by 0 as `alpha -> 1`.
fn split_entropy(alpha: f64, beta: f64) -> f64 {
    let rest = 1.0 - alpha;
    if rest <= 1e-15 {
        return 0.0;
    }
    rest * hb((beta / rest).clamp(0.0, 1.0))
}

/// Closed-form secrecy ceilings at input `(alpha, beta)`:
/// `R1 <= (1-a)Hb(b/(1-a))`, `R2 <= Hb(a) + r12`, `R1+R2 <= H(Y1, Y2)`.
pub fn bbc_secrecy_bounds(alpha: f64, beta: f64, r12: f64) -> Result<RateBounds> {
    bbc_input(alpha, beta)?;
    let mut b = RateBounds::new(r12);
    b.push("R1", split_entropy(alpha, beta));
    b.push("R2", hb(alpha) + r12);
    b.push("sum", hb(alpha) + split_entropy(alpha, beta));
    Ok(b)
}

/// Closed-form no-secrecy ceilings: the `R1` face relaxes to `Hb(a + b)`.
pub fn bbc_nosecrecy_bounds(alpha: f64, beta: f64, r12: f64) -> Result<RateBounds> {
    bbc_input(alpha, beta)?;
    let mut b = RateBounds::new(r12);
    b.push("R1", hb(alpha + beta));
    b.push("R2", hb(alpha) + r12);
    b.push("sum", hb(alpha) + split_entropy(alpha, beta));
    Ok(b)
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

fn check_rates(r1: f64, r12: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r1) {
        return Err(RegionError::InvalidParam(format!(
            "r1 must lie in [0, 1] for this channel, got {}",
            r1
        )));
    }
    if !(r12 >= 0.0) {
        return Err(RegionError::InvalidParam(format!(
            "r12 must be nonnegative, got {}",
            r12
        )));
    }
    Ok(())
}

/// Largest `R2` such that `(r1, R2)` lies in the secrecy region with
/// cooperation rate `r12`. For fixed `alpha` the best split puts
/// `R1`-capacity `1 - alpha` at receiver 1's disposal, leaving
/// `min(Hb(alpha) + r12, Hb(alpha) + (1 - alpha) - r1)`, a concave function
/// maximized by golden section.
pub fn bbc_secrecy_max_r2(r1: f64, r12: f64) -> Result<f64> {
    check_rates(r1, r12)?;
    let g = |alpha: f64| hb(alpha) + r12.min(1.0 - alpha - r1);
    let (_, best) = golden_max(g, 0.0, 1.0 - r1, 200);
    Ok(best.max(g(0.0)).max(g(1.0 - r1)).max(0.0))
}

/// Largest `R2` such that `(r1, R2)` lies in the no-secrecy region. With
/// `s = alpha + beta` the first-receiver face needs `Hb(s) >= r1`; for
/// admissible `s` the inner problem over `alpha` is concave.
pub fn bbc_nosecrecy_max_r2(r1: f64, r12: f64) -> Result<f64> {
    check_rates(r1, r12)?;
    let inner = |s: f64| -> f64 {
        if s <= 1e-15 {
            return (r12.min(-r1)).max(0.0);
        }
        let f = |alpha: f64| {
            let sum_face = hb(s) + s * hb((alpha / s).clamp(0.0, 1.0));
            (hb(alpha) + r12).min(sum_face - r1)
        };
        let (_, best) = golden_max(f, 0.0, s, 200);
        best.max(f(0.0)).max(f(s))
    };
    let s_lo = hb_inv(r1);
    let s_hi = 1.0 - s_lo;
    if s_lo > s_hi {
        return Ok(0.0);
    }
    let grid = 1024usize;
    let mut best_k = 0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..=grid {
        let s = s_lo + (s_hi - s_lo) * k as f64 / grid as f64;
        let v = inner(s);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let span = (s_hi - s_lo) / grid as f64;
    let lo = (s_lo + span * (best_k.saturating_sub(1)) as f64).max(s_lo);
    let hi = (s_lo + span * (best_k + 1) as f64).min(s_hi);
    let (_, refined) = golden_max(inner, lo, hi, 200);
    Ok(best.max(refined).max(0.0))
}

/// Smallest `r1` at which forgoing the equivocation constraint buys a
/// strictly larger `R2`; below it the two region boundaries coincide.
pub fn bbc_departure_threshold(r12: f64) -> Result<f64> {
    check_rates(0.0, r12)?;
    let gap = |r1: f64| -> f64 {
        let ns = bbc_nosecrecy_max_r2(r1, r12).expect("in range");
        let s = bbc_secrecy_max_r2(r1, r12).expect("in range");
        ns - s
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    if gap(hi) <= 1e-9 {
        return Ok(1.0);
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > 1e-9 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Alpha values packed geometrically near both endpoints so that convex
/// hulls over the sweep track the steep entropy slopes there.
pub(crate) fn alpha_ladder(linear_steps: usize) -> Vec<f64> {
    let mut v = vec![0.0, 1.0];
    let mut t = 1e-4;
    while t < 0.05 {
        v.push(t);
        v.push(1.0 - t);
        t *= 2.0;
    }
    for k in 0..=linear_steps {
        v.push(k as f64 / linear_steps as f64);
    }
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup();
    v
}

/// Upper-frontier points of the rectangle-with-diagonal region
/// `{0 <= x <= a, 0 <= y <= b, x + y <= c}`.
pub(crate) fn face_frontier_points(a: f64, b: f64, c: f64) -> [(f64, f64); 3] {
    let a = a.max(0.0);
    let b = b.max(0.0);
    let c = c.max(0.0);
    let x_max = a.min(c);
    let kink = (c - b).clamp(0.0, x_max);
    [
        (0.0, b.min(c)),
        (kink, b.min(c - kink)),
        (x_max, b.min(c - x_max)),
    ]
}

fn boundary_from_faces(faces: impl Fn(f64, f64) -> (f64, f64, f64), steps: usize) -> Vec<(f64, f64)> {
    let alphas = alpha_ladder(steps);
    let mut cloud = vec![(0.0, 0.0)];
    for &alpha in &alphas {
        let rest = 1.0 - alpha;
        for j in 0..=steps {
            let beta = rest * j as f64 / steps as f64;
            let (a, b, c) = faces(alpha, beta);
            cloud.extend_from_slice(&face_frontier_points(a, b, c));
        }
    }
    upper_hull(&cloud)
}

/// Convex upper frontier of the secrecy region in the `(R1, R2)` plane,
/// swept over the closed-form ceilings on an input grid.
pub fn bbc_secrecy_boundary(r12: f64, steps: usize) -> Vec<(f64, f64)> {
    boundary_from_faces(
        |alpha, beta| {
            (
                split_entropy(alpha, beta),
                hb(alpha) + r12,
                hb(alpha) + split_entropy(alpha, beta),
            )
        },
        steps,
    )
}

/// Convex upper frontier of the no-secrecy region.
pub fn bbc_nosecrecy_boundary(r12: f64, steps: usize) -> Vec<(f64, f64)> {
    boundary_from_faces(
        |alpha, beta| {
            (
                hb(alpha + beta),
                hb(alpha) + r12,
                hb(alpha) + split_entropy(alpha, beta),
            )
        },
        steps,
    )
}
