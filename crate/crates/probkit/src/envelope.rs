//! Upper hulls of planar point sets and the upper concave envelope of a
//! sampled function.

use crate::error::{ProbError, Result};

/// Upper convex hull (monotone chain): the concave majorant's vertices from
/// the leftmost to the rightmost point, sorted by x. Points sharing an x keep
/// only the largest y.
pub fn upper_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("non-finite coordinate"));
    pts.dedup_by(|next, prev| {
        if next.0 == prev.0 {
            prev.1 = prev.1.max(next.1);
            true
        } else {
            false
        }
    });
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// Upper concave envelope of the graph {(xs[i], ys[i])}, evaluated at `at`
/// by linear interpolation along the hull.
pub fn upper_concave_envelope(xs: &[f64], ys: &[f64], at: f64) -> Result<f64> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(ProbError::ShapeMismatch(format!(
            "{} abscissae vs {} ordinates",
            xs.len(),
            ys.len()
        )));
    }
    let pts: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
    let hull = upper_hull(&pts);
    let (lo, hi) = (hull[0].0, hull[hull.len() - 1].0);
    if at < lo - 1e-12 || at > hi + 1e-12 {
        return Err(ProbError::InvalidParam(format!(
            "evaluation point {at} outside [{lo}, {hi}]"
        )));
    }
    let at = at.clamp(lo, hi);
    let j = hull.partition_point(|&(x, _)| x <= at);
    if j == 0 {
        return Ok(hull[0].1);
    }
    if j == hull.len() {
        return Ok(hull[hull.len() - 1].1);
    }
    let (x0, y0) = hull[j - 1];
    let (x1, y1) = hull[j];
    let t = if x1 > x0 { (at - x0) / (x1 - x0) } else { 0.0 };
    Ok(y0 + t * (y1 - y0))
}
