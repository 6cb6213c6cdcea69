//! Scalar Gaussian broadcast channel with receiver noise variances
//! `n1 < n2`: closed-form secrecy and no-secrecy ceilings under a total
//! power budget, parameterized by the fraction `alpha` of power spent on
//! receiver 1's layer.

use serde::Serialize;

use crate::bounds::RateBounds;
use crate::error::{RegionError, Result};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GaussianParams {
    pub power: f64,
    pub n1: f64,
    pub n2: f64,
}

impl GaussianParams {
    pub fn new(power: f64, n1: f64, n2: f64) -> Result<Self> {
        if !(power >= 0.0) || !power.is_finite() {
            return Err(RegionError::InvalidParam(format!(
                "power must be finite and nonnegative, got {power}"
            )));
        }
        if !(n1 > 0.0) || !(n2 > n1) {
            return Err(RegionError::InvalidParam(format!(
                "need 0 < n1 < n2 so receiver 2 is the noisier one, got n1 = {n1}, n2 = {n2}"
            )));
        }
        Ok(Self { power, n1, n2 })
    }
}

fn half_log2(x: f64) -> f64 {
    0.5 * x.log2()
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(RegionError::InvalidParam(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(())
}

/// Secrecy ceilings at power split `alpha`:
/// `R1 <= 1/2 log2(1 + aP/N1) - 1/2 log2(1 + aP/N2)`,
/// `R2 <= 1/2 log2(1 + (1-a)P / (aP + N2)) + r12`,
/// `R1 + R2 <= 1/2 log2(1 + P/N1) - 1/2 log2(1 + aP/N2)`.
pub fn gaussian_secrecy_bounds(gp: GaussianParams, alpha: f64, r12: f64) -> Result<RateBounds> {
    check_alpha(alpha)?;
    let GaussianParams { power, n1, n2 } = gp;
    let a = alpha * power;
    let mut b = RateBounds::new(r12);
    b.push("R1", half_log2(1.0 + a / n1) - half_log2(1.0 + a / n2));
    b.push(
        "R2",
        half_log2(1.0 + (power - a) / (a + n2)) + r12,
    );
    b.push("sum", half_log2(1.0 + power / n1) - half_log2(1.0 + a / n2));
    Ok(b)
}

/// No-secrecy ceilings: the subtracted leakage terms disappear.
pub fn gaussian_nosecrecy_bounds(gp: GaussianParams, alpha: f64, r12: f64) -> Result<RateBounds> {
    check_alpha(alpha)?;
    let GaussianParams { power, n1, n2 } = gp;
    let a = alpha * power;
    let mut b = RateBounds::new(r12);
    b.push("R1", half_log2(1.0 + a / n1));
    b.push(
        "R2",
        half_log2(1.0 + (power - a) / (a + n2)) + r12,
    );
    b.push("sum", half_log2(1.0 + power / n1));
    Ok(b)
}

/// The amount by which dropping secrecy relaxes the `R1` face at split
/// `alpha`: `1/2 log2(1 + alpha P / N2)`.
pub fn gaussian_secrecy_shift(gp: GaussianParams, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(half_log2(1.0 + alpha * gp.power / gp.n2))
}

fn sweep(
    gp: GaussianParams,
    r12: f64,
    steps: usize,
    bounds: impl Fn(GaussianParams, f64, f64) -> Result<RateBounds>,
) -> Vec<(f64, f64)> {
    let mut cloud = vec![(0.0, 0.0)];
    for k in 0..=steps {
        let alpha = k as f64 / steps as f64;
        let b = bounds(gp, alpha, r12).expect("alpha in range");
        let (a, r2, c) = (
            b.clamped("R1").unwrap(),
            b.clamped("R2").unwrap(),
            b.clamped("sum").unwrap(),
        );
        cloud.extend_from_slice(&crate::bbc::face_frontier_points(a, r2, c));
    }
    probkit::envelope::upper_hull(&cloud)
}

/// Convex upper frontier of the secrecy region over the power split.
pub fn gaussian_secrecy_boundary(gp: GaussianParams, r12: f64, steps: usize) -> Vec<(f64, f64)> {
    sweep(gp, r12, steps, gaussian_secrecy_bounds)
}

/// Convex upper frontier of the no-secrecy region.
pub fn gaussian_nosecrecy_boundary(gp: GaussianParams, r12: f64, steps: usize) -> Vec<(f64, f64)> {
    sweep(gp, r12, steps, gaussian_nosecrecy_bounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn params() -> GaussianParams {
        GaussianParams::new(11.0, 1.0, 4.0).unwrap()
    }

    #[test]
    fn full_power_to_receiver_one() {
        let b = gaussian_secrecy_bounds(params(), 1.0, 0.0).unwrap();
        let expect = 0.5 * (12.0f64.log2() - 3.75f64.log2());
        assert!((b.raw("R1").unwrap() - expect).abs() < TOL);
        assert!(b.raw("R2").unwrap().abs() < TOL);
        assert!((b.raw("sum").unwrap() - expect).abs() < TOL);
    }

    #[test]
    fn zero_power_to_receiver_one() {
        let b = gaussian_secrecy_bounds(params(), 0.0, 0.3).unwrap();
        assert!(b.raw("R1").unwrap().abs() < TOL);
        let expect = 0.5 * (1.0f64 + 11.0 / 4.0).log2() + 0.3;
        assert!((b.raw("R2").unwrap() - expect).abs() < TOL);
    }

    #[test]
    fn relaxation_shift_identity_on_grid() {
        let gp = params();
        for k in 0..=1000 {
            let alpha = k as f64 / 1000.0;
            let s = gaussian_secrecy_bounds(gp, alpha, 0.1).unwrap();
            let ns = gaussian_nosecrecy_bounds(gp, alpha, 0.1).unwrap();
            let shift = gaussian_secrecy_shift(gp, alpha).unwrap();
            let diff = ns.raw("R1").unwrap() - s.raw("R1").unwrap();
            assert!(
                (diff - shift).abs() < TOL,
                "alpha = {alpha}: diff {diff} vs shift {shift}"
            );
            let sum_diff = ns.raw("sum").unwrap() - s.raw("sum").unwrap();
            assert!((sum_diff - shift).abs() < TOL);
            assert!((ns.raw("R2").unwrap() - s.raw("R2").unwrap()).abs() < TOL);
        }
    }

    #[test]
    fn boundary_is_convex_and_anchored() {
        let boundary = gaussian_secrecy_boundary(params(), 0.2, 2000);
        assert!(boundary[0].0.abs() < TOL);
        for w in boundary.windows(2) {
            assert!(w[1].0 > w[0].0);
            assert!(w[1].1 <= w[0].1 + 1e-12);
        }
        let max_r1 = 0.5 * (12.0f64.log2() - 3.75f64.log2());
        let last = boundary.last().unwrap();
        assert!((last.0 - max_r1).abs() < 1e-9);
    }

    #[test]
    fn parameter_validation() {
        assert!(GaussianParams::new(11.0, 4.0, 1.0).is_err());
        assert!(GaussianParams::new(-1.0, 1.0, 4.0).is_err());
        assert!(gaussian_secrecy_bounds(params(), 1.5, 0.0).is_err());
    }
}
