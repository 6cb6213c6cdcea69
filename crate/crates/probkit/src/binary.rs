//! Binary-entropy helpers: H₂, its inverse on [0, ½], and the binary
//! convolution a ∗ b = a(1−b) + b(1−a).

/// Binary entropy H₂(p) in bits, with H₂(0) = H₂(1) = 0.
pub fn hb(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// Inverse of H₂ on the increasing branch: returns p ∈ [0, ½] with H₂(p) = y.
pub fn hb_inv(y: f64) -> f64 {
    assert!((0.0..=1.0).contains(&y), "H₂ value out of range: {y}");
    if y <= 0.0 {
        return 0.0;
    }
    if y >= 1.0 {
        return 0.5;
    }
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hb(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Binary convolution a ∗ b = a(1−b) + b(1−a): crossover of two cascaded BSCs.
pub fn bconv(a: f64, b: f64) -> f64 {
    a * (1.0 - b) + b * (1.0 - a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hb_endpoints_and_center() {
        assert_eq!(hb(0.0), 0.0);
        assert_eq!(hb(1.0), 0.0);
        assert_eq!(hb(0.5), 1.0);
        assert!((hb(0.1) - 0.4689955935892812).abs() < 1e-15);
    }

    #[test]
    fn hb_inv_round_trip() {
        for &y in &[0.0, 0.1, 0.37, 0.63, 0.9, 1.0] {
            let p = hb_inv(y);
            assert!((hb(p) - y).abs() < 1e-12, "y = {y}");
            assert!((0.0..=0.5).contains(&p));
        }
    }

    #[test]
    fn bconv_basics() {
        assert_eq!(bconv(0.0, 0.3), 0.3);
        assert_eq!(bconv(0.5, 0.3), 0.5);
        assert!((bconv(0.1, 0.1) - 0.18).abs() < 1e-15);
    }
}
