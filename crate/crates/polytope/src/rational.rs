//! Conversions between floats, text, and exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{PolyError, Result};

/// The rational a finite float actually stores (its dyadic expansion).
pub fn exact_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or(PolyError::NotFinite(x))
}

/// Smallest-denominator rational within `tol` of `x`, found by walking the
/// continued-fraction convergents of the float's exact value.
///
/// Every comparison runs in exact arithmetic, so the result is deterministic
/// and `|rationalize(x, tol) - x| <= tol` holds by construction.
pub fn rationalize(x: f64, tol: f64) -> Result<BigRational> {
    let target = exact_from_f64(x)?;
    let tol = exact_from_f64(tol)?.abs();

    let mut a = target.floor().to_integer();
    let mut rem = &target - BigRational::from_integer(a.clone());
    let (mut h_prev, mut k_prev) = (BigInt::from(1), BigInt::from(0));
    let (mut h, mut k) = (a, BigInt::from(1));
    loop {
        let approx = BigRational::new(h.clone(), k.clone());
        if rem.is_zero() || (&target - &approx).abs() <= tol {
            return Ok(approx);
        }
        let inv = rem.recip();
        a = inv.floor().to_integer();
        rem = &inv - BigRational::from_integer(a.clone());
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
}

/// Parses `p` or `p/q` (optionally signed) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || PolyError::BadRational(s.to_string());
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = numer.trim().parse().map_err(|_| bad())?;
    let d: BigInt = denom.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Renders a rational as `p` or `p/q`, the same forms [`parse_rational`] reads.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}
