//! A single closed half-space over named variables.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// The constraint `sum(coeff * var) <= rhs`.
///
/// Zero coefficients are never stored, so `coeffs()` lists exactly the
/// variables the row actually involves.  A row with no coefficients is a
/// constant fact: vacuous when `rhs >= 0`, unsatisfiable otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinIneq {
    coeffs: BTreeMap<String, BigRational>,
    rhs: BigRational,
}

impl LinIneq {
    /// Builds a row, summing repeated variables and dropping zero coefficients.
    pub fn new(coeffs: impl IntoIterator<Item = (String, BigRational)>, rhs: BigRational) -> Self {
        let mut acc: BTreeMap<String, BigRational> = BTreeMap::new();
        for (var, c) in coeffs {
            *acc.entry(var).or_insert_with(BigRational::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        Self { coeffs: acc, rhs }
    }

    pub fn coeffs(&self) -> &BTreeMap<String, BigRational> {
        &self.coeffs
    }

    pub fn rhs(&self) -> &BigRational {
        &self.rhs
    }

    /// Coefficient of `var`, zero when the row does not involve it.
    pub fn coeff(&self, var: &str) -> BigRational {
        self.coeffs.get(var).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `0 <= negative`: no point satisfies the row.
    pub fn is_false(&self) -> bool {
        self.coeffs.is_empty() && self.rhs.is_negative()
    }

    /// `0 <= nonnegative`: every point satisfies the row.
    pub fn is_vacuous(&self) -> bool {
        self.coeffs.is_empty() && !self.rhs.is_negative()
    }

    /// Left-hand side at `point`; variables absent from the map count as zero.
    pub fn eval(&self, point: &BTreeMap<String, BigRational>) -> BigRational {
        let mut total = BigRational::zero();
        for (var, c) in &self.coeffs {
            if let Some(v) = point.get(var) {
                total += c * v;
            }
        }
        total
    }

    pub fn holds_at(&self, point: &BTreeMap<String, BigRational>) -> bool {
        self.eval(point) <= self.rhs
    }

    /// Rescales by a positive factor so the lexicographically first variable
    /// has coefficient of unit magnitude.  Rows that are positive multiples of
    /// each other normalize to identical coefficient maps.
    pub(crate) fn normalized(&self) -> Self {
        match self.coeffs.values().next() {
            None => self.clone(),
            Some(first) => {
                let scale = first.abs();
                let coeffs = self
                    .coeffs
                    .iter()
                    .map(|(v, c)| (v.clone(), c / &scale))
                    .collect();
                Self {
                    coeffs,
                    rhs: &self.rhs / &scale,
                }
            }
        }
    }

    /// Nonnegative combination of a row with positive coefficient on `var`
    /// and one with negative coefficient, scaled so `var` cancels exactly.
    pub(crate) fn eliminate_with(&self, neg: &LinIneq, var: &str) -> LinIneq {
        let a = self.coeff(var);
        let b = neg.coeff(var).abs();
        debug_assert!(a.is_positive() && b.is_positive());
        let mut coeffs: BTreeMap<String, BigRational> = BTreeMap::new();
        for (v, c) in &self.coeffs {
            if v != var {
                *coeffs.entry(v.clone()).or_insert_with(BigRational::zero) += c / &a;
            }
        }
        for (v, c) in &neg.coeffs {
            if v != var {
                *coeffs.entry(v.clone()).or_insert_with(BigRational::zero) += c / &b;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LinIneq {
            coeffs,
            rhs: &self.rhs / &a + &neg.rhs / &b,
        }
    }
}

impl fmt::Display for LinIneq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 <= {}", self.rhs);
        }
        for (i, (var, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag == BigRational::from_integer(1.into()) {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        write!(f, " <= {}", self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn row(pairs: &[(&str, i64)], rhs: i64) -> LinIneq {
        LinIneq::new(
            pairs
                .iter()
                .map(|&(v, c)| (v.to_string(), frac(c, 1)))
                .collect::<Vec<_>>(),
            frac(rhs, 1),
        )
    }

    #[test]
    fn construction_merges_and_drops_zeros() {
        let r = LinIneq::new(
            vec![
                ("x".to_string(), frac(1, 2)),
                ("x".to_string(), frac(-1, 2)),
                ("y".to_string(), frac(3, 1)),
            ],
            frac(1, 1),
        );
        assert!(!r.coeffs().contains_key("x"));
        assert_eq!(r.coeff("y"), frac(3, 1));
    }

    #[test]
    fn normalization_identifies_positive_multiples() {
        let a = row(&[("x", 2), ("y", -4)], 6).normalized();
        let b = row(&[("x", 1), ("y", -2)], 3).normalized();
        assert_eq!(a, b);
        let flipped = row(&[("x", -1), ("y", 2)], -3).normalized();
        assert_ne!(a, flipped);
    }

    #[test]
    fn elimination_cancels_the_pivot_variable() {
        let pos = row(&[("x", 2), ("y", 1)], 8);
        let neg = row(&[("x", -1), ("z", 1)], 0);
        let combined = pos.eliminate_with(&neg, "x");
        assert!(!combined.coeffs().contains_key("x"));
        assert_eq!(combined.coeff("y"), frac(1, 2));
        assert_eq!(combined.coeff("z"), frac(1, 1));
        assert_eq!(*combined.rhs(), frac(4, 1));
    }

    #[test]
    fn constant_rows_classify_by_sign() {
        assert!(row(&[], -1).is_false());
        assert!(row(&[], 0).is_vacuous());
        assert!(row(&[], 3).is_vacuous());
        assert!(!row(&[("x", 1)], -1).is_false());
    }

    #[test]
    fn display_reads_like_a_textbook_row() {
        assert_eq!(row(&[("x", 1), ("y", -2)], 3).to_string(), "x - 2*y <= 3");
        assert_eq!(row(&[("x", -1)], 0).to_string(), "-x <= 0");
        assert_eq!(row(&[], -1).to_string(), "0 <= -1");
    }
}
