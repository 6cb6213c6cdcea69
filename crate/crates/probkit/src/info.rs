//! Information measures in bits: entropy, conditional entropy, mutual
//! information, relative entropy, and total variation.

use crate::error::{ProbError, Result};
use crate::pmf::{JointPmf, Pmf};

/// Shannon entropy −Σ p log₂ p with 0·log 0 := 0.
pub fn entropy(p: &Pmf) -> f64 {
    entropy_of(p.probs())
}

pub(crate) fn entropy_of(probs: &[f64]) -> f64 {
    let mut h = 0.0;
    for &p in probs {
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    h
}

/// H(axes) of a marginal of `j`.
pub fn joint_entropy(j: &JointPmf, axes: &[&str]) -> Result<f64> {
    Ok(entropy_of(j.marginalize(axes)?.probs()))
}

/// H(A | C) = H(A, C) − H(C).
pub fn cond_entropy(j: &JointPmf, a: &[&str], c: &[&str]) -> Result<f64> {
    for name in a {
        if c.contains(name) {
            return Err(ProbError::OverlappingAxes((*name).into()));
        }
    }
    let mut ac: Vec<&str> = a.to_vec();
    ac.extend_from_slice(c);
    Ok(joint_entropy(j, &ac)? - joint_entropy(j, c)?)
}

/// I(A; B | C) = H(A,C) + H(B,C) − H(A,B,C) − H(C); unconditional when `c`
/// is empty. The three axis sets must be pairwise disjoint.
pub fn mutual_info(j: &JointPmf, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
    for name in a {
        if b.contains(name) || c.contains(name) {
            return Err(ProbError::OverlappingAxes((*name).into()));
        }
    }
    for name in b {
        if c.contains(name) {
            return Err(ProbError::OverlappingAxes((*name).into()));
        }
    }
    let mut ac: Vec<&str> = a.to_vec();
    ac.extend_from_slice(c);
    let mut bc: Vec<&str> = b.to_vec();
    bc.extend_from_slice(c);
    let mut abc: Vec<&str> = a.to_vec();
    abc.extend_from_slice(b);
    abc.extend_from_slice(c);
    Ok(joint_entropy(j, &ac)? + joint_entropy(j, &bc)? - joint_entropy(j, &abc)?
        - joint_entropy(j, c)?)
}

/// Relative entropy D(p‖q) in bits over supp(p); +∞ when p is not absolutely
/// continuous with respect to q.
pub fn kl_divergence(p: &Pmf, q: &Pmf) -> Result<f64> {
    if p.len() != q.len() {
        return Err(ProbError::ShapeMismatch(format!(
            "alphabets {} vs {}",
            p.len(),
            q.len()
        )));
    }
    Ok(kl_of(p.probs(), q.probs()))
}

pub(crate) fn kl_of(p: &[f64], q: &[f64]) -> f64 {
    let mut d = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi > 0.0 {
            if qi <= 0.0 {
                return f64::INFINITY;
            }
            d += pi * (pi / qi).log2();
        }
    }
    d.max(0.0)
}

/// Total variation ½ Σ |p − q| ∈ [0, 1].
pub fn tv_distance(p: &Pmf, q: &Pmf) -> Result<f64> {
    if p.len() != q.len() {
        return Err(ProbError::ShapeMismatch(format!(
            "alphabets {} vs {}",
            p.len(),
            q.len()
        )));
    }
    let sum: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&a, &b)| (a - b).abs())
        .sum();
    Ok(0.5 * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pmf::{axis, compose, CondPmf};

    fn bsc_joint(p: f64) -> JointPmf {
        let ch = CondPmf::new(
            vec![axis("X", 2)],
            vec![axis("Y", 2)],
            vec![
                Pmf::new(vec![1.0 - p, p]).unwrap(),
                Pmf::new(vec![p, 1.0 - p]).unwrap(),
            ],
        )
        .unwrap();
        compose(&Pmf::uniform(2), &ch).unwrap()
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy(&Pmf::new(vec![0.5, 0.5]).unwrap()), 1.0);
        assert_eq!(entropy(&Pmf::new(vec![1.0, 0.0]).unwrap()), 0.0);
        let h = entropy(&Pmf::new(vec![0.1, 0.9]).unwrap());
        assert!((h - 0.46900).abs() < 5e-6, "H(0.1) = {h}");
    }

    #[test]
    fn noiseless_bit_carries_one_bit() {
        let j = bsc_joint(0.0);
        assert!((mutual_info(&j, &["X"], &["Y"], &[]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn independent_axes_share_nothing() {
        let j = JointPmf::product(
            &Pmf::new(vec![0.3, 0.7]).unwrap().product_extend(1).unwrap(),
            &compose(
                &Pmf::uniform(3),
                &CondPmf::new(
                    vec![axis("A", 3)],
                    vec![axis("B", 2)],
                    vec![
                        Pmf::new(vec![0.2, 0.8]).unwrap(),
                        Pmf::new(vec![0.6, 0.4]).unwrap(),
                        Pmf::new(vec![0.5, 0.5]).unwrap(),
                    ],
                )
                .unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        let mi = mutual_info(&j, &["x0"], &["A", "B"], &[]).unwrap();
        assert!(mi.abs() < 1e-12);
    }

    #[test]
    fn bsc_mutual_info() {
        let j = bsc_joint(0.1);
        let mi = mutual_info(&j, &["X"], &["Y"], &[]).unwrap();
        assert!((mi - 0.53100).abs() < 5e-6, "I = {mi}");
    }

    #[test]
    fn mi_rejects_overlap() {
        let j = bsc_joint(0.1);
        assert!(matches!(
            mutual_info(&j, &["X"], &["X"], &[]),
            Err(ProbError::OverlappingAxes(_))
        ));
    }

    #[test]
    fn kl_cases() {
        let p = Pmf::new(vec![1.0, 0.0]).unwrap();
        let q = Pmf::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(kl_divergence(&p, &p).unwrap(), 0.0);
        assert!((kl_divergence(&p, &q).unwrap() - 1.0).abs() < 1e-15);
        assert!(kl_divergence(&q, &p).unwrap().is_infinite());
    }

    #[test]
    fn tv_cases() {
        let p = Pmf::new(vec![0.7, 0.3]).unwrap();
        let q = Pmf::new(vec![0.5, 0.5]).unwrap();
        assert!((tv_distance(&p, &q).unwrap() - 0.2).abs() < 1e-15);
        let disjoint = tv_distance(
            &Pmf::new(vec![1.0, 0.0]).unwrap(),
            &Pmf::new(vec![0.0, 1.0]).unwrap(),
        )
        .unwrap();
        assert_eq!(disjoint, 1.0);
    }
}
