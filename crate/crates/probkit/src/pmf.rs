//! Dense PMFs over finite alphabets and named product alphabets.
//!
//! `Pmf` is a distribution over a single finite alphabet, `JointPmf` a dense
//! tensor over an ordered list of named axes (row-major, last axis fastest),
//! and `CondPmf` a stochastic matrix from one product alphabet to another.
//! All values are immutable after construction and validated on entry.

use serde::{Deserialize, Serialize};

use crate::error::{ProbError, Result};

/// Construction tolerance on total mass.
pub const MASS_TOL: f64 = 1e-12;

/// Hard cap on dense-tensor enumeration (cells).
pub const CELL_BUDGET: u128 = 1 << 24;

fn check_mass(probs: &[f64]) -> Result<()> {
    for (index, &value) in probs.iter().enumerate() {
        if value < 0.0 || !value.is_finite() {
            return Err(ProbError::NegativeProb { index, value });
        }
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > MASS_TOL {
        return Err(ProbError::NotNormalized { sum, tol: MASS_TOL });
    }
    Ok(())
}

fn check_budget(cells: u128) -> Result<()> {
    if cells > CELL_BUDGET {
        return Err(ProbError::BudgetExceeded {
            cells,
            limit: CELL_BUDGET,
        });
    }
    Ok(())
}

/// Distribution over a single finite alphabet `{0, …, k−1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    /// Validates nonnegativity and unit mass (within [`MASS_TOL`]).
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(ProbError::InvalidParam("alphabet must be nonempty".into()));
        }
        check_mass(&probs)?;
        Ok(Self { probs })
    }

    /// Rescales arbitrary nonnegative weights to unit mass.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(ProbError::InvalidParam("alphabet must be nonempty".into()));
        }
        for (index, &value) in weights.iter().enumerate() {
            if value < 0.0 || !value.is_finite() {
                return Err(ProbError::NegativeProb { index, value });
            }
        }
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(ProbError::InvalidParam("all weights are zero".into()));
        }
        Ok(Self {
            probs: weights.into_iter().map(|w| w / sum).collect(),
        })
    }

    pub fn uniform(k: usize) -> Self {
        Self {
            probs: vec![1.0 / k as f64; k.max(1)],
        }
    }

    pub fn point_mass(k: usize, at: usize) -> Self {
        let mut probs = vec![0.0; k.max(1)];
        probs[at] = 1.0;
        Self { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn prob(&self, i: usize) -> f64 {
        self.probs[i]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// i.i.d. block extension `p^n` as a joint over axes `x0, …, x{n−1}`.
    pub fn product_extend(&self, n: usize) -> Result<JointPmf> {
        let axes: Vec<Axis> = (0..n).map(|t| Axis::new(format!("x{t}"), self.len())).collect();
        let cells = (self.len() as u128).pow(n as u32);
        check_budget(cells)?;
        let mut probs = vec![1.0];
        for _ in 0..n {
            let mut next = Vec::with_capacity(probs.len() * self.len());
            for &p in &probs {
                for &q in &self.probs {
                    next.push(p * q);
                }
            }
            probs = next;
        }
        JointPmf::new(axes, probs)
    }
}

impl<'de> Deserialize<'de> for Pmf {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            probs: Vec<f64>,
        }
        let raw = Raw::deserialize(d)?;
        Pmf::new(raw.probs).map_err(serde::de::Error::custom)
    }
}

/// Named axis of a product alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub size: usize,
}

impl Axis {
    pub fn new(name: impl Into<String>, size: usize) -> Self {
        Self {
            name: name.into(),
            size,
        }
    }
}

/// Shorthand for [`Axis::new`].
pub fn axis(name: impl Into<String>, size: usize) -> Axis {
    Axis::new(name, size)
}

/// Dense joint distribution over named axes (row-major, last axis fastest).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointPmf {
    axes: Vec<Axis>,
    probs: Vec<f64>,
}

impl JointPmf {
    pub fn new(axes: Vec<Axis>, probs: Vec<f64>) -> Result<Self> {
        let mut cells: u128 = 1;
        for (i, ax) in axes.iter().enumerate() {
            if ax.size == 0 {
                return Err(ProbError::InvalidParam(format!("axis `{}` has size 0", ax.name)));
            }
            if axes[..i].iter().any(|a| a.name == ax.name) {
                return Err(ProbError::DuplicateAxis(ax.name.clone()));
            }
            cells *= ax.size as u128;
        }
        check_budget(cells)?;
        if probs.len() as u128 != cells {
            return Err(ProbError::ShapeMismatch(format!(
                "{} probabilities for {} cells",
                probs.len(),
                cells
            )));
        }
        check_mass(&probs)?;
        Ok(Self { axes, probs })
    }

    /// Builds the tensor by evaluating `f` at every index tuple.
    pub fn from_fn(axes: Vec<Axis>, f: impl Fn(&[usize]) -> f64) -> Result<Self> {
        let mut cells: u128 = 1;
        for ax in &axes {
            cells = cells.saturating_mul(ax.size.max(1) as u128);
        }
        check_budget(cells)?;
        let sizes: Vec<usize> = axes.iter().map(|a| a.size).collect();
        let total = cells as usize;
        let mut idx = vec![0usize; axes.len()];
        let mut probs = Vec::with_capacity(total);
        for r in 0..total {
            unrank_into(r, &sizes, &mut idx);
            probs.push(f(&idx));
        }
        Self::new(axes, probs)
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn n_cells(&self) -> usize {
        self.probs.len()
    }

    pub fn axis_index(&self, name: &str) -> Result<usize> {
        self.axes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| ProbError::UnknownAxis(name.into()))
    }

    pub fn axis_size(&self, name: &str) -> Result<usize> {
        Ok(self.axes[self.axis_index(name)?].size)
    }

    fn sizes(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.size).collect()
    }

    pub fn rank(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.axes.len());
        let mut r = 0;
        for (ax, &i) in self.axes.iter().zip(idx) {
            debug_assert!(i < ax.size);
            r = r * ax.size + i;
        }
        r
    }

    pub fn unrank(&self, r: usize, out: &mut [usize]) {
        unrank_into(r, &self.sizes(), out);
    }

    pub fn prob(&self, idx: &[usize]) -> f64 {
        self.probs[self.rank(idx)]
    }

    /// Marginal onto `keep`, preserving this joint's axis order.
    pub fn marginalize(&self, keep: &[&str]) -> Result<JointPmf> {
        let mut keep_mask = vec![false; self.axes.len()];
        for name in keep {
            keep_mask[self.axis_index(name)?] = true;
        }
        let kept: Vec<Axis> = self
            .axes
            .iter()
            .zip(&keep_mask)
            .filter(|(_, &k)| k)
            .map(|(a, _)| a.clone())
            .collect();
        let kept_sizes: Vec<usize> = kept.iter().map(|a| a.size).collect();
        let total: usize = kept_sizes.iter().product::<usize>().max(1);
        let mut out = vec![0.0; total];
        let sizes = self.sizes();
        let mut idx = vec![0usize; self.axes.len()];
        for (r, &p) in self.probs.iter().enumerate() {
            unrank_into(r, &sizes, &mut idx);
            let mut kr = 0;
            for (j, &i) in idx.iter().enumerate() {
                if keep_mask[j] {
                    kr = kr * sizes[j] + i;
                }
            }
            out[kr] += p;
        }
        JointPmf::new(kept, out)
    }

    /// Flattens the whole tensor into a single-alphabet [`Pmf`].
    pub fn flatten(&self) -> Pmf {
        Pmf {
            probs: self.probs.clone(),
        }
    }

    /// Appends `ch`'s output axes: `P(self) · ch(to | from)`, where the
    /// conditioning axes are matched against this joint by name.
    pub fn extend(&self, ch: &CondPmf) -> Result<JointPmf> {
        let from_pos: Vec<usize> = ch
            .from_axes
            .iter()
            .map(|a| {
                let j = self.axis_index(&a.name)?;
                if self.axes[j].size != a.size {
                    return Err(ProbError::ShapeMismatch(format!(
                        "axis `{}`: size {} here vs {} in conditional",
                        a.name, self.axes[j].size, a.size
                    )));
                }
                Ok(j)
            })
            .collect::<Result<_>>()?;
        for a in &ch.to_axes {
            if self.axes.iter().any(|b| b.name == a.name) {
                return Err(ProbError::DuplicateAxis(a.name.clone()));
            }
        }
        let to_card = ch.to_card();
        let cells = self.probs.len() as u128 * to_card as u128;
        check_budget(cells)?;

        let mut axes = self.axes.clone();
        axes.extend(ch.to_axes.iter().cloned());
        let sizes = self.sizes();
        let mut idx = vec![0usize; self.axes.len()];
        let mut probs = Vec::with_capacity(cells as usize);
        for (r, &p) in self.probs.iter().enumerate() {
            unrank_into(r, &sizes, &mut idx);
            let mut fr = 0;
            for &j in &from_pos {
                fr = fr * sizes[j] + idx[j];
            }
            let row = ch.rows[fr].probs();
            probs.extend(row.iter().map(|&q| p * q));
        }
        JointPmf::new(axes, probs)
    }

    /// Independent product of two joints with disjoint axis names.
    pub fn product(a: &JointPmf, b: &JointPmf) -> Result<JointPmf> {
        for ax in &b.axes {
            if a.axes.iter().any(|c| c.name == ax.name) {
                return Err(ProbError::DuplicateAxis(ax.name.clone()));
            }
        }
        let cells = a.probs.len() as u128 * b.probs.len() as u128;
        check_budget(cells)?;
        let mut axes = a.axes.clone();
        axes.extend(b.axes.iter().cloned());
        let mut probs = Vec::with_capacity(cells as usize);
        for &p in &a.probs {
            for &q in &b.probs {
                probs.push(p * q);
            }
        }
        JointPmf::new(axes, probs)
    }

    /// Explicitly rescales to unit mass (construction never renormalizes).
    pub fn renormalized(&self) -> JointPmf {
        let sum: f64 = self.probs.iter().sum();
        JointPmf {
            axes: self.axes.clone(),
            probs: self.probs.iter().map(|p| p / sum).collect(),
        }
    }
}

impl<'de> Deserialize<'de> for JointPmf {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            axes: Vec<Axis>,
            probs: Vec<f64>,
        }
        let raw = Raw::deserialize(d)?;
        JointPmf::new(raw.axes, raw.probs).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn unrank_into(mut r: usize, sizes: &[usize], out: &mut [usize]) {
    for j in (0..sizes.len()).rev() {
        out[j] = r % sizes[j];
        r /= sizes[j];
    }
}

/// Stochastic matrix from a product alphabet (`from_axes`) to another
/// (`to_axes`): one [`Pmf`] row per joint letter of the conditioning axes.
#[derive(Debug, Clone, PartialEq)]
pub struct CondPmf {
    from_axes: Vec<Axis>,
    to_axes: Vec<Axis>,
    rows: Vec<Pmf>,
}

impl CondPmf {
    pub fn new(from_axes: Vec<Axis>, to_axes: Vec<Axis>, rows: Vec<Pmf>) -> Result<Self> {
        let from_card: usize = from_axes.iter().map(|a| a.size).product::<usize>().max(1);
        let to_card: usize = to_axes.iter().map(|a| a.size).product::<usize>().max(1);
        if rows.len() != from_card {
            return Err(ProbError::ShapeMismatch(format!(
                "{} rows for {} conditioning letters",
                rows.len(),
                from_card
            )));
        }
        for row in &rows {
            if row.len() != to_card {
                return Err(ProbError::ShapeMismatch(format!(
                    "row of length {} for {} output letters",
                    row.len(),
                    to_card
                )));
            }
        }
        Ok(Self {
            from_axes,
            to_axes,
            rows,
        })
    }

    /// Conditional `P(to | from)` extracted from a joint. Conditioning letters
    /// of zero mass get uniform rows (they are never reachable).
    pub fn from_joint(j: &JointPmf, from: &[&str], to: &[&str]) -> Result<Self> {
        for f in from {
            if to.contains(f) {
                return Err(ProbError::OverlappingAxes((*f).into()));
            }
        }
        let from_pos: Vec<usize> = from.iter().map(|n| j.axis_index(n)).collect::<Result<_>>()?;
        let to_pos: Vec<usize> = to.iter().map(|n| j.axis_index(n)).collect::<Result<_>>()?;
        let from_axes: Vec<Axis> = from_pos.iter().map(|&p| j.axes()[p].clone()).collect();
        let to_axes: Vec<Axis> = to_pos.iter().map(|&p| j.axes()[p].clone()).collect();
        let from_card: usize = from_axes.iter().map(|a| a.size).product::<usize>().max(1);
        let to_card: usize = to_axes.iter().map(|a| a.size).product::<usize>().max(1);

        let sizes: Vec<usize> = j.axes().iter().map(|a| a.size).collect();
        let mut weights = vec![vec![0.0; to_card]; from_card];
        let mut idx = vec![0usize; sizes.len()];
        for (r, &p) in j.probs().iter().enumerate() {
            unrank_into(r, &sizes, &mut idx);
            let mut fr = 0;
            for &pos in &from_pos {
                fr = fr * sizes[pos] + idx[pos];
            }
            let mut tr = 0;
            for &pos in &to_pos {
                tr = tr * sizes[pos] + idx[pos];
            }
            weights[fr][tr] += p;
        }
        let rows = weights
            .into_iter()
            .map(|w| {
                let mass: f64 = w.iter().sum();
                if mass <= 0.0 {
                    Ok(Pmf::uniform(to_card))
                } else {
                    Pmf::normalized(w)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(from_axes, to_axes, rows)
    }

    pub fn from_axes(&self) -> &[Axis] {
        &self.from_axes
    }

    pub fn to_axes(&self) -> &[Axis] {
        &self.to_axes
    }

    pub fn from_card(&self) -> usize {
        self.rows.len()
    }

    pub fn to_card(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, from_rank: usize) -> &Pmf {
        &self.rows[from_rank]
    }

    pub fn prob(&self, from_rank: usize, to_rank: usize) -> f64 {
        self.rows[from_rank].prob(to_rank)
    }

    /// Memoryless block extension: `n` uses of the channel as one conditional
    /// between sequence alphabets (sequence ranks are row-major).
    pub fn product_extend(&self, n: usize) -> Result<CondPmf> {
        let from_card = (self.from_card() as u128).pow(n as u32);
        let to_card = (self.to_card() as u128).pow(n as u32);
        check_budget(from_card.saturating_mul(to_card))?;
        let from_axes: Vec<Axis> = (0..n)
            .map(|t| Axis::new(format!("in{t}"), self.from_card()))
            .collect();
        let to_axes: Vec<Axis> = (0..n)
            .map(|t| Axis::new(format!("out{t}"), self.to_card()))
            .collect();
        let fc = self.from_card();
        let mut rows = Vec::with_capacity(from_card as usize);
        let mut fidx = vec![0usize; n];
        for fr in 0..from_card as usize {
            unrank_into(fr, &vec![fc; n], &mut fidx);
            let mut probs = vec![1.0];
            for &f in &fidx {
                let row = self.rows[f].probs();
                let mut next = Vec::with_capacity(probs.len() * row.len());
                for &p in &probs {
                    for &q in row {
                        next.push(p * q);
                    }
                }
                probs = next;
            }
            rows.push(Pmf::new(probs)?);
        }
        CondPmf::new(from_axes, to_axes, rows)
    }
}

/// Joint `P(x) · ch(y | x)` over the conditional's input and output axes.
pub fn compose(input: &Pmf, ch: &CondPmf) -> Result<JointPmf> {
    if input.len() != ch.from_card() {
        return Err(ProbError::ShapeMismatch(format!(
            "input alphabet {} vs conditional rows {}",
            input.len(),
            ch.from_card()
        )));
    }
    let mut axes = ch.from_axes.to_vec();
    axes.extend(ch.to_axes.iter().cloned());
    let cells = input.len() as u128 * ch.to_card() as u128;
    check_budget(cells)?;
    let mut probs = Vec::with_capacity(cells as usize);
    for x in 0..input.len() {
        let px = input.prob(x);
        probs.extend(ch.rows[x].probs().iter().map(|&q| px * q));
    }
    JointPmf::new(axes, probs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bsc(p: f64) -> CondPmf {
        CondPmf::new(
            vec![axis("X", 2)],
            vec![axis("Y", 2)],
            vec![
                Pmf::new(vec![1.0 - p, p]).unwrap(),
                Pmf::new(vec![p, 1.0 - p]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(matches!(
            Pmf::new(vec![0.5, 0.4]),
            Err(ProbError::NotNormalized { .. })
        ));
        assert!(matches!(
            Pmf::new(vec![1.5, -0.5]),
            Err(ProbError::NegativeProb { .. })
        ));
    }

    #[test]
    fn compose_uniform_bsc() {
        let j = compose(&Pmf::uniform(2), &bsc(0.1)).unwrap();
        assert!((j.prob(&[0, 1]) - 0.05).abs() < 1e-15);
        assert!((j.prob(&[0, 0]) - 0.45).abs() < 1e-15);
    }

    #[test]
    fn marginal_of_product_recovers_factor() {
        let a = compose(&Pmf::new(vec![0.3, 0.7]).unwrap(), &bsc(0.2)).unwrap();
        let p = Pmf::new(vec![0.1, 0.2, 0.7]).unwrap();
        let b = p.product_extend(1).unwrap();
        let prod = JointPmf::product(&a, &b).unwrap();
        let back = prod.marginalize(&["x0"]).unwrap();
        for (i, &q) in p.probs().iter().enumerate() {
            assert!((back.prob(&[i]) - q).abs() < 1e-12);
        }
    }

    #[test]
    fn product_extend_uniform() {
        let j = Pmf::uniform(2).product_extend(2).unwrap();
        assert_eq!(j.n_cells(), 4);
        for r in 0..4 {
            assert!((j.probs()[r] - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn budget_guard_names_size() {
        let p = Pmf::uniform(2);
        let err = p.product_extend(25).unwrap_err();
        assert!(matches!(err, ProbError::BudgetExceeded { cells, .. } if cells == 1 << 25));
    }

    #[test]
    fn extend_matches_hand_joint() {
        let qx = Pmf::new(vec![0.25, 0.75]).unwrap();
        let j = qx.product_extend(1).unwrap();
        let ch = CondPmf::new(
            vec![axis("x0", 2)],
            vec![axis("Y", 2)],
            vec![
                Pmf::new(vec![0.9, 0.1]).unwrap(),
                Pmf::new(vec![0.2, 0.8]).unwrap(),
            ],
        )
        .unwrap();
        let full = j.extend(&ch).unwrap();
        assert!((full.prob(&[1, 0]) - 0.75 * 0.2).abs() < 1e-15);
    }

    #[test]
    fn cond_from_joint_inverts_compose() {
        let input = Pmf::new(vec![0.3, 0.7]).unwrap();
        let j = compose(&input, &bsc(0.15)).unwrap();
        let ch = CondPmf::from_joint(&j, &["X"], &["Y"]).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert!((ch.prob(x, y) - bsc(0.15).prob(x, y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn block_extension_is_product() {
        let ch = bsc(0.1).product_extend(2).unwrap();
        // P(y = (0,1) | x = (0,0)) = 0.9 · 0.1
        assert!((ch.prob(0, 1) - 0.09).abs() < 1e-15);
        assert!((ch.prob(3, 3) - 0.81).abs() < 1e-15);
    }
}
