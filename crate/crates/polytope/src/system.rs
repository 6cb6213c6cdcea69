//! Conjunctions of half-spaces: elimination, projection, redundancy, vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{PolyError, Result};
use crate::ineq::LinIneq;
use crate::rational::{format_rational, parse_rational};

/// Most variables [`IneqSystem::vertices`] will enumerate over.
pub const VERTEX_DIM_CAP: usize = 8;
/// Most rows an elimination step may produce before giving up.
pub const ROW_BUDGET: usize = 4096;
/// Most candidate bases a vertex enumeration may examine.
pub const BASIS_BUDGET: u128 = 2_000_000;

/// A finite list of closed inequalities `A x <= b` over named variables.
///
/// All arithmetic is exact, so eliminations and projections describe the same
/// point set as the input — no tolerance is involved anywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IneqSystem {
    vars: Vec<String>,
    ineqs: Vec<LinIneq>,
}

impl IneqSystem {
    pub fn new(vars: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.clone()) {
                return Err(PolyError::DuplicateVar(v.clone()));
            }
        }
        Ok(Self { vars, ineqs: Vec::new() })
    }

    /// Adds a row; every variable it mentions must be declared.
    pub fn push(&mut self, ineq: LinIneq) -> Result<()> {
        for var in ineq.coeffs().keys() {
            if !self.vars.iter().any(|v| v == var) {
                return Err(PolyError::UnknownVar(var.clone()));
            }
        }
        self.ineqs.push(ineq);
        Ok(())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn ineqs(&self) -> &[LinIneq] {
        &self.ineqs
    }

    /// Whether `point` (coordinates in `vars()` order) satisfies every row.
    pub fn contains(&self, point: &[BigRational]) -> Result<bool> {
        if point.len() != self.vars.len() {
            return Err(PolyError::BadPoint {
                got: point.len(),
                want: self.vars.len(),
            });
        }
        let assignment: BTreeMap<String, BigRational> = self
            .vars
            .iter()
            .cloned()
            .zip(point.iter().cloned())
            .collect();
        Ok(self.ineqs.iter().all(|r| r.holds_at(&assignment)))
    }

    /// Canonical form: rows scale-normalized, vacuous rows dropped, identical
    /// left-hand sides collapsed to their tightest bound, rows sorted.  The
    /// result describes exactly the same point set.
    pub fn simplified(&self) -> Self {
        let mut best: BTreeMap<Vec<(String, BigRational)>, BigRational> = BTreeMap::new();
        for row in &self.ineqs {
            let row = row.normalized();
            if row.is_vacuous() {
                continue;
            }
            let key: Vec<(String, BigRational)> = row
                .coeffs()
                .iter()
                .map(|(v, c)| (v.clone(), c.clone()))
                .collect();
            best.entry(key)
                .and_modify(|rhs| {
                    if row.rhs() < rhs {
                        *rhs = row.rhs().clone();
                    }
                })
                .or_insert_with(|| row.rhs().clone());
        }
        let ineqs = best
            .into_iter()
            .map(|(coeffs, rhs)| LinIneq::new(coeffs, rhs))
            .collect();
        Self {
            vars: self.vars.clone(),
            ineqs,
        }
    }

    fn has_false_row(&self) -> bool {
        self.ineqs.iter().any(LinIneq::is_false)
    }

    /// Removes `var` by combining each row where it appears positively with
    /// each row where it appears negatively; rows not involving `var` pass
    /// through.  The result is the exact shadow of the system on the
    /// remaining variables.
    pub fn eliminate(&self, var: &str) -> Result<Self> {
        if !self.vars.iter().any(|v| v == var) {
            return Err(PolyError::UnknownVar(var.to_string()));
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for row in &self.ineqs {
            let c = row.coeff(var);
            if c.is_positive() {
                pos.push(row);
            } else if c.is_negative() {
                neg.push(row);
            } else {
                rest.push(row.clone());
            }
        }
        if rest.len() + pos.len() * neg.len() > ROW_BUDGET {
            return Err(PolyError::RowBudget { budget: ROW_BUDGET });
        }
        for p in &pos {
            for n in &neg {
                rest.push(p.eliminate_with(n, var));
            }
        }
        let vars = self
            .vars
            .iter()
            .filter(|v| v.as_str() != var)
            .cloned()
            .collect();
        Ok(Self { vars, ineqs: rest }.simplified())
    }

    /// The undeclared-variable-free row set over `keep`, i.e. the exact
    /// projection of the solution set onto those coordinates.  Variables are
    /// eliminated cheapest-first (fewest pairwise combinations).
    pub fn project(&self, keep: &[&str]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for k in keep {
            if !self.vars.iter().any(|v| v == k) {
                return Err(PolyError::UnknownVar((*k).to_string()));
            }
            if !seen.insert(*k) {
                return Err(PolyError::DuplicateVar((*k).to_string()));
            }
        }
        let mut cur = self.simplified();
        while let Some(var) = cur.cheapest_var(keep) {
            cur = cur.eliminate(&var)?;
        }
        cur.vars = keep.iter().map(|k| (*k).to_string()).collect();
        Ok(cur)
    }

    /// The variable outside `keep` whose elimination creates the fewest rows.
    fn cheapest_var(&self, keep: &[&str]) -> Option<String> {
        self.vars
            .iter()
            .filter(|v| !keep.contains(&v.as_str()))
            .map(|v| {
                let mut pos = 0usize;
                let mut neg = 0usize;
                for row in &self.ineqs {
                    let c = row.coeff(v);
                    if c.is_positive() {
                        pos += 1;
                    } else if c.is_negative() {
                        neg += 1;
                    }
                }
                (pos * neg, v.clone())
            })
            .min()
            .map(|(_, v)| v)
    }

    /// Whether any point satisfies the system, decided by eliminating every
    /// variable and checking the surviving constant rows.
    pub fn feasible(&self) -> Result<bool> {
        let mut cur = self.simplified();
        loop {
            if cur.has_false_row() {
                return Ok(false);
            }
            match cur.cheapest_var(&[]) {
                None => return Ok(true),
                Some(var) => cur = cur.eliminate(&var)?,
            }
        }
    }

    /// Whether `row` holds everywhere on the solution set of `rows`.
    ///
    /// Decided exactly: a tracking variable is pinned to the row's left-hand
    /// side, everything else is eliminated, and the surviving upper bound is
    /// compared against the row's right-hand side.
    fn implied(vars: &[String], rows: &[LinIneq], row: &LinIneq) -> Result<bool> {
        let mut tracker = "t".to_string();
        while vars.iter().any(|v| *v == tracker) {
            tracker.push('_');
        }
        let mut all_vars = vars.to_vec();
        all_vars.push(tracker.clone());
        let mut sys = IneqSystem::new(all_vars)?;
        for r in rows {
            sys.push(r.clone())?;
        }
        let lhs: Vec<(String, BigRational)> = row
            .coeffs()
            .iter()
            .map(|(v, c)| (v.clone(), c.clone()))
            .collect();
        let mut pinned_up = lhs.clone();
        pinned_up.push((tracker.clone(), -BigRational::from_integer(1.into())));
        sys.push(LinIneq::new(pinned_up, BigRational::zero()))?;
        let mut pinned_down: Vec<(String, BigRational)> =
            lhs.into_iter().map(|(v, c)| (v, -c)).collect();
        pinned_down.push((tracker.clone(), BigRational::from_integer(1.into())));
        sys.push(LinIneq::new(pinned_down, BigRational::zero()))?;

        let shadow = sys.project(&[tracker.as_str()])?;
        if shadow.has_false_row() {
            return Ok(true);
        }
        let mut sup: Option<BigRational> = None;
        for r in shadow.ineqs() {
            let c = r.coeff(&tracker);
            if c.is_positive() {
                let bound = r.rhs() / &c;
                if sup.as_ref().map_or(true, |s| bound < *s) {
                    sup = Some(bound);
                }
            }
        }
        Ok(match sup {
            None => false,
            Some(s) => s <= *row.rhs(),
        })
    }

    /// An equivalent system with every implied row removed.  Implication runs
    /// through exact elimination, so the result is sound for unbounded
    /// systems too.  An infeasible input collapses to the single witness
    /// `0 <= -1`.
    pub fn remove_redundant(&self) -> Result<Self> {
        let sys = self.simplified();
        if !sys.feasible()? {
            let witness = LinIneq::new(Vec::new(), -BigRational::from_integer(1.into()));
            return Ok(Self {
                vars: sys.vars,
                ineqs: vec![witness],
            });
        }
        let mut kept = sys.ineqs;
        let mut i = 0;
        while i < kept.len() {
            let mut others = kept.clone();
            let row = others.remove(i);
            if Self::implied(&sys.vars, &others, &row)? {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(Self {
            vars: sys.vars,
            ineqs: kept,
        })
    }

    /// All vertices of the solution set, sorted, each in `vars()` order.
    ///
    /// Every size-d subset of rows is solved as a linear system and kept when
    /// it pins a unique point satisfying the whole system.  For bounded
    /// systems the result determines the polytope exactly (it is the convex
    /// hull of these points); unbounded or empty systems simply yield fewer
    /// vertices — possibly none.
    pub fn vertices(&self) -> Result<Vec<Vec<BigRational>>> {
        let d = self.vars.len();
        if d > VERTEX_DIM_CAP {
            return Err(PolyError::DimensionBudget {
                dim: d,
                cap: VERTEX_DIM_CAP,
            });
        }
        let sys = self.simplified();
        let m = sys.ineqs.len();
        if d == 0 || m < d || sys.has_false_row() {
            return Ok(Vec::new());
        }
        let bases = binomial(m as u128, d as u128);
        if bases > BASIS_BUDGET {
            return Err(PolyError::BasisBudget {
                count: bases,
                budget: BASIS_BUDGET,
            });
        }

        let dense: Vec<(Vec<BigRational>, BigRational)> = sys
            .ineqs
            .iter()
            .map(|row| {
                let coeffs = sys.vars.iter().map(|v| row.coeff(v)).collect();
                (coeffs, row.rhs().clone())
            })
            .collect();

        let mut found: BTreeSet<Vec<BigRational>> = BTreeSet::new();
        for_each_combination(m, d, |basis| {
            let a: Vec<Vec<BigRational>> = basis.iter().map(|&i| dense[i].0.clone()).collect();
            let b: Vec<BigRational> = basis.iter().map(|&i| dense[i].1.clone()).collect();
            if let Some(x) = solve_square(a, b) {
                let inside = dense.iter().all(|(coeffs, rhs)| {
                    let lhs: BigRational = coeffs
                        .iter()
                        .zip(&x)
                        .map(|(c, v)| c * v)
                        .fold(BigRational::zero(), |acc, t| acc + t);
                    lhs <= *rhs
                });
                if inside {
                    found.insert(x);
                }
            }
        });
        Ok(found.into_iter().collect())
    }

    /// Reads the JSON shape produced by [`IneqSystem::to_json_string`]:
    /// `{"vars": [...], "ineqs": [{"coeffs": {"R1": "p/q", ...}, "rhs": "p/q"}]}`.
    /// Rows may carry `"strict": true`; strict rows are coarsened to their
    /// closures, which is the tightest closed system containing the input.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: SystemJson = serde_json::from_str(s)?;
        let mut sys = IneqSystem::new(raw.vars)?;
        for row in raw.ineqs {
            let mut coeffs = Vec::with_capacity(row.coeffs.len());
            for (var, lit) in row.coeffs {
                coeffs.push((var, parse_rational(&lit)?));
            }
            sys.push(LinIneq::new(coeffs, parse_rational(&row.rhs)?))?;
        }
        Ok(sys)
    }

    pub fn to_json_string(&self) -> String {
        let raw = SystemJson {
            vars: self.vars.clone(),
            ineqs: self
                .ineqs
                .iter()
                .map(|row| IneqJson {
                    coeffs: row
                        .coeffs()
                        .iter()
                        .map(|(v, c)| (v.clone(), format_rational(c)))
                        .collect(),
                    rhs: format_rational(row.rhs()),
                    strict: false,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("plain data serializes")
    }
}

impl fmt::Display for IneqSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.ineqs.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemJson {
    vars: Vec<String>,
    ineqs: Vec<IneqJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IneqJson {
    #[serde(default)]
    coeffs: BTreeMap<String, String>,
    rhs: String,
    #[serde(default, skip_serializing_if = "is_false")]
    strict: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn binomial(m: u128, d: u128) -> u128 {
    if d > m {
        return 0;
    }
    let d = d.min(m - d);
    let mut acc: u128 = 1;
    for i in 0..d {
        acc = acc.saturating_mul(m - i) / (i + 1);
    }
    acc
}

fn for_each_combination(m: usize, d: usize, mut f: impl FnMut(&[usize])) {
    if d == 0 || d > m {
        return;
    }
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        f(&idx);
        let mut i = d;
        while i > 0 && idx[i - 1] == m - d + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact Gauss-Jordan solve of `a x = b`; `None` when `a` is singular.
fn solve_square(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let d = b.len();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let pv = a[col][col].clone();
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &pv;
                for c in col..d {
                    a[r][c] = &a[r][c] - &(&f * &a[col][c]);
                }
                b[r] = &b[r] - &(&f * &b[col]);
            }
        }
    }
    Some((0..d).map(|i| &b[i] / &a[i][i]).collect())
}
