use probkit::{axis, CondPmf, JointPmf, Pmf};

use crate::error::{RegionError, Result};

/// Tolerance for recognising structural zeros / factorizations in channel rows.
pub const STRUCT_TOL: f64 = 1e-12;

/// Row-sum slack accepted on input before exact renormalization.
const ROW_MASS_TOL: f64 = 1e-9;

/// Structural class of a two-receiver broadcast channel, together with the
/// witness that certifies it.
#[derive(Debug, Clone, PartialEq)]
pub enum Structure {
    General,
    /// Receiver 1 sees a deterministic function of the input: `Y1 = g(X)`.
    SemiDeterministic { g: Vec<usize> },
    /// Receiver 2 is a stochastic degradation of receiver 1; `y2_given_y1`
    /// holds the witness kernel, one row per `y1`.
    PhysicallyDegraded { y2_given_y1: Vec<Vec<f64>> },
    /// Both outputs are deterministic: `Y1 = g(X)`, `Y2 = h(X)`.
    Deterministic { g: Vec<usize>, h: Vec<usize> },
}

/// Structural claim made when constructing a channel; witnesses are inferred
/// and verified against the transition rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    General,
    SemiDeterministic,
    PhysicallyDegraded,
    Deterministic,
}

/// A memoryless broadcast channel `Q(y1, y2 | x)` with finite alphabets.
#[derive(Debug, Clone)]
pub struct BcChannel {
    x_size: usize,
    y1_size: usize,
    y2_size: usize,
    law: CondPmf,
    structure: Structure,
}

impl BcChannel {
    /// Builds a channel from transition rows, one per input letter, each of
    /// length `y1_size * y2_size` in row-major `(y1, y2)` order. Rows must sum
    /// to one within `1e-9`; they are renormalized exactly before storage.
    /// The claimed structure is verified and its witness recorded.
    pub fn new(
        x_size: usize,
        y1_size: usize,
        y2_size: usize,
        rows: Vec<Vec<f64>>,
        kind: StructureKind,
    ) -> Result<Self> {
        if x_size == 0 || y1_size == 0 || y2_size == 0 {
            return Err(RegionError::InvalidChannel(
                "alphabet sizes must be positive".into(),
            ));
        }
        if rows.len() != x_size {
            return Err(RegionError::InvalidChannel(format!(
                "expected {} transition rows, got {}",
                x_size,
                rows.len()
            )));
        }
        let cell_count = y1_size * y2_size;
        let mut norm_rows = Vec::with_capacity(x_size);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != cell_count {
                return Err(RegionError::InvalidChannel(format!(
                    "row {} has {} entries, expected {}",
                    x,
                    row.len(),
                    cell_count
                )));
            }
            let mut sum = 0.0;
            for (c, &v) in row.iter().enumerate() {
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(RegionError::InvalidChannel(format!(
                        "row {} cell {} is {}, probabilities must be finite and nonnegative",
                        x, c, v
                    )));
                }
                sum += v;
            }
            if (sum - 1.0).abs() > ROW_MASS_TOL {
                return Err(RegionError::InvalidChannel(format!(
                    "row {} sums to {}, expected 1 within {}",
                    x, sum, ROW_MASS_TOL
                )));
            }
            norm_rows.push(row.iter().map(|v| v / sum).collect::<Vec<f64>>());
        }

        let structure = verify_structure(&norm_rows, y1_size, y2_size, kind)?;

        let pmf_rows = norm_rows
            .into_iter()
            .map(Pmf::new)
            .collect::<probkit::Result<Vec<Pmf>>>()?;
        let law = CondPmf::new(
            vec![axis("X", x_size)],
            vec![axis("Y1", y1_size), axis("Y2", y2_size)],
            pmf_rows,
        )?;

        Ok(Self {
            x_size,
            y1_size,
            y2_size,
            law,
            structure,
        })
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y1_size(&self) -> usize {
        self.y1_size
    }

    pub fn y2_size(&self) -> usize {
        self.y2_size
    }

    /// Transition law as a conditional from axis `X` to axes `(Y1, Y2)`.
    pub fn law(&self) -> &CondPmf {
        &self.law
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// The function `g` with `Y1 = g(X)`, when the channel has one.
    pub fn g(&self) -> Option<&[usize]> {
        match &self.structure {
            Structure::SemiDeterministic { g } | Structure::Deterministic { g, .. } => Some(g),
            _ => None,
        }
    }

    /// The function `h` with `Y2 = h(X)`, when the channel is deterministic.
    pub fn h(&self) -> Option<&[usize]> {
        match &self.structure {
            Structure::Deterministic { h, .. } => Some(h),
            _ => None,
        }
    }

    pub fn is_semi_deterministic(&self) -> bool {
        matches!(
            self.structure,
            Structure::SemiDeterministic { .. } | Structure::Deterministic { .. }
        )
    }

    pub fn is_physically_degraded(&self) -> bool {
        matches!(self.structure, Structure::PhysicallyDegraded { .. })
    }

    pub fn is_deterministic(&self) -> bool {
        matches!(self.structure, Structure::Deterministic { .. })
    }

    /// Extends a joint distribution containing an `X` axis by this channel,
    /// appending `Y1` and `Y2` axes.
    pub fn join_outputs(&self, input: &JointPmf) -> Result<JointPmf> {
        Ok(input.extend(&self.law)?)
    }
}

fn verify_structure(
    rows: &[Vec<f64>],
    y1_size: usize,
    y2_size: usize,
    kind: StructureKind,
) -> Result<Structure> {
    match kind {
        StructureKind::General => Ok(Structure::General),
        StructureKind::SemiDeterministic => {
            let g = infer_g(rows, y1_size, y2_size)?;
            Ok(Structure::SemiDeterministic { g })
        }
        StructureKind::Deterministic => {
            let g = infer_g(rows, y1_size, y2_size)?;
            let mut h = Vec::with_capacity(rows.len());
            for (x, row) in rows.iter().enumerate() {
                let base = g[x] * y2_size;
                let hit = (0..y2_size)
                    .find(|&y2| row[base + y2] >= 1.0 - STRUCT_TOL)
                    .ok_or_else(|| {
                        RegionError::InvalidChannel(format!(
                            "input {} does not map to a single output pair",
                            x
                        ))
                    })?;
                h.push(hit);
            }
            Ok(Structure::Deterministic { g, h })
        }
        StructureKind::PhysicallyDegraded => {
            let witness = infer_degradation(rows, y1_size, y2_size)?;
            Ok(Structure::PhysicallyDegraded {
                y2_given_y1: witness,
            })
        }
    }
}

/// Finds `g(x)`: the unique `y1` carrying all of row `x`'s mass.
fn infer_g(rows: &[Vec<f64>], y1_size: usize, y2_size: usize) -> Result<Vec<usize>> {
    let mut g = Vec::with_capacity(rows.len());
    for (x, row) in rows.iter().enumerate() {
        let mut support = None;
        for y1 in 0..y1_size {
            let mass: f64 = (0..y2_size).map(|y2| row[y1 * y2_size + y2]).sum();
            if mass > STRUCT_TOL {
                if support.replace(y1).is_some() {
                    return Err(RegionError::InvalidChannel(format!(
                        "input {} spreads mass over several first outputs; \
                         not semi-deterministic",
                        x
                    )));
                }
            }
        }
        g.push(support.ok_or_else(|| {
            RegionError::InvalidChannel(format!("input {} has an all-zero row", x))
        })?);
    }
    Ok(g)
}

/// Checks that `Q(y2 | x, y1)` does not depend on `x` and returns the common
/// kernel, one row per `y1`. Outputs `y1` that no input reaches get a uniform
/// witness row.
fn infer_degradation(rows: &[Vec<f64>], y1_size: usize, y2_size: usize) -> Result<Vec<Vec<f64>>> {
    let mut witness = Vec::with_capacity(y1_size);
    for y1 in 0..y1_size {
        let mut reference: Option<(usize, Vec<f64>)> = None;
        for (x, row) in rows.iter().enumerate() {
            let mass: f64 = (0..y2_size).map(|y2| row[y1 * y2_size + y2]).sum();
            if mass <= STRUCT_TOL {
                continue;
            }
            let cond: Vec<f64> = (0..y2_size).map(|y2| row[y1 * y2_size + y2] / mass).collect();
            match &reference {
                None => reference = Some((x, cond)),
                Some((x0, base)) => {
                    for y2 in 0..y2_size {
                        if (cond[y2] - base[y2]).abs() > STRUCT_TOL {
                            return Err(RegionError::InvalidChannel(format!(
                                "conditional of second output given first output {} \
                                 differs between inputs {} and {}; not physically degraded",
                                y1, x0, x
                            )));
                        }
                    }
                }
            }
        }
        witness.push(match reference {
            Some((_, cond)) => cond,
            None => vec![1.0 / y2_size as f64; y2_size],
        });
    }
    Ok(witness)
}
