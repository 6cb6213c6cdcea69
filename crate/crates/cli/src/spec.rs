//! On-disk experiment descriptions. Every reader reports malformed JSON with
//! a pointer to the offending element, so a typo deep inside a transition
//! matrix names its own row and column.

use std::fs;
use std::path::Path;

use codesim::bc::{BcCodeConfig, BcRates, DEFAULT_DECODER_EPS};
use codesim::resolvability::ResolvabilityProblem;
use probkit::{axis, JointPmf};
use regions::{AuxPmf, BcChannel, Structure, StructureKind};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::{CliError, Result};

/// A broadcast channel as written in a JSON file: one transition row per
/// input letter in row-major `(y1, y2)` order, plus a structural claim that
/// is verified against the rows. The optional `g` / `h` maps let a file pin
/// the deterministic outputs it believes in; they are checked against the
/// witnesses inferred from the rows.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpecFile {
    pub x_size: usize,
    pub y1_size: usize,
    pub y2_size: usize,
    pub rows: Vec<Vec<f64>>,
    pub structure: StructureTag,
    #[serde(default)]
    pub g: Option<Vec<usize>>,
    #[serde(default)]
    pub h: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureTag {
    General,
    Sd,
    Pd,
    Det,
}

impl From<StructureTag> for StructureKind {
    fn from(tag: StructureTag) -> Self {
        match tag {
            StructureTag::General => StructureKind::General,
            StructureTag::Sd => StructureKind::SemiDeterministic,
            StructureTag::Pd => StructureKind::PhysicallyDegraded,
            StructureTag::Det => StructureKind::Deterministic,
        }
    }
}

impl ChannelSpecFile {
    /// Validates the rows against the structural claim and the optional
    /// deterministic-output maps, returning the verified channel.
    pub fn build(self) -> Result<BcChannel> {
        let ch = BcChannel::new(
            self.x_size,
            self.y1_size,
            self.y2_size,
            self.rows,
            self.structure.into(),
        )?;
        if let Some(claimed) = &self.g {
            match ch.g() {
                Some(found) if found == claimed.as_slice() => {}
                Some(found) => {
                    return Err(CliError::Validation(format!(
                        "declared g map {:?} disagrees with the transition rows, which give {:?}",
                        claimed, found
                    )))
                }
                None => {
                    return Err(CliError::Validation(
                        "a g map only applies to sd or det structure".into(),
                    ))
                }
            }
        }
        if let Some(claimed) = &self.h {
            match &ch.structure() {
                Structure::Deterministic { h, .. } if h == claimed => {}
                Structure::Deterministic { h, .. } => {
                    return Err(CliError::Validation(format!(
                        "declared h map {:?} disagrees with the transition rows, which give {:?}",
                        claimed, h
                    )))
                }
                _ => {
                    return Err(CliError::Validation(
                        "an h map only applies to det structure".into(),
                    ))
                }
            }
        }
        Ok(ch)
    }
}

/// A simulation experiment as written in a JSON file. Blocklength and seed
/// stay on the command line so one file describes a whole sweep.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SimSpecFile {
    /// A channel-simulation instance: a joint law over `(S0, S, U, V)` given
    /// as a flat row-major table, plus the two codebook rates.
    Resolvability {
        s0_size: usize,
        s_size: usize,
        u_size: usize,
        v_size: usize,
        joint: Vec<f64>,
        rt: f64,
        rp: f64,
    },
    /// A broadcast-code instance: channel, auxiliary input law over
    /// `(U0, U1, U2, X)`, the seven code rates, and the decoders'
    /// typicality slack.
    Bc {
        channel: ChannelSpecFile,
        aux: AuxSpecFile,
        rates: BcRates,
        #[serde(default)]
        eps: Option<f64>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuxSpecFile {
    pub u0_size: usize,
    pub u1_size: usize,
    pub u2_size: usize,
    pub x_size: usize,
    pub joint: Vec<f64>,
}

fn joint_from_flat(axes: Vec<probkit::Axis>, flat: Vec<f64>) -> Result<JointPmf> {
    let cells: usize = axes.iter().map(|a| a.size).product();
    if flat.len() != cells {
        return Err(CliError::Validation(format!(
            "joint table has {} entries, the declared axes need {}",
            flat.len(),
            cells
        )));
    }
    Ok(JointPmf::new(axes, flat)?)
}

impl SimSpecFile {
    pub fn into_experiment(self, n: usize, seed: u64) -> Result<Experiment> {
        match self {
            SimSpecFile::Resolvability {
                s0_size,
                s_size,
                u_size,
                v_size,
                joint,
                rt,
                rp,
            } => {
                let joint = joint_from_flat(
                    vec![
                        axis("S0", s0_size),
                        axis("S", s_size),
                        axis("U", u_size),
                        axis("V", v_size),
                    ],
                    joint,
                )?;
                Ok(Experiment::Resolvability(ResolvabilityProblem::new(
                    joint, n, rt, rp, seed,
                )?))
            }
            SimSpecFile::Bc {
                channel,
                aux,
                rates,
                eps,
            } => {
                let ch = channel.build()?;
                let joint = joint_from_flat(
                    vec![
                        axis("U0", aux.u0_size),
                        axis("U1", aux.u1_size),
                        axis("U2", aux.u2_size),
                        axis("X", aux.x_size),
                    ],
                    aux.joint,
                )?;
                Ok(Experiment::Bc(BcCodeConfig {
                    ch,
                    aux: AuxPmf::new(joint)?,
                    n,
                    rates,
                    eps: eps.unwrap_or(DEFAULT_DECODER_EPS),
                    seed,
                }))
            }
        }
    }
}

pub enum Experiment {
    Resolvability(ResolvabilityProblem),
    Bc(BcCodeConfig),
}

/// A linear-inequality system as written in a JSON file, mirroring the shape
/// emitted by the exact-arithmetic library: rational literals as `p` or
/// `p/q` strings.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpecFile {
    pub vars: Vec<String>,
    pub ineqs: Vec<IneqSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IneqSpec {
    pub coeffs: std::collections::BTreeMap<String, String>,
    pub rhs: String,
    #[serde(default)]
    pub strict: bool,
}

impl SystemSpecFile {
    pub fn build(self) -> Result<polytope::IneqSystem> {
        let mut sys = polytope::IneqSystem::new(self.vars)?;
        for row in self.ineqs {
            let mut coeffs = Vec::with_capacity(row.coeffs.len());
            for (var, lit) in row.coeffs {
                coeffs.push((var, polytope::parse_rational(&lit)?));
            }
            sys.push(polytope::LinIneq::new(coeffs, polytope::parse_rational(&row.rhs)?))?;
        }
        Ok(sys)
    }
}

/// Reads and deserializes a JSON file, turning any shape error into a parse
/// failure that carries a JSON pointer to the offending element.
pub fn read_json_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {}", path.display(), e)))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        CliError::Parse(format!(
            "{}: {} (at {})",
            path.display(),
            e.inner(),
            json_pointer(e.path())
        ))
    })
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{key}")),
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    if out.is_empty() {
        "/".into()
    } else {
        out
    }
}
