//! On-disk form of a distilled policy, and its human-readable rendering.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::distiller::{DistillConfig, DistilledPolicy};
use crate::envs::Interval;
use crate::error::{Error, Result};
use crate::linear_policy::LinearPolicy;
use crate::partition::VoronoiPartition;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubpolicyRecord {
    pub cell: usize,
    /// Row-major, one row per action component.
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub seed: Option<u64>,
    /// SHA-256 of the canonical JSON of the distillation config.
    pub config_hash: Option<String>,
    pub teacher: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyBundle {
    pub format_version: String,
    pub env: String,
    pub state_dim: usize,
    pub action_dim: usize,
    pub codewords: Vec<Vec<f64>>,
    pub subpolicies: Vec<SubpolicyRecord>,
    pub action_bounds: Vec<Interval>,
    pub provenance: Provenance,
}

pub fn config_hash(cfg: &DistillConfig) -> String {
    let canonical = serde_json::to_vec(cfg).expect("config serializes");
    Sha256::digest(&canonical)
        .iter()
        .fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

impl PolicyBundle {
    pub fn from_policy(policy: &DistilledPolicy, env: &str, provenance: Provenance) -> Self {
        PolicyBundle {
            format_version: FORMAT_VERSION.into(),
            env: env.into(),
            state_dim: policy.partition().dim(),
            action_dim: policy.action_bounds().len(),
            codewords: policy.partition().codewords().to_vec(),
            subpolicies: policy
                .subpolicies()
                .iter()
                .enumerate()
                .map(|(cell, p)| SubpolicyRecord {
                    cell,
                    weights: p.weights().to_vec(),
                    bias: p.bias().to_vec(),
                })
                .collect(),
            action_bounds: policy.action_bounds().to_vec(),
            provenance,
        }
    }

    /// Checks the version and that every array lines up, then builds the
    /// policy.
    pub fn to_policy(&self) -> Result<DistilledPolicy> {
        let major = self.format_version.split('.').next().unwrap_or_default();
        if major != FORMAT_VERSION {
            return Err(Error::Bundle(format!(
                "unsupported format version {:?}",
                self.format_version
            )));
        }
        if self.action_bounds.len() != self.action_dim {
            return Err(Error::Bundle(format!(
                "{} action bounds for action_dim {}",
                self.action_bounds.len(),
                self.action_dim
            )));
        }
        if let Some(b) = self.action_bounds.iter().find(|b| b.low.partial_cmp(&b.high).is_none_or(|o| o.is_gt())) {
            return Err(Error::Bundle(format!("empty action interval {b:?}")));
        }
        if self.codewords.len() != self.subpolicies.len() {
            return Err(Error::Bundle(format!(
                "{} codewords but {} subpolicies",
                self.codewords.len(),
                self.subpolicies.len()
            )));
        }
        for (k, c) in self.codewords.iter().enumerate() {
            if c.len() != self.state_dim {
                return Err(Error::Bundle(format!(
                    "codeword {k} has {} coordinates, expected {}",
                    c.len(),
                    self.state_dim
                )));
            }
        }
        let mut subpolicies = Vec::with_capacity(self.subpolicies.len());
        for (k, rec) in self.subpolicies.iter().enumerate() {
            if rec.cell != k {
                return Err(Error::Bundle(format!(
                    "subpolicy at position {k} is labelled cell {}",
                    rec.cell
                )));
            }
            let p = LinearPolicy::new(rec.weights.clone(), rec.bias.clone())
                .map_err(|e| Error::Bundle(format!("subpolicy {k}: {e}")))?;
            subpolicies.push(p);
        }
        let partition = VoronoiPartition::from_codewords(self.state_dim, self.codewords.clone())
            .map_err(|e| Error::Bundle(e.to_string()))?;
        DistilledPolicy::new(partition, subpolicies, self.action_bounds.clone())
            .map_err(|e| Error::Bundle(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("bundle serializes");
        s.push('\n');
        s
    }

    /// Parses and validates.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let bundle: PolicyBundle =
            serde_json::from_str(text).map_err(|e| Error::Bundle(e.to_string()))?;
        bundle.to_policy()?;
        Ok(bundle)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}

fn fixed4(v: f64) -> String {
    // Avoid printing "-0.0000".
    let v = if (v * 1e4).round() == 0.0 { 0.0 } else { v };
    format!("{v:+.4}")
}

/// `w₀x₀ + … + b` with every coefficient signed and rounded to 4 decimals,
/// e.g. `-0.1480x -0.0210y -0.0550`.
pub fn format_formula(weights: &[f64], bias: f64, names: &[String]) -> String {
    let mut terms: Vec<String> = weights
        .iter()
        .zip(names)
        .map(|(w, n)| format!("{}{n}", fixed4(*w)))
        .collect();
    terms.push(fixed4(bias));
    terms.join(" ")
}

fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|k| format!("{prefix}{k}")).collect()
}

/// One line per cell: the codeword, then `name = formula` per action
/// component. Missing or mis-sized names fall back to `x0, x1, …` and
/// `a0, a1, …`.
pub fn inspect_table(policy: &DistilledPolicy, state_names: &[String], action_names: &[String]) -> String {
    let d = policy.partition().dim();
    let a = policy.action_bounds().len();
    let state_names = if state_names.len() == d {
        state_names.to_vec()
    } else {
        default_names("x", d)
    };
    let action_names = if action_names.len() == a {
        action_names.to_vec()
    } else {
        default_names("a", a)
    };
    let mut out = String::new();
    for (cw, p) in policy.partition().iter().zip(policy.subpolicies()) {
        let coords: Vec<String> = cw.coords.iter().map(|c| format!("{c:.4}")).collect();
        let _ = write!(out, "{:>3}  [{}]", cw.index, coords.join(", "));
        for (k, name) in action_names.iter().enumerate() {
            let f = format_formula(&p.weights()[k], p.bias()[k], &state_names);
            let _ = write!(out, "  {name} = {f}");
        }
        out.push('\n');
    }
    out
}
