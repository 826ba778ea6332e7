//! Feed-forward teacher networks loaded from JSON weight files.
//!
//! File layout:
//!
//! ```json
//! {"layers": [{"w": [[...], ...], "b": [...], "act": "relu"}, ...],
//!  "squash_output": true, "state_dim": 2, "action_dim": 2}
//! ```
//!
//! Each `w` is row-major with one row per output unit. With `squash_output`
//! the final pre-activation goes through `tanh` and is rescaled to the action
//! bounds, which default to `[-1, 1]` per dimension.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::envs::Interval;
use crate::error::{Error, Result};
use crate::policy::Policy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Relu,
    Tanh,
    Identity,
}

impl Activation {
    fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Relu => x.max(0.0),
            Activation::Tanh => x.tanh(),
            Activation::Identity => x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    pub w: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub act: Activation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MlpFile {
    layers: Vec<Layer>,
    squash_output: bool,
    state_dim: usize,
    action_dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MlpPolicy {
    layers: Vec<Layer>,
    squash_output: bool,
    state_dim: usize,
    action_dim: usize,
    action_bounds: Vec<Interval>,
}

impl MlpPolicy {
    pub fn new(
        layers: Vec<Layer>,
        squash_output: bool,
        state_dim: usize,
        action_dim: usize,
    ) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::TeacherFile("network has no layers".into()));
        }
        let mut width = state_dim;
        for (i, layer) in layers.iter().enumerate() {
            if layer.w.len() != layer.b.len() {
                return Err(Error::TeacherFile(format!(
                    "layer {i}: {} weight rows but {} biases",
                    layer.w.len(),
                    layer.b.len()
                )));
            }
            if let Some(row) = layer.w.iter().position(|r| r.len() != width) {
                return Err(Error::TeacherFile(format!(
                    "layer {i}: row {row} has {} inputs, expected {width}",
                    layer.w[row].len()
                )));
            }
            width = layer.b.len();
        }
        if width != action_dim {
            return Err(Error::TeacherFile(format!(
                "layer {}: output width {width} does not match action_dim {action_dim}",
                layers.len() - 1
            )));
        }
        Ok(MlpPolicy {
            layers,
            squash_output,
            state_dim,
            action_dim,
            action_bounds: vec![Interval::new(-1.0, 1.0); action_dim],
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: MlpFile =
            serde_json::from_str(text).map_err(|e| Error::TeacherFile(e.to_string()))?;
        MlpPolicy::new(file.layers, file.squash_output, file.state_dim, file.action_dim)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| Error::TeacherFile(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text).map_err(|e| match e {
            Error::TeacherFile(msg) => Error::TeacherFile(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_json_string(&self) -> String {
        let file = MlpFile {
            layers: self.layers.clone(),
            squash_output: self.squash_output,
            state_dim: self.state_dim,
            action_dim: self.action_dim,
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json_string())?;
        Ok(())
    }

    /// Bounds that squashed outputs are rescaled to.
    pub fn with_action_bounds(mut self, bounds: Vec<Interval>) -> Result<Self> {
        if bounds.len() != self.action_dim {
            return Err(Error::DimensionMismatch {
                expected: self.action_dim,
                actual: bounds.len(),
            });
        }
        self.action_bounds = bounds;
        Ok(self)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }
}

impl Policy for MlpPolicy {
    fn state_dim(&self) -> usize {
        self.state_dim
    }

    fn action_dim(&self) -> usize {
        self.action_dim
    }

    fn act(&self, state: &[f64]) -> Result<Vec<f64>> {
        if state.len() != self.state_dim {
            return Err(Error::DimensionMismatch {
                expected: self.state_dim,
                actual: state.len(),
            });
        }
        let mut x = state.to_vec();
        for layer in &self.layers {
            x = layer
                .w
                .iter()
                .zip(&layer.b)
                .map(|(row, b)| {
                    layer
                        .act
                        .apply(row.iter().zip(&x).map(|(w, v)| w * v).sum::<f64>() + b)
                })
                .collect();
        }
        if self.squash_output {
            for (v, bounds) in x.iter_mut().zip(&self.action_bounds) {
                *v = bounds.low + (v.tanh() + 1.0) * 0.5 * bounds.width();
            }
        }
        Ok(x)
    }
}
