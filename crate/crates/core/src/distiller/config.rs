use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear_policy::{StepRule, TrainConfig};

/// Which epochs may edit the partition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FreezeMode {
    /// Edits allowed while `epoch < n_epochs - n_freeze`; the last
    /// `n_freeze` epochs only train.
    #[default]
    Text,
    /// Edits allowed while `epoch < n_freeze`.
    Literal,
}

/// Hyperparameters of one distillation run. Keys serialize under their
/// conventional names (`n_epochs`, `max_pol_loss`, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistillConfig {
    pub n_epochs: usize,
    /// Split cadence in epochs.
    pub n_split: usize,
    /// Merge cadence in epochs.
    pub n_merge: usize,
    /// Length of the final train-only phase.
    pub n_freeze: usize,
    /// Cadence of the all-buffer reset during the editable phase.
    pub n_reset: usize,
    /// Turns the `n_reset` periodic reset on or off.
    pub periodic_reset: bool,
    /// Merge when the L∞ parameter distance of two neighbours is below this.
    pub min_param_distance: f64,
    /// Only split at states farther than this (L1) from their codeword.
    pub min_pol_distance: f64,
    /// Split when the mean regional loss exceeds this.
    pub max_pol_loss: f64,
    pub one_split: bool,
    pub freeze_mode: FreezeMode,
    /// Also clear the buffer of the cell being split.
    pub reset_split_cell: bool,
    /// Abort once the codebook would grow beyond this many cells.
    pub max_cells: usize,
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    pub batch_size: usize,
    pub max_steps: usize,
    pub step_rule: StepRule,
    pub seed: u64,
}

impl Default for DistillConfig {
    fn default() -> Self {
        Self::simple_goal()
    }
}

impl DistillConfig {
    fn base() -> Self {
        let train = TrainConfig::default();
        DistillConfig {
            n_epochs: 1,
            n_split: 1,
            n_merge: 1,
            n_freeze: 0,
            n_reset: 1,
            periodic_reset: true,
            min_param_distance: 1.0,
            min_pol_distance: 1.0,
            max_pol_loss: 1.0,
            one_split: false,
            freeze_mode: FreezeMode::Text,
            reset_split_cell: true,
            max_cells: 512,
            lr: train.lr,
            beta1: train.beta1,
            beta2: train.beta2,
            eps: train.eps,
            batch_size: train.batch_size,
            max_steps: train.max_steps,
            step_rule: train.step_rule,
            seed: 0,
        }
    }

    /// Published settings for `simplegoal-v0`.
    pub fn simple_goal() -> Self {
        DistillConfig {
            n_epochs: 5000,
            n_split: 20,
            n_merge: 100,
            n_freeze: 1000,
            n_reset: 500,
            min_param_distance: 0.5,
            min_pol_distance: 0.3,
            max_pol_loss: 0.0001,
            one_split: false,
            ..Self::base()
        }
    }

    /// Published settings for `mountaincarcontinuous-v0`.
    pub fn mountain_car() -> Self {
        DistillConfig {
            n_epochs: 2000,
            n_split: 50,
            n_merge: 100,
            n_freeze: 400,
            n_reset: 500,
            min_param_distance: 0.3,
            min_pol_distance: 0.04,
            max_pol_loss: 0.00001,
            one_split: false,
            ..Self::base()
        }
    }

    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            lr: self.lr,
            beta1: self.beta1,
            beta2: self.beta2,
            eps: self.eps,
            batch_size: self.batch_size,
            max_steps: self.max_steps,
            step_rule: self.step_rule,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.to_string()));
        if self.n_epochs == 0 {
            return bad("n_epochs must be positive");
        }
        for (name, v) in [
            ("n_split", self.n_split),
            ("n_merge", self.n_merge),
            ("n_reset", self.n_reset),
            ("batch_size", self.batch_size),
            ("max_steps", self.max_steps),
            ("max_cells", self.max_cells),
        ] {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        if self.n_freeze >= self.n_epochs {
            return bad("n_freeze must be smaller than n_epochs");
        }
        for (name, v) in [
            ("min_param_distance", self.min_param_distance),
            ("min_pol_distance", self.min_pol_distance),
            ("max_pol_loss", self.max_pol_loss),
            ("lr", self.lr),
            ("eps", self.eps),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive and finite")));
            }
        }
        for (name, v) in [("beta1", self.beta1), ("beta2", self.beta2)] {
            if !(0.0..1.0).contains(&v) {
                return Err(Error::Config(format!("{name} must lie in [0, 1)")));
            }
        }
        Ok(())
    }

    /// Whether the partition may change at the end of `epoch`.
    pub fn editable(&self, epoch: usize) -> bool {
        match self.freeze_mode {
            FreezeMode::Text => epoch < self.n_epochs - self.n_freeze,
            FreezeMode::Literal => epoch < self.n_freeze,
        }
    }

    fn due(cadence: usize, epoch: usize) -> bool {
        (epoch + 1).is_multiple_of(cadence)
    }

    pub fn split_due(&self, epoch: usize) -> bool {
        Self::due(self.n_split, epoch)
    }

    pub fn merge_due(&self, epoch: usize) -> bool {
        Self::due(self.n_merge, epoch)
    }

    pub fn reset_due(&self, epoch: usize) -> bool {
        self.periodic_reset && Self::due(self.n_reset, epoch)
    }
}
