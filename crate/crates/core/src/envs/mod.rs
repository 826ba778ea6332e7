//! Deterministic control environments behind a common [`Environment`] trait,
//! selected at runtime by name through an [`EnvRegistry`].

pub mod mountain_car;
pub mod simple_goal;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distiller::DistillConfig;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

pub use mountain_car::MountainCarContinuous;
pub use simple_goal::SimpleGoal;

/// Closed interval `[low, high]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub const fn new(low: f64, high: f64) -> Self {
        Interval { low, high }
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.low, self.high)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }

    pub fn width(&self) -> f64 {
        self.high - self.low
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvSpec {
    pub name: String,
    pub state_bounds: Vec<Interval>,
    pub action_bounds: Vec<Interval>,
    /// Truncation length in steps.
    pub t_max: usize,
    /// Variable names used when printing formulas, one per state dimension.
    pub state_names: Vec<String>,
    /// Names of the action components, used as formula labels.
    pub action_names: Vec<String>,
}

impl EnvSpec {
    pub fn state_dim(&self) -> usize {
        self.state_bounds.len()
    }

    pub fn action_dim(&self) -> usize {
        self.action_bounds.len()
    }

    pub fn clamp_action(&self, action: &mut [f64]) {
        for (a, b) in action.iter_mut().zip(&self.action_bounds) {
            *a = b.clamp(*a);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    pub next_state: Vec<f64>,
    pub reward: f64,
    pub terminated: bool,
    pub truncated: bool,
}

impl StepResult {
    pub fn done(&self) -> bool {
        self.terminated || self.truncated
    }
}

pub trait Environment: Send {
    fn spec(&self) -> &EnvSpec;

    /// Starts a new episode and returns the initial state.
    fn reset(&mut self, rng: &mut SeededRng) -> Vec<f64>;

    fn step(&mut self, action: &[f64]) -> Result<StepResult>;
}

pub(crate) fn check_action(spec: &EnvSpec, action: &[f64]) -> Result<()> {
    if action.len() != spec.action_dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.action_dim(),
            actual: action.len(),
        });
    }
    Ok(())
}

pub type EnvFactory = fn() -> Box<dyn Environment>;

/// One registered environment: how to build it and how to distill on it.
#[derive(Clone)]
pub struct EnvEntry {
    pub name: String,
    pub factory: EnvFactory,
    /// Hyperparameter defaults for distillation on this environment.
    pub default_config: fn() -> DistillConfig,
    /// Teacher source used when none is given.
    pub default_teacher: String,
}

impl fmt::Debug for EnvEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnvEntry")
            .field("name", &self.name)
            .field("default_teacher", &self.default_teacher)
            .finish()
    }
}

impl EnvEntry {
    pub fn create(&self) -> Box<dyn Environment> {
        (self.factory)()
    }
}

#[derive(Debug, Clone, Default)]
pub struct EnvRegistry {
    entries: BTreeMap<String, EnvEntry>,
}

impl EnvRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding `simplegoal-v0` and `mountaincarcontinuous-v0`.
    pub fn builtin() -> Self {
        let mut reg = EnvRegistry::new();
        reg.register(EnvEntry {
            name: simple_goal::NAME.into(),
            factory: || Box::new(SimpleGoal::new()),
            default_config: DistillConfig::simple_goal,
            default_teacher: "oracle:simplegoal_potential_field".into(),
        });
        reg.register(EnvEntry {
            name: mountain_car::NAME.into(),
            factory: || Box::new(MountainCarContinuous::new()),
            default_config: DistillConfig::mountain_car,
            default_teacher: "oracle:mountaincar_energy".into(),
        });
        reg
    }

    pub fn register(&mut self, entry: EnvEntry) {
        self.entries.insert(entry.name.clone(), entry);
    }

    pub fn get(&self, name: &str) -> Result<&EnvEntry> {
        self.entries
            .get(&name.to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownEnvironment(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}
