//! Black-box teacher policies, resolved from a source string:
//! `oracle:<tag>` for a registered scripted oracle, `file:<path>` for a JSON
//! weight file (see [`mlp`]).

pub mod mlp;
pub mod oracles;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

pub use mlp::MlpPolicy;
pub use oracles::{MountainCarEnergy, SimpleGoalPotentialField};

use crate::envs::EnvSpec;
use crate::error::{Error, Result};
use crate::policy::Policy;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TeacherSource {
    Oracle(String),
    File(PathBuf),
}

impl FromStr for TeacherSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some(("oracle", tag)) if !tag.is_empty() => Ok(TeacherSource::Oracle(tag.into())),
            Some(("file", path)) if !path.is_empty() => Ok(TeacherSource::File(path.into())),
            _ => Err(Error::UnknownTeacher(format!(
                "{s} (expected oracle:<tag> or file:<path>)"
            ))),
        }
    }
}

impl fmt::Display for TeacherSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TeacherSource::Oracle(tag) => write!(f, "oracle:{tag}"),
            TeacherSource::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

pub type TeacherFactory = fn() -> Box<dyn Policy>;

#[derive(Clone, Default)]
pub struct TeacherRegistry {
    oracles: BTreeMap<String, TeacherFactory>,
}

impl fmt::Debug for TeacherRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.oracles.keys()).finish()
    }
}

impl TeacherRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        let mut reg = TeacherRegistry::new();
        reg.register(SimpleGoalPotentialField::TAG, || {
            Box::new(SimpleGoalPotentialField::default())
        });
        reg.register(MountainCarEnergy::TAG, || Box::new(MountainCarEnergy));
        reg
    }

    pub fn register(&mut self, tag: &str, factory: TeacherFactory) {
        self.oracles.insert(tag.to_string(), factory);
    }

    pub fn tags(&self) -> impl Iterator<Item = &str> {
        self.oracles.keys().map(String::as_str)
    }

    /// Builds the teacher named by `source` and checks it against `spec`.
    pub fn resolve(&self, source: &TeacherSource, spec: &EnvSpec) -> Result<Box<dyn Policy>> {
        let teacher: Box<dyn Policy> = match source {
            TeacherSource::Oracle(tag) => self
                .oracles
                .get(tag)
                .map(|f| f())
                .ok_or_else(|| Error::UnknownTeacher(source.to_string()))?,
            TeacherSource::File(path) => {
                Box::new(MlpPolicy::load(path)?.with_action_bounds(spec.action_bounds.clone())?)
            }
        };
        if teacher.state_dim() != spec.state_dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.state_dim(),
                actual: teacher.state_dim(),
            });
        }
        if teacher.action_dim() != spec.action_dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.action_dim(),
                actual: teacher.action_dim(),
            });
        }
        Ok(teacher)
    }
}
