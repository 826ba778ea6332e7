//! Run configuration: a flat JSON object holding the distillation
//! hyperparameters under their conventional names plus a few run-level keys
//! (`env`, `teacher`, `eval_episodes`, `out`). Missing keys take the
//! defaults of the chosen environment; unknown keys are rejected.

use std::path::PathBuf;

use serde_json::{Map, Value};

use crate::distiller::{DistillConfig, FreezeMode};
use crate::envs::EnvRegistry;
use crate::error::{Error, Result};
use crate::teachers::TeacherSource;

pub const DEFAULT_ENV: &str = "simplegoal-v0";
pub const DEFAULT_EVAL_EPISODES: usize = 1000;
pub const DEFAULT_OUT: &str = "out";

const RUN_KEYS: [&str; 4] = ["env", "teacher", "eval_episodes", "out"];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub env: String,
    pub teacher: TeacherSource,
    pub eval_episodes: usize,
    pub out: PathBuf,
    pub distill: DistillConfig,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub env: Option<String>,
    pub teacher: Option<String>,
    pub seed: Option<u64>,
    pub freeze_mode: Option<FreezeMode>,
    pub out: Option<PathBuf>,
    pub eval_episodes: Option<usize>,
}

fn take_string(map: &mut Map<String, Value>, key: &str) -> Result<Option<String>> {
    match map.remove(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(other) => Err(Error::Config(format!("key `{key}`: expected a string, got {other}"))),
    }
}

impl RunConfig {
    /// Builds a config from optional file text and overrides.
    pub fn resolve(file: Option<&str>, overrides: &Overrides, envs: &EnvRegistry) -> Result<Self> {
        let mut map = match file {
            None => Map::new(),
            Some(text) => match serde_json::from_str::<Value>(text)
                .map_err(|e| Error::Config(format!("malformed config: {e}")))?
            {
                Value::Object(m) => m,
                _ => return Err(Error::Config("config must be a JSON object".into())),
            },
        };

        let file_env = take_string(&mut map, "env")?;
        let env = overrides
            .env
            .clone()
            .or(file_env)
            .unwrap_or_else(|| DEFAULT_ENV.into())
            .to_ascii_lowercase();
        let entry = envs.get(&env)?;
        let file_teacher = take_string(&mut map, "teacher")?;
        let teacher: TeacherSource = overrides
            .teacher
            .clone()
            .or(file_teacher)
            .unwrap_or_else(|| entry.default_teacher.clone())
            .parse()?;
        let file_episodes = match map.remove("eval_episodes") {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_u64().filter(|&n| n > 0).ok_or_else(|| {
                Error::Config(format!("key `eval_episodes`: expected a positive integer, got {v}"))
            })? as usize),
        };
        let eval_episodes = overrides
            .eval_episodes
            .or(file_episodes)
            .unwrap_or(DEFAULT_EVAL_EPISODES);
        let file_out = take_string(&mut map, "out")?.map(PathBuf::from);
        let out = overrides
            .out
            .clone()
            .or(file_out)
            .unwrap_or_else(|| DEFAULT_OUT.into());

        let defaults = (entry.default_config)();
        let Value::Object(mut merged) = serde_json::to_value(&defaults)? else {
            unreachable!("config serializes to an object")
        };
        for (key, value) in map {
            let Some(slot) = merged.get_mut(&key) else {
                return Err(Error::Config(format!("unknown key `{key}`")));
            };
            // Type-check each key on its own so errors can name it.
            let mut probe = serde_json::to_value(&defaults)?;
            probe[&key] = value.clone();
            serde_json::from_value::<DistillConfig>(probe)
                .map_err(|e| Error::Config(format!("key `{key}`: {e}")))?;
            *slot = value;
        }
        let mut distill: DistillConfig = serde_json::from_value(Value::Object(merged))
            .map_err(|e| Error::Config(e.to_string()))?;
        if let Some(seed) = overrides.seed {
            distill.seed = seed;
        }
        if let Some(mode) = overrides.freeze_mode {
            distill.freeze_mode = mode;
        }
        distill.validate()?;
        Ok(RunConfig {
            env,
            teacher,
            eval_episodes,
            out,
            distill,
        })
    }

    /// The flat JSON form accepted by [`RunConfig::resolve`].
    pub fn to_json_string(&self) -> String {
        let Value::Object(distill) = serde_json::to_value(&self.distill).expect("config serializes")
        else {
            unreachable!()
        };
        let mut map = Map::new();
        map.insert("env".into(), self.env.clone().into());
        map.insert("teacher".into(), self.teacher.to_string().into());
        map.insert("eval_episodes".into(), self.eval_episodes.into());
        map.insert("out".into(), self.out.display().to_string().into());
        map.extend(distill);
        debug_assert!(RUN_KEYS.iter().all(|k| map.contains_key(*k)));
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json");
        s.push('\n');
        s
    }
}
