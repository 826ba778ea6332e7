//! The distillation loop.
//!
//! Each epoch the teacher plays one episode; its `(state, action)` pairs are
//! routed to the buffer of the owning cell and every subpolicy trains on its
//! buffer. While the partition is editable, [`split_regions`] runs every
//! `n_split` epochs, [`merge_regions`] every `n_merge` epochs, and all
//! buffers are cleared every `n_reset` epochs. The final `n_freeze` epochs
//! only train.

mod config;
mod distilled;
mod episode;
pub mod events;
mod merge;
mod split;
mod state;

pub use config::{DistillConfig, FreezeMode};
pub use distilled::DistilledPolicy;
pub use episode::{assign_experiences, collect_episode, EpisodeTrace};
pub use events::{EpochRecord, MergeEvent, SplitEvent};
pub use merge::merge_regions;
pub use split::{split_regions, SplitOutcome, WalkStep};
pub use state::DistillState;

use crate::envs::Environment;
use crate::error::{Error, Result};
use crate::linear_policy::LinearPolicy;
use crate::policy::Policy;
use crate::rng;

/// Result of [`run_distillation`].
#[derive(Debug, Clone)]
pub struct DistillRun {
    pub policy: DistilledPolicy,
    pub log: Vec<EpochRecord>,
}

const ENV_STREAM: u64 = 0;
const INIT_STREAM: u64 = 1;
const TRAIN_STREAM: u64 = 2;

pub fn run_distillation(
    cfg: &DistillConfig,
    env: &mut dyn Environment,
    teacher: &dyn Policy,
) -> Result<DistillRun> {
    cfg.validate()?;
    let spec = env.spec().clone();
    let mut env_rng = rng::stream(cfg.seed, ENV_STREAM);
    let mut init_rng = rng::stream(cfg.seed, INIT_STREAM);
    let mut train_rng = rng::stream(cfg.seed, TRAIN_STREAM);
    let train_cfg = cfg.train_config();

    let mut trace = collect_episode(env, teacher, &mut env_rng)?;
    let first = trace.states[0].clone();
    let initial = LinearPolicy::init_random(spec.state_dim(), spec.action_dim(), &mut init_rng);
    let mut state = DistillState::new(first, initial, spec.action_bounds.clone())?;
    let mut log = Vec::with_capacity(cfg.n_epochs);

    for epoch in 0..cfg.n_epochs {
        if epoch > 0 {
            trace = collect_episode(env, teacher, &mut env_rng)?;
        }
        state.assign(&trace)?;
        let buffer_sizes = state.buffer_sizes();
        let train_losses = state.train_all(&train_cfg, &mut train_rng);

        let editable = cfg.editable(epoch);
        let mut splits = Vec::new();
        let mut merges = Vec::new();
        let mut buffers_reset = false;
        if editable {
            if cfg.split_due(epoch) {
                let outcome = split_regions(&mut state, &trace, teacher, cfg, &mut init_rng)
                    .map_err(|e| match e {
                        Error::CodewordCap { cap, .. } => Error::CodewordCap { cap, epoch },
                        other => other,
                    })?;
                splits = outcome.events;
            }
            if cfg.merge_due(epoch) {
                merges = merge_regions(&mut state, cfg)?;
            }
            if cfg.reset_due(epoch) {
                state.reset_all_buffers();
                buffers_reset = true;
            }
        }
        debug_assert!(state.is_aligned());
        log.push(EpochRecord {
            epoch,
            editable,
            trace_len: trace.len(),
            cells: state.len(),
            buffer_sizes,
            train_losses,
            splits,
            merges,
            buffers_reset,
        });
        trace.clear();
    }

    Ok(DistillRun {
        policy: state.into_policy(),
        log,
    })
}
