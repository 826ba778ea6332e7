//! Loss-triggered cell splitting along a teacher trajectory.

use crate::error::{Error, Result};
use crate::linear_policy::mse;
use crate::partition::manhattan;
use crate::policy::Policy;
use crate::rng::SeededRng;

use super::events::SplitEvent;
use super::{DistillConfig, DistillState, EpisodeTrace};

/// Bookkeeping for one visited state of the split walk.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkStep {
    pub step: usize,
    pub cell: usize,
    pub loss: f64,
    pub mean_loss: f64,
    pub distance: f64,
    pub split: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SplitOutcome {
    pub events: Vec<SplitEvent>,
    pub walk: Vec<WalkStep>,
}

impl SplitOutcome {
    pub fn count(&self) -> usize {
        self.events.len()
    }
}

/// Replays `trace`, comparing the teacher with the owning subpolicy at every
/// state. The regional loss list restarts whenever the walk enters a
/// different cell. A state becomes a new codeword when the mean regional
/// loss exceeds `max_pol_loss` and the state is farther than
/// `min_pol_distance` (L1) from its codeword; the affected buffers are then
/// cleared. With `one_split` the walk stops after the first split.
pub fn split_regions(
    state: &mut DistillState,
    trace: &EpisodeTrace,
    teacher: &dyn Policy,
    cfg: &DistillConfig,
    rng: &mut SeededRng,
) -> Result<SplitOutcome> {
    let mut out = SplitOutcome::default();
    let Some(first) = trace.states.first() else {
        return Ok(out);
    };
    let mut prev = state.partition().nearest(first)?;
    let mut sum = 0.0;
    let mut count = 0usize;

    for (t, s) in trace.states.iter().enumerate() {
        let i = state.partition().nearest(s)?;
        if i != prev {
            prev = i;
            sum = 0.0;
            count = 0;
        }
        let target = teacher.act(s)?;
        let pred = state.policy().subpolicy(i).predict(s)?;
        let loss = mse(&target, &pred);
        sum += loss;
        count += 1;
        let mean_loss = sum / count as f64;
        let codeword = state.partition().codeword(i)?.to_vec();
        let distance = manhattan(s, &codeword);
        let trigger = mean_loss > cfg.max_pol_loss && distance > cfg.min_pol_distance;
        out.walk.push(WalkStep {
            step: t,
            cell: i,
            loss,
            mean_loss,
            distance,
            split: trigger,
        });
        if !trigger {
            continue;
        }
        if state.len() >= cfg.max_cells {
            return Err(Error::CodewordCap {
                cap: cfg.max_cells,
                epoch: 0,
            });
        }
        let prior: Vec<usize> = state.partition().neighbours(i)?.to_vec();
        let new_cell = state.add_cell(s.clone(), rng)?;
        let mut reset = prior;
        if cfg.reset_split_cell {
            reset.push(i);
        }
        reset.push(new_cell);
        reset.sort_unstable();
        reset.dedup();
        state.reset_buffers(&reset);
        out.events.push(SplitEvent {
            step: t,
            cell: i,
            new_cell,
            mean_loss,
            distance,
            state: s.clone(),
            codeword,
            reset,
            cells_after: state.partition().len(),
            subpolicies_after: state.policy().subpolicies().len(),
        });
        if cfg.one_split {
            break;
        }
    }
    Ok(out)
}
