use crate::envs::Interval;
use crate::error::Result;
use crate::linear_policy::{train_epoch, ExperienceBuffer, LinearPolicy, OptimizerState, TrainConfig};
use crate::partition::VoronoiPartition;
use crate::rng::SeededRng;

use super::{assign_experiences, DistilledPolicy, EpisodeTrace};

/// A distilled policy under construction: the policy itself plus one
/// experience buffer and one optimizer state per cell, all index-aligned.
#[derive(Debug, Clone)]
pub struct DistillState {
    policy: DistilledPolicy,
    buffers: Vec<ExperienceBuffer>,
    optimizers: Vec<OptimizerState>,
}

impl DistillState {
    pub fn new(codeword: Vec<f64>, subpolicy: LinearPolicy, bounds: Vec<Interval>) -> Result<Self> {
        let dim = codeword.len();
        let partition = VoronoiPartition::from_codewords(dim, vec![codeword])?;
        Ok(Self::from_policy(DistilledPolicy::new(
            partition,
            vec![subpolicy],
            bounds,
        )?))
    }

    pub fn from_policy(policy: DistilledPolicy) -> Self {
        let buffers = vec![ExperienceBuffer::new(); policy.len()];
        let optimizers = policy
            .subpolicies()
            .iter()
            .map(OptimizerState::for_policy)
            .collect();
        DistillState {
            policy,
            buffers,
            optimizers,
        }
    }

    pub fn policy(&self) -> &DistilledPolicy {
        &self.policy
    }

    pub fn into_policy(self) -> DistilledPolicy {
        self.policy
    }

    pub fn partition(&self) -> &VoronoiPartition {
        self.policy.partition()
    }

    pub fn len(&self) -> usize {
        self.policy.len()
    }

    pub fn is_empty(&self) -> bool {
        self.policy.is_empty()
    }

    pub fn buffers(&self) -> &[ExperienceBuffer] {
        &self.buffers
    }

    pub fn buffers_mut(&mut self) -> &mut [ExperienceBuffer] {
        &mut self.buffers
    }

    pub fn buffer_sizes(&self) -> Vec<usize> {
        self.buffers.iter().map(ExperienceBuffer::len).collect()
    }

    /// Whether codewords, subpolicies, buffers and optimizers line up.
    pub fn is_aligned(&self) -> bool {
        let n = self.policy.partition().len();
        self.policy.subpolicies().len() == n
            && self.buffers.len() == n
            && self.optimizers.len() == n
    }

    /// Adds a codeword with a freshly initialized subpolicy.
    pub(crate) fn add_cell(&mut self, codeword: Vec<f64>, rng: &mut SeededRng) -> Result<usize> {
        let d = self.policy.partition().dim();
        let a = self.policy.action_bounds().len();
        let fresh = LinearPolicy::init_random(d, a, rng);
        let opt = OptimizerState::for_policy(&fresh);
        let k = self.policy.push_cell(codeword, fresh)?;
        self.buffers.push(ExperienceBuffer::new());
        self.optimizers.push(opt);
        debug_assert!(self.is_aligned());
        Ok(k)
    }

    pub(crate) fn remove_cell(&mut self, k: usize) -> Result<(Vec<f64>, LinearPolicy)> {
        let removed = self.policy.remove_cell(k)?;
        self.buffers.remove(k);
        self.optimizers.remove(k);
        debug_assert!(self.is_aligned());
        Ok(removed)
    }

    /// Routes the pairs of `trace` into the buffers of their cells.
    pub fn assign(&mut self, trace: &EpisodeTrace) -> Result<()> {
        assign_experiences(self.policy.partition(), trace, &mut self.buffers)
    }

    pub fn reset_buffers(&mut self, cells: &[usize]) {
        for &c in cells {
            self.buffers[c].clear();
        }
    }

    pub fn reset_all_buffers(&mut self) {
        self.buffers.iter_mut().for_each(ExperienceBuffer::clear);
    }

    /// One [`train_epoch`] per cell, in index order.
    pub fn train_all(&mut self, cfg: &TrainConfig, rng: &mut SeededRng) -> Vec<Option<f64>> {
        (0..self.len())
            .map(|i| {
                train_epoch(
                    self.policy.subpolicy_mut(i),
                    &mut self.optimizers[i],
                    &self.buffers[i],
                    cfg,
                    rng,
                )
            })
            .collect()
    }
}
