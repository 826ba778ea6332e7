use crate::envs::Interval;
use crate::error::{Error, Result};
use crate::linear_policy::LinearPolicy;
use crate::partition::VoronoiPartition;
use crate::policy::Policy;

/// Codebook plus one linear subpolicy per cell. Subpolicy `i` serves the
/// cell of codeword `i`; outputs are clamped to the action bounds.
#[derive(Debug, Clone)]
pub struct DistilledPolicy {
    partition: VoronoiPartition,
    subpolicies: Vec<LinearPolicy>,
    action_bounds: Vec<Interval>,
}

impl DistilledPolicy {
    pub fn new(
        partition: VoronoiPartition,
        subpolicies: Vec<LinearPolicy>,
        action_bounds: Vec<Interval>,
    ) -> Result<Self> {
        if partition.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if partition.len() != subpolicies.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} codewords but {} subpolicies",
                partition.len(),
                subpolicies.len()
            )));
        }
        for (i, p) in subpolicies.iter().enumerate() {
            if p.state_dim() != partition.dim() || p.action_dim() != action_bounds.len() {
                return Err(Error::ShapeMismatch(format!(
                    "subpolicy {i} maps {} -> {}, expected {} -> {}",
                    p.state_dim(),
                    p.action_dim(),
                    partition.dim(),
                    action_bounds.len()
                )));
            }
        }
        Ok(DistilledPolicy {
            partition,
            subpolicies,
            action_bounds,
        })
    }

    pub fn partition(&self) -> &VoronoiPartition {
        &self.partition
    }

    pub fn subpolicies(&self) -> &[LinearPolicy] {
        &self.subpolicies
    }

    pub fn subpolicy(&self, i: usize) -> &LinearPolicy {
        &self.subpolicies[i]
    }

    pub(crate) fn subpolicy_mut(&mut self, i: usize) -> &mut LinearPolicy {
        &mut self.subpolicies[i]
    }

    pub fn action_bounds(&self) -> &[Interval] {
        &self.action_bounds
    }

    pub fn len(&self) -> usize {
        self.subpolicies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subpolicies.is_empty()
    }

    pub(crate) fn push_cell(&mut self, codeword: Vec<f64>, policy: LinearPolicy) -> Result<usize> {
        let k = self.partition.insert(codeword)?;
        self.subpolicies.push(policy);
        Ok(k)
    }

    pub(crate) fn remove_cell(&mut self, k: usize) -> Result<(Vec<f64>, LinearPolicy)> {
        let c = self.partition.remove(k)?;
        Ok((c, self.subpolicies.remove(k)))
    }

    /// Unclamped output of the subpolicy owning `state`.
    pub fn predict_raw(&self, state: &[f64]) -> Result<(usize, Vec<f64>)> {
        let i = self.partition.nearest(state)?;
        Ok((i, self.subpolicies[i].predict(state)?))
    }
}

impl Policy for DistilledPolicy {
    fn state_dim(&self) -> usize {
        self.partition.dim()
    }

    fn action_dim(&self) -> usize {
        self.action_bounds.len()
    }

    fn act(&self, state: &[f64]) -> Result<Vec<f64>> {
        let (_, mut a) = self.predict_raw(state)?;
        for (v, b) in a.iter_mut().zip(&self.action_bounds) {
            *v = b.clamp(*v);
        }
        Ok(a)
    }

    fn cell_of(&self, state: &[f64]) -> Option<usize> {
        self.partition.nearest(state).ok()
    }
}
