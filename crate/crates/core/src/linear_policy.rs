//! Per-cell linear subpolicies and their training.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::policy::Policy;
use crate::rng::SeededRng;

/// Half-width of the uniform distribution for fresh weights.
pub const INIT_WEIGHT_RANGE: f64 = 0.1;

/// `action = weights · state + bias`, with `weights` stored row-major as
/// `action_dim` rows of length `state_dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearPolicy {
    weights: Vec<Vec<f64>>,
    bias: Vec<f64>,
}

impl LinearPolicy {
    pub fn new(weights: Vec<Vec<f64>>, bias: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.len() != bias.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} weight rows but {} bias entries",
                weights.len(),
                bias.len()
            )));
        }
        let state_dim = weights[0].len();
        if state_dim == 0 || weights.iter().any(|r| r.len() != state_dim) {
            return Err(Error::ShapeMismatch("ragged weight matrix".into()));
        }
        if weights.iter().flatten().chain(&bias).any(|x| !x.is_finite()) {
            return Err(Error::ShapeMismatch("non-finite parameter".into()));
        }
        Ok(LinearPolicy { weights, bias })
    }

    pub fn zeros(state_dim: usize, action_dim: usize) -> Self {
        LinearPolicy {
            weights: vec![vec![0.0; state_dim]; action_dim],
            bias: vec![0.0; action_dim],
        }
    }

    /// Weights i.i.d. uniform on `[-0.1, 0.1]`, zero bias.
    pub fn init_random(state_dim: usize, action_dim: usize, rng: &mut SeededRng) -> Self {
        assert!(state_dim >= 1 && action_dim >= 1);
        let weights = (0..action_dim)
            .map(|_| {
                (0..state_dim)
                    .map(|_| rng.gen_range(-INIT_WEIGHT_RANGE..=INIT_WEIGHT_RANGE))
                    .collect()
            })
            .collect();
        LinearPolicy {
            weights,
            bias: vec![0.0; action_dim],
        }
    }

    pub fn state_dim(&self) -> usize {
        self.weights[0].len()
    }

    pub fn action_dim(&self) -> usize {
        self.bias.len()
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    fn n_params(&self) -> usize {
        self.action_dim() * (self.state_dim() + 1)
    }

    /// Weights row-major, then bias.
    pub fn params(&self) -> impl Iterator<Item = f64> + '_ {
        self.weights.iter().flatten().chain(&self.bias).copied()
    }

    fn param_mut(&mut self, k: usize) -> &mut f64 {
        let d = self.state_dim();
        let a = self.action_dim();
        if k < a * d {
            &mut self.weights[k / d][k % d]
        } else {
            &mut self.bias[k - a * d]
        }
    }

    pub fn predict(&self, state: &[f64]) -> Result<Vec<f64>> {
        if state.len() != self.state_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.state_dim(),
                actual: state.len(),
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(&self.bias)
            .map(|(row, b)| row.iter().zip(state).map(|(w, s)| w * s).sum::<f64>() + b)
            .collect())
    }

    fn predict_unchecked(&self, state: &[f64], out: &mut [f64]) {
        for ((o, row), b) in out.iter_mut().zip(&self.weights).zip(&self.bias) {
            *o = row.iter().zip(state).map(|(w, s)| w * s).sum::<f64>() + b;
        }
    }
}

impl Policy for LinearPolicy {
    fn state_dim(&self) -> usize {
        LinearPolicy::state_dim(self)
    }

    fn action_dim(&self) -> usize {
        LinearPolicy::action_dim(self)
    }

    fn act(&self, state: &[f64]) -> Result<Vec<f64>> {
        self.predict(state)
    }
}

/// Largest absolute difference between corresponding parameters.
pub fn param_distance(p: &LinearPolicy, q: &LinearPolicy) -> Result<f64> {
    if p.state_dim() != q.state_dim() || p.action_dim() != q.action_dim() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            p.action_dim(),
            p.state_dim(),
            q.action_dim(),
            q.state_dim()
        )));
    }
    Ok(p.params()
        .zip(q.params())
        .fold(0.0, |m, (a, b)| f64::max(m, (a - b).abs())))
}

/// Mean squared error averaged over action components.
pub fn mse(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / a.len() as f64
}

/// Teacher experience routed to one cell.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperienceBuffer {
    states: Vec<Vec<f64>>,
    actions: Vec<Vec<f64>>,
}

impl ExperienceBuffer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, state: Vec<f64>, action: Vec<f64>) {
        self.states.push(state);
        self.actions.push(action);
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn clear(&mut self) {
        self.states.clear();
        self.actions.clear();
    }

    pub fn states(&self) -> &[Vec<f64>] {
        &self.states
    }

    pub fn actions(&self) -> &[Vec<f64>] {
        &self.actions
    }

    /// Mean MSE of `policy` over the whole buffer.
    pub fn loss(&self, policy: &LinearPolicy) -> Option<f64> {
        if self.is_empty() {
            return None;
        }
        let mut out = vec![0.0; policy.action_dim()];
        let total: f64 = self
            .states
            .iter()
            .zip(&self.actions)
            .map(|(s, a)| {
                policy.predict_unchecked(s, &mut out);
                mse(&out, a)
            })
            .sum();
        Some(total / self.len() as f64)
    }
}

/// How many gradient steps one call to [`train_epoch`] takes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StepRule {
    /// Always `max_steps`, however small the buffer.
    #[default]
    Fixed,
    /// One pass over the buffer: `min(ceil(len / batch_size), max_steps)`.
    Pass,
}

impl StepRule {
    pub fn steps(self, len: usize, batch_size: usize, max_steps: usize) -> usize {
        match self {
            StepRule::Fixed => max_steps,
            StepRule::Pass => len.div_ceil(batch_size).min(max_steps),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainConfig {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    pub batch_size: usize,
    /// Gradient steps per call to [`train_epoch`] (an upper bound under
    /// [`StepRule::Pass`]).
    pub max_steps: usize,
    pub step_rule: StepRule,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            lr: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            batch_size: 64,
            max_steps: 32,
            step_rule: StepRule::Fixed,
        }
    }
}

/// Adam moment estimates, flattened in [`LinearPolicy::params`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerState {
    m: Vec<f64>,
    v: Vec<f64>,
    step: u64,
}

impl OptimizerState {
    pub fn for_policy(policy: &LinearPolicy) -> Self {
        let n = policy.n_params();
        OptimizerState {
            m: vec![0.0; n],
            v: vec![0.0; n],
            step: 0,
        }
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    fn apply(&mut self, policy: &mut LinearPolicy, grad: &[f64], cfg: &TrainConfig) {
        self.step += 1;
        let t = self.step as i32;
        let bc1 = 1.0 - cfg.beta1.powi(t);
        let bc2 = 1.0 - cfg.beta2.powi(t);
        for (k, &g) in grad.iter().enumerate() {
            self.m[k] = cfg.beta1 * self.m[k] + (1.0 - cfg.beta1) * g;
            self.v[k] = cfg.beta2 * self.v[k] + (1.0 - cfg.beta2) * g * g;
            let m_hat = self.m[k] / bc1;
            let v_hat = self.v[k] / bc2;
            *policy.param_mut(k) -= cfg.lr * m_hat / (v_hat.sqrt() + cfg.eps);
        }
    }
}

/// Runs the number of Adam steps given by `cfg.step_rule` on random
/// mini-batches of `buffer` and returns the mean pre-step batch loss, or
/// `None` if the buffer is empty. Buffers no larger than one batch are used
/// whole, in order.
pub fn train_epoch(
    policy: &mut LinearPolicy,
    opt: &mut OptimizerState,
    buffer: &ExperienceBuffer,
    cfg: &TrainConfig,
    rng: &mut SeededRng,
) -> Option<f64> {
    let n = buffer.len();
    if n == 0 {
        return None;
    }
    let batch = cfg.batch_size.max(1);
    let steps = cfg.step_rule.steps(n, batch, cfg.max_steps.max(1));
    let d = policy.state_dim();
    let a_dim = policy.action_dim();
    let mut grad = vec![0.0; policy.n_params()];
    let mut pred = vec![0.0; a_dim];
    let mut total = 0.0;

    for _ in 0..steps {
        let picks: Vec<usize> = if n <= batch {
            (0..n).collect()
        } else {
            index::sample(rng, n, batch).into_vec()
        };
        grad.iter_mut().for_each(|g| *g = 0.0);
        let scale = 2.0 / (picks.len() * a_dim) as f64;
        let mut loss = 0.0;
        for &i in &picks {
            let s = &buffer.states[i];
            let target = &buffer.actions[i];
            policy.predict_unchecked(s, &mut pred);
            for a in 0..a_dim {
                let err = pred[a] - target[a];
                loss += err * err;
                let g = scale * err;
                for j in 0..d {
                    grad[a * d + j] += g * s[j];
                }
                grad[a_dim * d + a] += g;
            }
        }
        total += loss / (picks.len() * a_dim) as f64;
        opt.apply(policy, &grad, cfg);
    }
    Some(total / steps as f64)
}
