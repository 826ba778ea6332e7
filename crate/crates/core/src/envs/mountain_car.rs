//! Continuous mountain car, with the dynamics of the Gymnasium
//! `MountainCarContinuous-v0` reference environment evaluated in `f64`.

use rand::Rng;

use super::{check_action, EnvSpec, Environment, Interval, StepResult};
use crate::error::Result;
use crate::rng::SeededRng;

pub const NAME: &str = "mountaincarcontinuous-v0";

pub const MIN_POSITION: f64 = -1.2;
pub const MAX_POSITION: f64 = 0.6;
pub const MAX_SPEED: f64 = 0.07;
pub const GOAL_POSITION: f64 = 0.45;
pub const POWER: f64 = 0.0015;
pub const GRAVITY: f64 = 0.0025;
pub const T_MAX: usize = 1000;

/// One transition from `(position, velocity)` under `action`; the force is
/// the action clamped to `[-1, 1]`.
/// Returns `(next_state, reward, terminated)`.
pub fn transition(state: &[f64], action: f64) -> ([f64; 2], f64, bool) {
    let force = action.clamp(-1.0, 1.0);
    let mut position = state[0];
    let mut velocity = state[1];
    velocity += force * POWER - GRAVITY * (3.0 * position).cos();
    velocity = velocity.clamp(-MAX_SPEED, MAX_SPEED);
    position += velocity;
    position = position.clamp(MIN_POSITION, MAX_POSITION);
    if position == MIN_POSITION && velocity < 0.0 {
        velocity = 0.0;
    }
    let terminated = position >= GOAL_POSITION && velocity >= 0.0;
    let mut reward = if terminated { 100.0 } else { 0.0 };
    // The penalty uses the action as given, like the reference environment.
    reward -= action * action * 0.1;
    ([position, velocity], reward, terminated)
}

pub fn sample_start(rng: &mut SeededRng) -> Vec<f64> {
    vec![rng.gen_range(-0.6..-0.4), 0.0]
}

#[derive(Debug, Clone)]
pub struct MountainCarContinuous {
    spec: EnvSpec,
    state: [f64; 2],
    t: usize,
}

impl Default for MountainCarContinuous {
    fn default() -> Self {
        Self::new()
    }
}

impl MountainCarContinuous {
    pub fn new() -> Self {
        MountainCarContinuous {
            spec: EnvSpec {
                name: NAME.into(),
                state_bounds: vec![
                    Interval::new(MIN_POSITION, MAX_POSITION),
                    Interval::new(-MAX_SPEED, MAX_SPEED),
                ],
                action_bounds: vec![Interval::new(-1.0, 1.0)],
                t_max: T_MAX,
                state_names: vec!["x".into(), "v".into()],
                action_names: vec!["F".into()],
            },
            state: [-0.5, 0.0],
            t: 0,
        }
    }

    pub fn set_state(&mut self, state: &[f64]) {
        self.state = [state[0], state[1]];
        self.t = 0;
    }
}

impl Environment for MountainCarContinuous {
    fn spec(&self) -> &EnvSpec {
        &self.spec
    }

    fn reset(&mut self, rng: &mut SeededRng) -> Vec<f64> {
        let s = sample_start(rng);
        self.set_state(&s);
        s
    }

    fn step(&mut self, action: &[f64]) -> Result<StepResult> {
        check_action(&self.spec, action)?;
        let (next, reward, terminated) = transition(&self.state, action[0]);
        self.state = next;
        self.t += 1;
        Ok(StepResult {
            next_state: next.to_vec(),
            reward,
            terminated,
            truncated: !terminated && self.t >= T_MAX,
        })
    }
}
