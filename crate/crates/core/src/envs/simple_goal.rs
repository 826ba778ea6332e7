//! Continuous 2-D navigation towards a goal corner around a central pitfall.

use rand::Rng;

use super::{check_action, EnvSpec, Environment, Interval, StepResult};
use crate::error::Result;
use crate::rng::SeededRng;

pub const NAME: &str = "simplegoal-v0";

pub const GOAL_CENTER: [f64; 2] = [0.05, 0.05];
pub const PITFALL_CENTER: [f64; 2] = [0.5, 0.5];
pub const STEP_SCALE: f64 = 0.1;
pub const T_MAX: usize = 50;

pub fn in_goal(p: &[f64]) -> bool {
    p[0] < 0.1 && p[1] < 0.1
}

pub fn in_pitfall(p: &[f64]) -> bool {
    0.4 < p[0] && p[0] < 0.6 && 0.4 < p[1] && p[1] < 0.6
}

pub fn goal_distance(p: &[f64]) -> f64 {
    (p[0] - GOAL_CENTER[0]).hypot(p[1] - GOAL_CENTER[1])
}

/// Next position, reward and termination for one step, ignoring truncation.
pub fn transition(state: &[f64], action: &[f64]) -> (Vec<f64>, f64, bool) {
    let next: Vec<f64> = state
        .iter()
        .zip(action)
        .map(|(s, a)| (s + STEP_SCALE * a.clamp(-1.0, 1.0)).clamp(0.0, 1.0))
        .collect();
    let mut reward = 10.0 * (goal_distance(state) - goal_distance(&next));
    let mut terminated = false;
    if in_goal(&next) {
        reward += 10.0;
        terminated = true;
    } else if in_pitfall(&next) {
        reward -= 10.0;
        terminated = true;
    }
    (next, reward, terminated)
}

/// Uniform on the unit square, rejecting the goal and the pitfall.
pub fn sample_start(rng: &mut SeededRng) -> Vec<f64> {
    loop {
        let p = [rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0)];
        if !in_goal(&p) && !in_pitfall(&p) {
            return p.to_vec();
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimpleGoal {
    spec: EnvSpec,
    state: Vec<f64>,
    t: usize,
}

impl Default for SimpleGoal {
    fn default() -> Self {
        Self::new()
    }
}

impl SimpleGoal {
    pub fn new() -> Self {
        SimpleGoal {
            spec: EnvSpec {
                name: NAME.into(),
                state_bounds: vec![Interval::new(0.0, 1.0); 2],
                action_bounds: vec![Interval::new(-1.0, 1.0); 2],
                t_max: T_MAX,
                state_names: vec!["x".into(), "y".into()],
                action_names: vec!["dx".into(), "dy".into()],
            },
            state: vec![0.5, 0.9],
            t: 0,
        }
    }

    /// Places the agent at `state` with a fresh step counter.
    pub fn set_state(&mut self, state: &[f64]) {
        self.state = state.to_vec();
        self.t = 0;
    }
}

impl Environment for SimpleGoal {
    fn spec(&self) -> &EnvSpec {
        &self.spec
    }

    fn reset(&mut self, rng: &mut SeededRng) -> Vec<f64> {
        self.state = sample_start(rng);
        self.t = 0;
        self.state.clone()
    }

    fn step(&mut self, action: &[f64]) -> Result<StepResult> {
        check_action(&self.spec, action)?;
        let (next, reward, terminated) = transition(&self.state, action);
        self.t += 1;
        self.state = next.clone();
        Ok(StepResult {
            next_state: next,
            reward,
            terminated,
            truncated: !terminated && self.t >= T_MAX,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn resets_avoid_goal_and_pitfall() {
        let mut r = rng::seeded(7);
        let mut sum_x = 0.0;
        let n = 100_000;
        for _ in 0..n {
            let s = sample_start(&mut r);
            assert!(!in_goal(&s) && !in_pitfall(&s));
            assert!(s.iter().all(|v| (0.0..=1.0).contains(v)));
            sum_x += s[0];
        }
        // Rejection regions are symmetric about x = 0.5 except the goal
        // square, which shifts the mean by 0.01 * (0.5 - 0.05) / 0.95 ≈ 0.0047.
        assert!((sum_x / n as f64 - 0.5).abs() < 0.02);
    }

    #[test]
    fn reset_is_seeded() {
        let mut a = SimpleGoal::new();
        let mut b = SimpleGoal::new();
        assert_eq!(a.reset(&mut rng::seeded(3)), b.reset(&mut rng::seeded(3)));
    }

    #[test]
    fn diagonal_step_reward() {
        let (next, r, done) = transition(&[0.9, 0.9], &[-1.0, -1.0]);
        assert!((next[0] - 0.8).abs() < 1e-12 && (next[1] - 0.8).abs() < 1e-12);
        // 10 · (0.85·√2 − 0.75·√2)
        assert!((r - 10.0 * 0.1 * 2f64.sqrt()).abs() < 1e-9);
        assert!(!done);
    }

    #[test]
    fn pitfall_terminates_with_penalty() {
        let s = [0.5, 0.65];
        let (next, r, done) = transition(&s, &[0.0, -1.0]);
        assert!(in_pitfall(&next));
        assert!(done);
        let progress = 10.0 * (goal_distance(&s) - goal_distance(&next));
        assert!((r - (progress - 10.0)).abs() < 1e-12);
    }

    #[test]
    fn goal_terminates_with_bonus() {
        let s = [0.15, 0.12];
        let (next, r, done) = transition(&s, &[-1.0, -1.0]);
        assert!(in_goal(&next) && done);
        let progress = 10.0 * (goal_distance(&s) - goal_distance(&next));
        assert!((r - (progress + 10.0)).abs() < 1e-12);
    }

    #[test]
    fn zero_action_is_zero_reward() {
        let (next, r, done) = transition(&[0.3, 0.8], &[0.0, 0.0]);
        assert_eq!(next, vec![0.3, 0.8]);
        assert_eq!(r, 0.0);
        assert!(!done);
    }

    #[test]
    fn region_boundaries_are_exclusive() {
        assert!(!in_pitfall(&[0.4, 0.5]));
        assert!(!in_pitfall(&[0.5, 0.6]));
        assert!(!in_goal(&[0.1, 0.05]));
        assert!(in_goal(&[0.0999, 0.0]));
    }

    #[test]
    fn walls_clamp_and_actions_saturate() {
        let (next, _, _) = transition(&[0.95, 0.02], &[5.0, -3.0]);
        assert_eq!(next, vec![1.0, 0.0]);
    }

    #[test]
    fn truncates_at_fifty_steps() {
        let mut env = SimpleGoal::new();
        env.set_state(&[0.9, 0.9]);
        for t in 1..=T_MAX {
            let r = env.step(&[0.0, 0.0]).unwrap();
            assert_eq!(r.truncated, t == T_MAX);
            assert!(!r.terminated);
        }
        assert!(env.step(&[0.0]).is_err());
    }

    #[test]
    fn progress_rewards_telescope() {
        let mut env = SimpleGoal::new();
        let start = [0.85, 0.2];
        env.set_state(&start);
        let mut progress = 0.0;
        let last = loop {
            let r = env.step(&[-1.0, -0.3]).unwrap();
            progress += r.reward - if r.terminated { 10.0 } else { 0.0 };
            if r.done() {
                assert!(r.terminated && in_goal(&r.next_state));
                break r.next_state;
            }
        };
        let want = 10.0 * (goal_distance(&start) - goal_distance(&last));
        assert!((progress - want).abs() < 1e-9);
    }
}
