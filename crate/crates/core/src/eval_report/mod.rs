//! Seeded policy evaluation, return statistics and visualization exports.

mod grid;
mod stats;
mod svg;

pub use grid::{heatmap_data, quiver_data, Grid, GridRow, HeatmapGrid, QuiverGrid};
pub use stats::{quantile_sorted, spread_stats, SpreadStats};
pub use svg::render_svg;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::envs::Environment;
use crate::error::{Error, Result};
use crate::policy::Policy;
use crate::rng;

/// Undiscounted return of one episode started from `rng`.
pub fn episode_return(
    policy: &dyn Policy,
    env: &mut dyn Environment,
    rng: &mut rng::SeededRng,
) -> Result<f64> {
    let mut state = env.reset(rng);
    let mut total = 0.0;
    for _ in 0..env.spec().t_max {
        let step = env.step(&policy.act(&state)?)?;
        total += step.reward;
        if step.done() {
            break;
        }
        state = step.next_state;
    }
    Ok(total)
}

/// Returns of `n_episodes` episodes; episode `i` resets from stream
/// `(seed, i)`, so the result does not depend on scheduling.
pub fn evaluate<F>(policy: &dyn Policy, make_env: F, n_episodes: usize, seed: u64) -> Result<Vec<f64>>
where
    F: Fn() -> Box<dyn Environment> + Sync,
{
    if n_episodes == 0 {
        return Err(Error::Config("episode count must be at least 1".into()));
    }
    (0..n_episodes)
        .into_par_iter()
        .map(|i| {
            let mut env = make_env();
            episode_return(policy, env.as_mut(), &mut rng::stream(seed, i as u64))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub env: String,
    pub policy: String,
    pub episodes: usize,
    pub seed: u64,
    pub stats: SpreadStats,
    pub returns: Vec<f64>,
}

impl EvalReport {
    pub fn new(env: &str, policy: &str, seed: u64, returns: Vec<f64>) -> Result<Self> {
        Ok(EvalReport {
            env: env.into(),
            policy: policy.into(),
            episodes: returns.len(),
            seed,
            stats: spread_stats(&returns)?,
            returns,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envs::{EnvSpec, Interval, MountainCarContinuous, StepResult};
    use crate::teachers::MountainCarEnergy;

    struct Flat {
        spec: EnvSpec,
        t: usize,
    }

    impl Environment for Flat {
        fn spec(&self) -> &EnvSpec {
            &self.spec
        }
        fn reset(&mut self, _: &mut rng::SeededRng) -> Vec<f64> {
            self.t = 0;
            vec![0.0, 0.0]
        }
        fn step(&mut self, _: &[f64]) -> Result<StepResult> {
            self.t += 1;
            Ok(StepResult {
                next_state: vec![0.0, 0.0],
                reward: 0.0,
                terminated: false,
                truncated: self.t >= self.spec.t_max,
            })
        }
    }

    fn flat() -> Box<dyn Environment> {
        Box::new(Flat {
            spec: EnvSpec {
                name: "flat".into(),
                state_bounds: vec![Interval::new(0.0, 1.0); 2],
                action_bounds: vec![Interval::new(-1.0, 1.0)],
                t_max: 7,
                state_names: vec!["p".into(), "q".into()],
                action_names: vec!["u".into()],
            },
            t: 0,
        })
    }

    #[test]
    fn zero_reward_env() {
        let r = evaluate(&MountainCarEnergy, flat, 20, 1).unwrap();
        assert_eq!(r, vec![0.0; 20]);
    }

    #[test]
    fn oracle_mountain_car_returns_are_positive_and_reproducible() {
        let make = || Box::new(MountainCarContinuous::new()) as Box<dyn Environment>;
        let a = evaluate(&MountainCarEnergy, make, 100, 9).unwrap();
        let b = evaluate(&MountainCarEnergy, make, 100, 9).unwrap();
        assert!(a.iter().all(|&r| r > 0.0));
        assert_eq!(a, b);
    }

    #[test]
    fn independent_of_thread_count() {
        let make = || Box::new(MountainCarContinuous::new()) as Box<dyn Environment>;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let serial = pool.install(|| evaluate(&MountainCarEnergy, make, 50, 3).unwrap());
        assert_eq!(serial, evaluate(&MountainCarEnergy, make, 50, 3).unwrap());
    }

    #[test]
    fn zero_episodes_rejected() {
        assert!(evaluate(&MountainCarEnergy, flat, 0, 0).is_err());
    }
}
