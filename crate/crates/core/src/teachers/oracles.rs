//! Scripted teachers that solve the built-in environments.

use serde::{Deserialize, Serialize};

use crate::envs::simple_goal::{GOAL_CENTER, PITFALL_CENTER};
use crate::error::{Error, Result};
use crate::policy::Policy;

fn check_state(state: &[f64], dim: usize) -> Result<()> {
    if state.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: state.len(),
        });
    }
    Ok(())
}

/// Linear attraction towards the goal centre plus a swirling repulsion from
/// the pitfall centre, clamped to `[-1, 1]²`.
///
/// Inside `cutoff` of the pitfall centre the repulsion has magnitude
/// `gain · (1/r − 1/cutoff)` along both the outward radial and the
/// counter-clockwise tangential direction; outside it the action is simply
/// `goal − state`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimpleGoalPotentialField {
    pub gain: f64,
    pub cutoff: f64,
}

impl Default for SimpleGoalPotentialField {
    fn default() -> Self {
        SimpleGoalPotentialField {
            gain: 0.15,
            cutoff: 0.35,
        }
    }
}

impl SimpleGoalPotentialField {
    pub const TAG: &'static str = "simplegoal_potential_field";
}

impl Policy for SimpleGoalPotentialField {
    fn state_dim(&self) -> usize {
        2
    }

    fn action_dim(&self) -> usize {
        2
    }

    fn act(&self, state: &[f64]) -> Result<Vec<f64>> {
        check_state(state, 2)?;
        let mut a = [GOAL_CENTER[0] - state[0], GOAL_CENTER[1] - state[1]];
        let (dx, dy) = (state[0] - PITFALL_CENTER[0], state[1] - PITFALL_CENTER[1]);
        let r = dx.hypot(dy);
        if r < self.cutoff && r > 0.0 {
            let strength = self.gain * (1.0 / r - 1.0 / self.cutoff);
            let (ox, oy) = (dx / r, dy / r);
            a[0] += strength * (ox - oy);
            a[1] += strength * (oy + ox);
        }
        Ok(a.iter().map(|v| v.clamp(-1.0, 1.0)).collect())
    }
}

/// Bang-bang energy pumping: push in the direction of motion, `+1` at rest.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MountainCarEnergy;

impl MountainCarEnergy {
    pub const TAG: &'static str = "mountaincar_energy";
}

impl Policy for MountainCarEnergy {
    fn state_dim(&self) -> usize {
        2
    }

    fn action_dim(&self) -> usize {
        1
    }

    fn act(&self, state: &[f64]) -> Result<Vec<f64>> {
        check_state(state, 2)?;
        Ok(vec![if state[1] >= 0.0 { 1.0 } else { -1.0 }])
    }
}
