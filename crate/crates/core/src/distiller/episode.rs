use crate::envs::Environment;
use crate::error::{Error, Result};
use crate::linear_policy::ExperienceBuffer;
use crate::partition::VoronoiPartition;
use crate::policy::Policy;
use crate::rng::SeededRng;

/// States visited by the teacher in one episode and the actions it chose,
/// in time order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EpisodeTrace {
    pub states: Vec<Vec<f64>>,
    pub actions: Vec<Vec<f64>>,
    pub terminated: bool,
    pub truncated: bool,
}

impl EpisodeTrace {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn clear(&mut self) {
        self.states.clear();
        self.actions.clear();
        self.terminated = false;
        self.truncated = false;
    }
}

/// Rolls `teacher` from a fresh reset until termination or truncation.
pub fn collect_episode(
    env: &mut dyn Environment,
    teacher: &dyn Policy,
    rng: &mut SeededRng,
) -> Result<EpisodeTrace> {
    let spec = env.spec().clone();
    if teacher.state_dim() != spec.state_dim() || teacher.action_dim() != spec.action_dim() {
        return Err(Error::ShapeMismatch(format!(
            "teacher maps {} -> {}, environment {} expects {} -> {}",
            teacher.state_dim(),
            teacher.action_dim(),
            spec.name,
            spec.state_dim(),
            spec.action_dim()
        )));
    }
    let mut trace = EpisodeTrace::default();
    let mut state = env.reset(rng);
    for _ in 0..spec.t_max {
        let action = teacher.act(&state)?;
        if action.len() != spec.action_dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.action_dim(),
                actual: action.len(),
            });
        }
        let step = env.step(&action)?;
        trace.states.push(state);
        trace.actions.push(action);
        state = step.next_state;
        if step.terminated {
            trace.terminated = true;
            break;
        }
        if step.truncated {
            trace.truncated = true;
            break;
        }
    }
    if !trace.terminated {
        trace.truncated = true;
    }
    Ok(trace)
}

/// Appends every `(state, action)` of `trace` to the buffer of its cell.
pub fn assign_experiences(
    partition: &VoronoiPartition,
    trace: &EpisodeTrace,
    buffers: &mut [ExperienceBuffer],
) -> Result<()> {
    for (s, a) in trace.states.iter().zip(&trace.actions) {
        let i = partition.nearest(s)?;
        buffers[i].push(s.clone(), a.clone());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envs::{EnvSpec, Interval, MountainCarContinuous, StepResult};
    use crate::rng;
    use crate::teachers::MountainCarEnergy;

    struct InstantEnd {
        spec: EnvSpec,
    }

    impl InstantEnd {
        fn new() -> Self {
            InstantEnd {
                spec: EnvSpec {
                    name: "instant".into(),
                    state_bounds: vec![Interval::new(0.0, 1.0); 2],
                    action_bounds: vec![Interval::new(-1.0, 1.0)],
                    t_max: 10,
                    state_names: vec!["a".into(), "b".into()],
                    action_names: vec!["u".into()],
                },
            }
        }
    }

    impl Environment for InstantEnd {
        fn spec(&self) -> &EnvSpec {
            &self.spec
        }

        fn reset(&mut self, _rng: &mut SeededRng) -> Vec<f64> {
            vec![0.2, 0.3]
        }

        fn step(&mut self, _action: &[f64]) -> Result<StepResult> {
            Ok(StepResult {
                next_state: vec![0.2, 0.3],
                reward: 0.0,
                terminated: true,
                truncated: false,
            })
        }
    }

    #[test]
    fn immediate_termination_gives_one_step() {
        let trace = collect_episode(&mut InstantEnd::new(), &MountainCarEnergy, &mut rng::seeded(0)).unwrap();
        assert_eq!(trace.len(), 1);
        assert!(trace.terminated);
    }

    #[test]
    fn mountain_car_trace_is_bounded_and_seeded() {
        let mut env = MountainCarContinuous::new();
        let a = collect_episode(&mut env, &MountainCarEnergy, &mut rng::seeded(4)).unwrap();
        let b = collect_episode(&mut env, &MountainCarEnergy, &mut rng::seeded(4)).unwrap();
        assert!(a.len() <= 1000 && !a.is_empty());
        assert_eq!(a, b);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let teacher = crate::teachers::SimpleGoalPotentialField::default();
        let err = collect_episode(&mut MountainCarContinuous::new(), &teacher, &mut rng::seeded(0));
        assert!(matches!(err, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn assignment_routes_by_nearest_codeword() {
        let part =
            VoronoiPartition::from_codewords(2, vec![vec![0.25, 0.5], vec![0.75, 0.5]]).unwrap();
        let trace = EpisodeTrace {
            states: vec![vec![0.1, 0.5], vec![0.9, 0.5]],
            actions: vec![vec![1.0], vec![2.0]],
            terminated: true,
            truncated: false,
        };
        let mut buffers = vec![ExperienceBuffer::new(), ExperienceBuffer::new()];
        assign_experiences(&part, &trace, &mut buffers).unwrap();
        assert_eq!(buffers[0].actions(), &[vec![1.0]]);
        assert_eq!(buffers[1].actions(), &[vec![2.0]]);
    }

    #[test]
    fn single_cell_takes_everything() {
        let part = VoronoiPartition::from_codewords(2, vec![vec![0.0, 0.0]]).unwrap();
        let trace = collect_episode(
            &mut MountainCarContinuous::new(),
            &MountainCarEnergy,
            &mut rng::seeded(1),
        )
        .unwrap();
        let mut buffers = vec![ExperienceBuffer::new()];
        assign_experiences(&part, &trace, &mut buffers).unwrap();
        assert_eq!(buffers[0].len(), trace.len());
    }
}
