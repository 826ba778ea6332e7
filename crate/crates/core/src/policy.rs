use crate::error::Result;

/// Anything that maps a state to an action: teachers, distilled policies,
/// single linear subpolicies.
pub trait Policy: Send + Sync {
    fn state_dim(&self) -> usize;

    fn action_dim(&self) -> usize;

    fn act(&self, state: &[f64]) -> Result<Vec<f64>>;

    /// Index of the Voronoi cell serving `state`, for partitioned policies.
    fn cell_of(&self, _state: &[f64]) -> Option<usize> {
        None
    }
}

impl<P: Policy + ?Sized> Policy for Box<P> {
    fn state_dim(&self) -> usize {
        (**self).state_dim()
    }

    fn action_dim(&self) -> usize {
        (**self).action_dim()
    }

    fn act(&self, state: &[f64]) -> Result<Vec<f64>> {
        (**self).act(state)
    }

    fn cell_of(&self, state: &[f64]) -> Option<usize> {
        (**self).cell_of(state)
    }
}

impl<P: Policy + ?Sized> Policy for &P {
    fn state_dim(&self) -> usize {
        (**self).state_dim()
    }

    fn action_dim(&self) -> usize {
        (**self).action_dim()
    }

    fn act(&self, state: &[f64]) -> Result<Vec<f64>> {
        (**self).act(state)
    }

    fn cell_of(&self, state: &[f64]) -> Option<usize> {
        (**self).cell_of(state)
    }
}
