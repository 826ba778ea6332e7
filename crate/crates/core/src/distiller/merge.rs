//! Similarity-triggered merging of neighbouring cells.

use crate::error::Result;
use crate::linear_policy::param_distance;

use super::events::MergeEvent;
use super::{DistillConfig, DistillState};

/// Visits cells in index order. Whenever a Delaunay neighbour `j` of cell
/// `i` has parameters within `min_param_distance` (L∞) of cell `i`, cell `j`
/// is removed, and the buffers of `i` and of its recomputed neighbours are
/// cleared. Neighbour sets are recomputed after every removal. Never removes
/// the last cell.
pub fn merge_regions(state: &mut DistillState, cfg: &DistillConfig) -> Result<Vec<MergeEvent>> {
    let mut events = Vec::new();
    let mut i = 0;
    while i < state.len() {
        'rescan: while state.len() > 1 {
            let neighbours = state.partition().neighbours(i)?.to_vec();
            for j in neighbours {
                let policy = state.policy();
                let distance = param_distance(policy.subpolicy(i), policy.subpolicy(j))?;
                if distance >= cfg.min_param_distance {
                    continue;
                }
                let kept_params: Vec<f64> = policy.subpolicy(i).params().collect();
                let removed_params: Vec<f64> = policy.subpolicy(j).params().collect();
                let (removed_codeword, _) = state.remove_cell(j)?;
                if j < i {
                    i -= 1;
                }
                let mut reset = state.partition().neighbours(i)?.to_vec();
                reset.push(i);
                reset.sort_unstable();
                state.reset_buffers(&reset);
                events.push(MergeEvent {
                    kept: i,
                    removed: j,
                    distance,
                    kept_params,
                    removed_params,
                    removed_codeword,
                    reset,
                    cells_after: state.partition().len(),
                    subpolicies_after: state.policy().subpolicies().len(),
                });
                continue 'rescan;
            }
            break;
        }
        i += 1;
    }
    Ok(events)
}
