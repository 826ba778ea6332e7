//! Per-epoch event log, written as line-delimited JSON.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitEvent {
    /// Position of the triggering state in the trace.
    pub step: usize,
    pub cell: usize,
    pub new_cell: usize,
    pub mean_loss: f64,
    /// L1 distance between the triggering state and the codeword of `cell`.
    pub distance: f64,
    pub state: Vec<f64>,
    pub codeword: Vec<f64>,
    /// Cells whose buffers were cleared.
    pub reset: Vec<usize>,
    pub cells_after: usize,
    pub subpolicies_after: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeEvent {
    /// Index of the surviving cell after the removal.
    pub kept: usize,
    /// Index of the removed cell before the removal.
    pub removed: usize,
    /// L∞ distance between the two parameter sets.
    pub distance: f64,
    pub kept_params: Vec<f64>,
    pub removed_params: Vec<f64>,
    pub removed_codeword: Vec<f64>,
    pub reset: Vec<usize>,
    pub cells_after: usize,
    pub subpolicies_after: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub editable: bool,
    pub trace_len: usize,
    /// Cell count at the end of the epoch.
    pub cells: usize,
    /// Buffer sizes at training time, per cell.
    pub buffer_sizes: Vec<usize>,
    /// Mean mini-batch loss per cell; `null` for empty buffers.
    pub train_losses: Vec<Option<f64>>,
    pub splits: Vec<SplitEvent>,
    pub merges: Vec<MergeEvent>,
    pub buffers_reset: bool,
}

pub fn write_log<W: Write>(mut out: W, records: &[EpochRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_log(text: &str) -> Result<Vec<EpochRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| Ok(serde_json::from_str(l)?))
        .collect()
}
