use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::envs::EnvSpec;
use crate::error::{Error, Result};
use crate::policy::Policy;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub state: Vec<f64>,
    pub values: Vec<f64>,
    pub cell: Option<usize>,
}

/// Policy outputs sampled on a uniform grid of cell centres over the state
/// bounds. Rows run along the first axis fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub resolution: [usize; 2],
    pub state_names: Vec<String>,
    pub value_names: Vec<String>,
    pub rows: Vec<GridRow>,
}

/// Action vector per grid state.
pub type QuiverGrid = Grid;
/// Scalar action per grid state.
pub type HeatmapGrid = Grid;

pub(crate) fn require_2d(spec: &EnvSpec) -> Result<()> {
    if spec.state_dim() != 2 {
        return Err(Error::Unsupported("visualization requires 2-D state".into()));
    }
    Ok(())
}

/// Grid coordinates along one axis: centres of `n` equal slices.
pub(crate) fn axis(low: f64, high: f64, n: usize) -> Vec<f64> {
    let w = (high - low) / n as f64;
    (0..n).map(|k| low + (k as f64 + 0.5) * w).collect()
}

fn sample(
    policy: &dyn Policy,
    spec: &EnvSpec,
    resolution: [usize; 2],
    value_names: Vec<String>,
    pick: impl Fn(Vec<f64>) -> Vec<f64>,
) -> Result<Grid> {
    require_2d(spec)?;
    if resolution.contains(&0) {
        return Err(Error::Config("grid resolution must be positive".into()));
    }
    let xs = axis(spec.state_bounds[0].low, spec.state_bounds[0].high, resolution[0]);
    let ys = axis(spec.state_bounds[1].low, spec.state_bounds[1].high, resolution[1]);
    let mut rows = Vec::with_capacity(xs.len() * ys.len());
    for &y in &ys {
        for &x in &xs {
            let state = vec![x, y];
            let values = pick(policy.act(&state)?);
            rows.push(GridRow {
                cell: policy.cell_of(&state),
                state,
                values,
            });
        }
    }
    Ok(Grid {
        resolution,
        state_names: spec.state_names.clone(),
        value_names,
        rows,
    })
}

fn action_names(spec: &EnvSpec) -> Vec<String> {
    if spec.action_names.len() == spec.action_dim() {
        spec.action_names.clone()
    } else {
        (0..spec.action_dim()).map(|k| format!("a{k}")).collect()
    }
}

pub fn quiver_data(policy: &dyn Policy, spec: &EnvSpec, resolution: [usize; 2]) -> Result<QuiverGrid> {
    sample(policy, spec, resolution, action_names(spec), |a| a)
}

/// Like [`quiver_data`] for policies with a single action dimension.
pub fn heatmap_data(policy: &dyn Policy, spec: &EnvSpec, resolution: [usize; 2]) -> Result<HeatmapGrid> {
    if spec.action_dim() != 1 {
        return Err(Error::Unsupported(format!(
            "heatmap requires a scalar action, got {} dimensions",
            spec.action_dim()
        )));
    }
    sample(policy, spec, resolution, action_names(spec), |a| a)
}

impl Grid {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self
            .state_names
            .iter()
            .chain(&self.value_names)
            .map(String::as_str)
            .chain(["cell"])
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            for v in row.state.iter().chain(&row.values) {
                let _ = write!(out, "{v},");
            }
            if let Some(c) = row.cell {
                let _ = write!(out, "{c}");
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }
}
