//! Distillation of black-box continuous-control policies into a set of
//! locally-specialized linear subpolicies, one per Voronoi cell of the state
//! space.
//!
//! The pipeline collects teacher rollouts, routes every `(state, action)` pair
//! to the cell whose codeword is nearest under the Manhattan metric, fits a
//! linear model per cell, and periodically splits cells whose imitation loss
//! is too high and merges neighbouring cells whose parameters are too similar.
//!
//! Environments and teachers are pluggable strategies, looked up by name in
//! [`envs::EnvRegistry`] and [`teachers::TeacherRegistry`].

pub mod bundle;
pub mod cli;
pub mod config;
pub mod distiller;
pub mod envs;
pub mod error;
pub mod eval_report;
pub mod linear_policy;
pub mod partition;
pub mod policy;
pub mod rng;
pub mod teachers;

pub use error::{Error, Result};
pub use policy::Policy;
