//! Command-line front end. Every command is a pure function of its flags,
//! config file, seed and input files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bundle::{config_hash, inspect_table, PolicyBundle, Provenance};
use crate::config::{Overrides, RunConfig};
use crate::distiller::{events::write_log, run_distillation, FreezeMode};
use crate::envs::{EnvRegistry, EnvSpec};
use crate::error::{Error, Result};
use crate::eval_report::{evaluate, heatmap_data, quiver_data, render_svg, EvalReport};
use crate::policy::Policy;
use crate::teachers::TeacherRegistry;

/// Exit status for configuration and input errors.
pub const EXIT_INPUT: i32 = 2;
/// Exit status for aborted runs.
pub const EXIT_RUNTIME: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CodewordCap { .. } => EXIT_RUNTIME,
        Error::EmptyPartition
        | Error::CannotEmptyPartition
        | Error::CellOutOfRange { .. }
        | Error::DegenerateCodeword(_)
        | Error::EmptySample => EXIT_RUNTIME,
        _ => EXIT_INPUT,
    }
}

#[derive(Debug, Parser)]
#[command(name = "voronoi-distill", version, about = "Distill a control policy into Voronoi-partitioned linear subpolicies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// JSON config file; keys absent from it take the environment defaults.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Environment name, e.g. simplegoal-v0 or mountaincarcontinuous-v0.
    #[arg(long, value_name = "NAME")]
    pub env: Option<String>,
    /// oracle:<tag> or file:<path>.
    #[arg(long, value_name = "SOURCE")]
    pub teacher: Option<String>,
    #[arg(long, value_enum)]
    pub freeze_mode: Option<FreezeMode>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distill a teacher; writes bundle.json, events.jsonl and config.json.
    Distill {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a bundle or a teacher and write report.json.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Policy bundle to evaluate; the teacher is used when absent.
        #[arg(long, value_name = "PATH", conflicts_with = "returns")]
        bundle: Option<PathBuf>,
        /// Summarize a JSON array of returns instead of running episodes.
        #[arg(long, value_name = "PATH")]
        returns: Option<PathBuf>,
        #[arg(long, value_name = "N")]
        episodes: Option<usize>,
    },
    /// Print one row per cell: codeword and formula per action component.
    Inspect {
        #[command(flatten)]
        common: Common,
        bundle: PathBuf,
    },
    /// Write quiver/heatmap CSV grids and an SVG diagram of a 2-D bundle.
    Viz {
        #[command(flatten)]
        common: Common,
        bundle: PathBuf,
        /// Grid points per axis.
        #[arg(long, default_value_t = 20)]
        resolution: usize,
    },
}

/// Registries the commands resolve names against.
#[derive(Debug, Clone)]
pub struct Registries {
    pub envs: EnvRegistry,
    pub teachers: TeacherRegistry,
}

impl Default for Registries {
    fn default() -> Self {
        Registries {
            envs: EnvRegistry::builtin(),
            teachers: TeacherRegistry::builtin(),
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn resolve_config(common: &Common, episodes: Option<usize>, envs: &EnvRegistry) -> Result<RunConfig> {
    let text = common.config.as_deref().map(read_text).transpose()?;
    let overrides = Overrides {
        env: common.env.clone(),
        teacher: common.teacher.clone(),
        seed: common.seed,
        freeze_mode: common.freeze_mode,
        out: common.out.clone(),
        eval_episodes: episodes,
    };
    RunConfig::resolve(text.as_deref(), &overrides, envs)
}

fn load_bundle(path: &Path) -> Result<PolicyBundle> {
    let text = read_text(path)?;
    PolicyBundle::from_json_str(&text)
}

fn bundle_spec(bundle: &PolicyBundle, reg: &Registries) -> Option<EnvSpec> {
    let entry = reg.envs.get(&bundle.env).ok()?;
    let spec = entry.create().spec().clone();
    (spec.state_dim() == bundle.state_dim && spec.action_dim() == bundle.action_dim).then_some(spec)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

pub fn run(cli: &Cli, reg: &Registries, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Distill { common } => distill(common, reg, out),
        Command::Eval {
            common,
            bundle,
            returns,
            episodes,
        } => eval(common, bundle.as_deref(), returns.as_deref(), *episodes, reg, out),
        Command::Inspect { common, bundle } => inspect(common, bundle, reg, out),
        Command::Viz {
            common,
            bundle,
            resolution,
        } => viz(common, bundle, *resolution, reg, out),
    }
}

fn distill(common: &Common, reg: &Registries, out: &mut dyn Write) -> Result<()> {
    let cfg = resolve_config(common, None, &reg.envs)?;
    let entry = reg.envs.get(&cfg.env)?;
    let mut env = entry.create();
    let teacher = reg.teachers.resolve(&cfg.teacher, env.spec())?;
    let run = run_distillation(&cfg.distill, env.as_mut(), teacher.as_ref())?;

    let bundle = PolicyBundle::from_policy(
        &run.policy,
        &cfg.env,
        Provenance {
            seed: Some(cfg.distill.seed),
            config_hash: Some(config_hash(&cfg.distill)),
            teacher: Some(cfg.teacher.to_string()),
        },
    );
    let mut log = Vec::new();
    write_log(&mut log, &run.log)?;
    write_file(&cfg.out, "bundle.json", &bundle.to_json_string())?;
    write_file(&cfg.out, "events.jsonl", &String::from_utf8_lossy(&log))?;
    write_file(&cfg.out, "config.json", &cfg.to_json_string())?;
    writeln!(
        out,
        "distilled {} cells over {} epochs -> {}",
        run.policy.len(),
        cfg.distill.n_epochs,
        cfg.out.join("bundle.json").display()
    )?;
    Ok(())
}

fn parse_returns(text: &str) -> Result<Vec<f64>> {
    serde_json::from_str::<Vec<f64>>(text)
        .map_err(|e| Error::Config(format!("returns file must be a JSON array of numbers: {e}")))
}

fn eval(
    common: &Common,
    bundle: Option<&Path>,
    returns: Option<&Path>,
    episodes: Option<usize>,
    reg: &Registries,
    out: &mut dyn Write,
) -> Result<()> {
    let mut common = common.clone();
    let loaded = bundle.map(load_bundle).transpose()?;
    if let (Some(b), None) = (&loaded, &common.env) {
        common.env = Some(b.env.clone());
    }
    let cfg = resolve_config(&common, episodes, &reg.envs)?;
    let seed = cfg.distill.seed;

    let (label, samples) = if let Some(path) = returns {
        (path.display().to_string(), parse_returns(&read_text(path)?)?)
    } else {
        let entry = reg.envs.get(&cfg.env)?;
        let spec = entry.create().spec().clone();
        let (label, policy): (String, Box<dyn Policy>) = match (&loaded, bundle) {
            (Some(b), Some(path)) => (path.display().to_string(), Box::new(b.to_policy()?)),
            _ => (
                cfg.teacher.to_string(),
                reg.teachers.resolve(&cfg.teacher, &spec)?,
            ),
        };
        if policy.state_dim() != spec.state_dim() || policy.action_dim() != spec.action_dim() {
            return Err(Error::Config(format!(
                "policy maps {} -> {} but {} expects {} -> {}",
                policy.state_dim(),
                policy.action_dim(),
                cfg.env,
                spec.state_dim(),
                spec.action_dim()
            )));
        }
        let factory = entry.factory;
        (label, evaluate(policy.as_ref(), factory, cfg.eval_episodes, seed)?)
    };

    let report = EvalReport::new(&cfg.env, &label, seed, samples)?;
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    let path = write_file(&cfg.out, "report.json", &json)?;
    let s = &report.stats;
    writeln!(
        out,
        "{} episodes: mean {:.3} std {:.3} median {:.3} iqr {:.3} coverage {:.4} -> {}",
        s.count,
        s.mean,
        s.std,
        s.median,
        s.iqr,
        s.coverage,
        path.display()
    )?;
    Ok(())
}

fn inspect(common: &Common, path: &Path, reg: &Registries, out: &mut dyn Write) -> Result<()> {
    let bundle = load_bundle(path)?;
    let policy = bundle.to_policy()?;
    let (state_names, action_names) = bundle_spec(&bundle, reg)
        .map(|s| (s.state_names, s.action_names))
        .unwrap_or_default();
    let table = inspect_table(&policy, &state_names, &action_names);
    if let Some(dir) = &common.out {
        write_file(dir, "inspect.txt", &table)?;
    }
    out.write_all(table.as_bytes())?;
    Ok(())
}

fn viz(common: &Common, path: &Path, resolution: usize, reg: &Registries, out: &mut dyn Write) -> Result<()> {
    let bundle = load_bundle(path)?;
    if bundle.state_dim != 2 {
        return Err(Error::Unsupported("visualization requires 2-D state".into()));
    }
    let policy = bundle.to_policy()?;
    let spec = bundle_spec(&bundle, reg).ok_or_else(|| {
        Error::Config(format!("no registered 2-D environment named `{}`", bundle.env))
    })?;
    let dir = common.out.clone().unwrap_or_else(|| crate::config::DEFAULT_OUT.into());
    let res = [resolution, resolution];
    let quiver = quiver_data(&policy, &spec, res)?;
    write_file(&dir, "quiver.csv", &quiver.to_csv())?;
    if spec.action_dim() == 1 {
        write_file(&dir, "heatmap.csv", &heatmap_data(&policy, &spec, res)?.to_csv())?;
    }
    write_file(&dir, "partition.svg", &render_svg(&policy, &spec, res)?)?;
    writeln!(out, "wrote {} grid rows to {}", quiver.rows.len(), dir.display())?;
    Ok(())
}
