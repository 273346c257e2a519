//! Command-line front end.
//!
//! Exit status is 0 on success, 2 for anything wrong with the invocation
//! (flags, sweep syntax, config file) and 1 when the physics rejects the
//! input.

pub mod args;
pub mod config;
pub mod csv;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::experiments::{self, FixedParams, OutputQuantity, SweepPlan, SweepRow};
pub use args::Args;
pub use config::{load_config, ConfigError, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config(ConfigError),
    Run(crate::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Run(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Config(e) => write!(f, "config error: {e}"),
            CliError::Run(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

/// File config overlaid with explicit flags.
pub fn resolve_config(args: &Args) -> Result<RunConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => load_config(path).map_err(CliError::Config)?,
        None => RunConfig::default(),
    };
    if let Some(v) = args.s {
        cfg.s = v;
    }
    if let Some(km) = args.height_km {
        cfg.h_m = km * 1e3;
    }
    if let Some(v) = args.omega2 {
        cfg.omega2 = v;
    }
    if let Some(v) = args.sigma {
        cfg.sigma = v;
    }
    if let Some(v) = args.delta_mode {
        cfg.delta_mode = v;
    }
    if let Some(v) = args.nbar {
        cfg.nbar_convention = v;
    }
    if let Some(v) = args.theta1 {
        cfg.theta1_policy = v;
    }
    if let Some(v) = &args.out {
        cfg.out = Some(v.clone());
    }
    if let Some(v) = args.digits {
        cfg.digits = v;
    }
    cfg.validate().map_err(|e| match e {
        ConfigError::Invalid(m) => CliError::Usage(m),
        other => CliError::Config(other),
    })?;
    Ok(cfg)
}

/// Rows requested by `args`, without writing them anywhere.
pub fn compute_rows(args: &Args, cfg: &RunConfig) -> Result<Vec<SweepRow>, CliError> {
    let body = cfg.body();
    let opts = cfg.pipeline_options();
    let output = if args.mu {
        OutputQuantity::Mu
    } else {
        OutputQuantity::Coherence
    };

    let plan = if let Some(preset) = args.preset {
        let mut plan = experiments::preset_figure(preset.number()).map_err(CliError::Run)?;
        plan.body = body;
        plan.opts = opts;
        if args.mu {
            plan.output = OutputQuantity::Mu;
        }
        plan
    } else if let Some(sweep) = args.sweep {
        if sweep.axis == experiments::Axis::Squeezing
            && !(sweep.range.start >= 0.0 && sweep.range.stop <= config::MAX_SQUEEZING)
        {
            return Err(CliError::Usage(format!(
                "squeezing sweep must stay within [0, {}]",
                config::MAX_SQUEEZING
            )));
        }
        if sweep.axis == experiments::Axis::Height && sweep.range.start < 0.0 {
            return Err(CliError::Usage(
                "height sweep must start at or above 0 km".into(),
            ));
        }
        SweepPlan {
            axis: sweep.axis,
            range: sweep.range,
            fixed: FixedParams {
                s: cfg.s,
                h_m: cfg.h_m,
                omega2_list: vec![cfg.omega2],
                sigma_list: vec![cfg.sigma],
            },
            opts,
            output,
            body,
        }
    } else {
        let row = experiments::evaluate_point(
            &body, &opts, output, cfg.h_m, cfg.s, cfg.omega2, cfg.sigma,
        )
        .map_err(CliError::Run)?;
        return Ok(vec![row]);
    };
    experiments::run_sweep(&plan).map_err(CliError::Run)
}

pub fn run(args: &Args) -> Result<(), CliError> {
    let cfg = resolve_config(args)?;
    let rows = compute_rows(args, &cfg)?;
    let mut buf = Vec::new();
    csv::write_rows(&mut buf, &rows, cfg.digits).map_err(|e| CliError::Io(e.into()))?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &buf).map_err(CliError::Io),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&buf)
                .and_then(|_| stdout.flush())
                .map_err(CliError::Io)
        }
    }
}

pub fn main_from<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            // prints help/version to stdout, errors to stderr
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gravcoh: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
