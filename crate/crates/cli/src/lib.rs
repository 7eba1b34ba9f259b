//! Front end for the `acobs` binary: argument handling, config merging and
//! report rendering. [`run`] returns the process exit status.

pub mod args;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use acobs::obstructure::{sweep, SweepReport, OBSTRUCT_BUNDLE};
use clap::Parser;

use args::{Cli, Command, RunArgs};
use config::RunConfig;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] acobs::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

/// What a command produced: rendered output and whether every check held.
struct Outcome {
    text: String,
    passed: bool,
}

fn verify(args: &RunArgs) -> Result<(RunConfig, Outcome), CliError> {
    let cfg = RunConfig::resolve(args, &[], 4)?;
    let sc = cfg.build_scenario()?;
    let rep = sweep(&sc, &cfg.sweep)?;
    let text = output::summary("verify", &rep, cfg.format);
    Ok((
        cfg,
        Outcome {
            text,
            passed: rep.passed(),
        },
    ))
}

fn scan(args: &args::ScanArgs) -> Result<(RunConfig, Outcome), CliError> {
    let cfg = RunConfig::resolve(&args.run, &args.eps, 1)?;
    let reps: Vec<(Option<f64>, SweepReport)> = if cfg.eps.is_empty() {
        vec![(None, sweep(&cfg.build_scenario()?, &cfg.sweep)?)]
    } else {
        cfg.eps_scenarios()?
            .into_iter()
            .map(|(e, sc)| Ok((Some(e), sweep(&sc, &cfg.sweep)?)))
            .collect::<Result<_, CliError>>()?
    };
    let passed = reps.iter().all(|(_, r)| r.passed());
    Ok((
        cfg.clone(),
        Outcome {
            text: output::scan(&reps, cfg.format),
            passed,
        },
    ))
}

fn obstruct(args: &RunArgs) -> Result<(RunConfig, Outcome), CliError> {
    let mut cfg = RunConfig::resolve(args, &[], 4)?;
    if let Some(name) = cfg
        .sweep
        .identities
        .iter()
        .find(|n| !OBSTRUCT_BUNDLE.contains(&n.as_str()))
    {
        return Err(CliError::Usage(format!(
            "`{name}` is not part of the obstruct bundle ({})",
            OBSTRUCT_BUNDLE.join(", ")
        )));
    }
    if cfg.sweep.identities.is_empty() {
        cfg.sweep.identities = OBSTRUCT_BUNDLE.iter().map(|s| s.to_string()).collect();
    }
    let sc = cfg.build_scenario()?;
    if !sc.properties().orthogonal {
        return Err(CliError::Usage(format!(
            "{} carries a structure that is not orthogonal for its metric; the fundamental form and the structure equation are undefined",
            sc.name()
        )));
    }
    let rep = sweep(&sc, &cfg.sweep)?;
    let text = output::summary("obstruct", &rep, cfg.format);
    Ok((
        cfg,
        Outcome {
            text,
            passed: rep.passed(),
        },
    ))
}

fn emit(cfg: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parse `argv` (including the program name), run the command and return
/// the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Scan(a) => scan(a),
        Command::Obstruct(a) => obstruct(a),
    };
    let status = result.and_then(|(cfg, o)| {
        emit(&cfg, &o.text, stdout)?;
        Ok(o.passed)
    });
    match status {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}
