use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use acobs::obstructure::SweepConfig;
use acobs::zoo::{Descriptor, Scenario};
use serde::Deserialize;

use crate::args::{Format, RunArgs};
use crate::CliError;

/// Values a config file may set. Every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub frames: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub identities: Vec<String>,
    #[serde(default)]
    pub tol: BTreeMap<String, f64>,
    #[serde(default)]
    pub params: BTreeMap<String, toml::Value>,
    #[serde(default)]
    pub eps: Vec<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

/// A fully resolved run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: String,
    pub params: Vec<(String, String)>,
    pub sweep: SweepConfig,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub eps: Vec<f64>,
}

fn split_kv(s: &str, what: &str) -> Result<(String, String), CliError> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(CliError::Usage(format!("{what} `{s}` is not of the form NAME=VALUE"))),
    }
}

fn value_string(v: &toml::Value) -> String {
    match v {
        toml::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl RunConfig {
    /// Merge flags over an optional config file over the given defaults.
    pub fn resolve(args: &RunArgs, eps: &[f64], default_frames: usize) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };

        let mut params: BTreeMap<String, String> =
            file.params.iter().map(|(k, v)| (k.clone(), value_string(v))).collect();
        for p in &args.params {
            let (k, v) = split_kv(p, "parameter")?;
            params.insert(k, v);
        }

        let mut tol = file.tol.clone();
        for t in &args.tol {
            let (k, v) = split_kv(t, "tolerance")?;
            let v: f64 = v
                .parse()
                .map_err(|_| CliError::Usage(format!("tolerance for `{k}` is not a number: {v}")))?;
            tol.insert(k, v);
        }

        let identities = if args.identities.is_empty() {
            file.identities.clone()
        } else {
            args.identities.clone()
        };
        let sweep = SweepConfig {
            samples: args.samples.or(file.samples).unwrap_or(20),
            frames: args.frames.or(file.frames).unwrap_or(default_frames),
            seed: args.seed.or(file.seed).unwrap_or(0),
            identities,
            tol,
        };
        if sweep.samples == 0 {
            return Err(CliError::Usage("--samples must be at least 1".into()));
        }
        // names are checked here, before any point is evaluated
        sweep.selection()?;

        Ok(RunConfig {
            scenario: args.scenario.clone(),
            params: params.into_iter().collect(),
            sweep,
            format: args.format.or(file.format).unwrap_or(Format::Text),
            out: args.out.clone().or(file.out),
            eps: if eps.is_empty() { file.eps } else { eps.to_vec() },
        })
    }

    pub fn build_scenario(&self) -> Result<Scenario, CliError> {
        Ok(Scenario::new(Descriptor::from_params(&self.scenario, &self.params)?)?)
    }

    /// One scenario per requested perturbation size.
    pub fn eps_scenarios(&self) -> Result<Vec<(f64, Scenario)>, CliError> {
        if self.scenario != "perturbed_sphere6" {
            return Err(CliError::Usage(format!(
                "--eps applies to perturbed_sphere6, not {}",
                self.scenario
            )));
        }
        self.eps
            .iter()
            .map(|&e| {
                let mut params: Vec<(String, String)> =
                    self.params.iter().filter(|(k, _)| k != "eps").cloned().collect();
                params.push(("eps".into(), e.to_string()));
                Ok((e, Scenario::new(Descriptor::from_params(&self.scenario, &params)?)?))
            })
            .collect()
    }
}
