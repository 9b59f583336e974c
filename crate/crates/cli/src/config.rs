use std::path::{Path, PathBuf};

use dehnkit::diagrams::DEFAULT_CELL_BUDGET;
use dehnkit::oracles::SearchCaps;
use dehnkit::wordproblem::DEFAULT_BIT_CAP;
use serde::Deserialize;

use crate::args::{Format, GlobalArgs};
use crate::error::CliError;

/// Contents of the `--config` TOML file. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub caps: Option<CapsSection>,
    pub bit_cap: Option<u64>,
    pub cell_budget: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub parallel: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsSection {
    pub max_word_length: Option<usize>,
    pub max_cost: Option<usize>,
    pub max_states: Option<usize>,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub caps: SearchCaps,
    pub bit_cap: u64,
    pub cell_budget: u64,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub parallel: bool,
}

fn load(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))
}

impl RunConfig {
    /// Flags (clap has already folded in the environment) win over the
    /// config file, which wins over built-in defaults.
    pub fn resolve(args: &GlobalArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => load(path)?,
            None => ConfigFile::default(),
        };
        let caps_file = file.caps.unwrap_or_default();
        let defaults = SearchCaps::default();
        let caps = SearchCaps {
            max_word_length: args
                .caps_max_len
                .or(caps_file.max_word_length)
                .unwrap_or(defaults.max_word_length),
            max_cost: args
                .caps_max_cost
                .or(caps_file.max_cost)
                .unwrap_or(defaults.max_cost),
            max_states: args
                .caps_max_states
                .or(caps_file.max_states)
                .unwrap_or(defaults.max_states),
        };
        caps.validate()
            .map_err(|e| CliError::usage(e.to_string()))?;
        let bit_cap = args.bit_cap.or(file.bit_cap).unwrap_or(DEFAULT_BIT_CAP);
        if bit_cap == 0 {
            return Err(CliError::usage("bit cap must be positive"));
        }
        Ok(RunConfig {
            caps,
            bit_cap,
            cell_budget: args
                .cell_budget
                .or(file.cell_budget)
                .unwrap_or(DEFAULT_CELL_BUDGET),
            format: args.format.or(file.format),
            out: args.out.clone().or(file.out),
            parallel: args.parallel.or(file.parallel).unwrap_or(false),
        })
    }
}
