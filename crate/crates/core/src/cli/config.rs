use std::ffi::OsString;
use std::path::Path;

use super::CliError;
use crate::numerics::{linspace, logspace};

/// A sampling grid `min:max:count[:log]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
}

impl GridSpec {
    pub fn parse(name: &str, text: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Config(format!("--{name} `{text}`: {why}"));
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(bad("expected min:max:count or min:max:count:log"));
        }
        let min: f64 = parts[0].parse().map_err(|_| bad("min is not a number"))?;
        let max: f64 = parts[1].parse().map_err(|_| bad("max is not a number"))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| bad("count is not an integer"))?;
        let log = match parts.get(3) {
            None | Some(&"lin") => false,
            Some(&"log") => true,
            Some(_) => return Err(bad("the fourth field must be `log` or `lin`")),
        };
        if !(min.is_finite() && max.is_finite()) || max <= min {
            return Err(bad("need finite min < max"));
        }
        if count < 2 {
            return Err(bad("count must be at least 2"));
        }
        if log && min <= 0.0 {
            return Err(bad("a log grid needs min > 0"));
        }
        Ok(GridSpec {
            min,
            max,
            count,
            log,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.log {
            logspace(self.min, self.max, self.count)
        } else {
            linspace(self.min, self.max, self.count)
        }
    }
}

/// Comma-separated finite numbers.
pub fn parse_list(name: &str, text: &str) -> Result<Vec<f64>, CliError> {
    let values = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Config(format!("--{name} `{text}`: not a list of numbers")))?;
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Config(format!(
            "--{name} `{text}`: values must be finite"
        )));
    }
    Ok(values)
}

/// Comma-separated words, each run through `parse`; duplicates are dropped.
pub fn parse_names<T: PartialEq>(
    name: &str,
    text: &str,
    parse: impl Fn(&str) -> Option<T>,
) -> Result<Vec<T>, CliError> {
    let mut out = Vec::new();
    for word in text.split(',').map(str::trim) {
        let item = parse(word)
            .ok_or_else(|| CliError::Config(format!("--{name}: unknown entry `{word}`")))?;
        if !out.contains(&item) {
            out.push(item);
        }
    }
    Ok(out)
}

pub fn check_tolerance(name: &str, value: f64) -> Result<(), CliError> {
    if value > 0.0 && value <= 1e-2 {
        Ok(())
    } else {
        Err(CliError::Config(format!(
            "--{name} = {value}: must lie in (0, 1e-2]"
        )))
    }
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn read_config_file(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    let mut entries = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "{}:{}: expected `key = value`",
                path.display(),
                no + 1
            ))
        })?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(CliError::Config(format!(
                "{}:{}: invalid key `{}`",
                path.display(),
                no + 1,
                key
            )));
        }
        entries.push((key, value.trim().to_string()));
    }
    Ok(entries)
}

/// Finds `--config` among the arguments after the subcommand.
fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter().skip(2);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

/// Splices config-file entries in front of the command-line flags so that
/// the later, explicit flags override them.
pub fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let entries = read_config_file(Path::new(&path))?;
    let mut merged: Vec<OsString> = args[..2].to_vec();
    merged.extend(
        entries
            .into_iter()
            .map(|(k, v)| OsString::from(format!("--{k}={v}"))),
    );
    merged.extend(args[2..].iter().cloned());
    Ok(merged)
}
