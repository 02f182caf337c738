//! Command-line front end of the `polarfermi` binary.
//!
//! Every subcommand writes one table, either as CSV preceded by `# key: value`
//! metadata lines or as a JSON object `{"meta": {...}, "rows": [...]}`. The
//! metadata always carries the command, the crate version and a SHA-256 hash
//! of the options that determine the numbers.
//!
//! Exit codes: 0 on success, 2 for invalid options or configuration files,
//! 3 when a numerical routine fails.

mod args;
mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use clap::Parser;

pub use args::{Cli, Command, Format};
pub use config::GridSpec;
pub use output::{format_float, Cell, Table};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Variable consulted when `--jobs` is absent.
pub const JOBS_ENV: &str = "POLARFERMI_JOBS";

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Library(Error),
}

impl CliError {
    fn io(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }

    fn csv(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_CONFIG,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Io(m) => write!(f, "output error: {m}"),
            CliError::Library(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

/// Output tables of one run: the main table and optional side files.
pub struct Outputs {
    pub main: Table,
    pub extra: Vec<(std::path::PathBuf, Table)>,
}

fn resolve_jobs(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    let jobs = match flag {
        Some(n) => Some(n),
        None => match std::env::var(JOBS_ENV) {
            Ok(s) if !s.trim().is_empty() => Some(s.trim().parse::<usize>().map_err(|_| {
                CliError::Config(format!("{JOBS_ENV} = `{s}` is not a thread count"))
            })?),
            _ => None,
        },
    };
    if jobs == Some(0) {
        return Err(CliError::Config(
            "the thread count must be at least 1".into(),
        ));
    }
    Ok(jobs)
}

fn resolve_format(flag: Option<Format>, path: Option<&Path>) -> Format {
    flag.unwrap_or_else(|| match path.and_then(|p| p.extension()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
        _ => Format::Csv,
    })
}

fn write_table(table: &Table, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            table.write(format, &mut w)?;
            w.flush().map_err(CliError::io)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write(format, &mut lock)
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let common = cli.command.common();
    let jobs = resolve_jobs(common.jobs)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    let hash = output::config_hash(cli.command.name(), &cli.command.canonical_config());
    let outputs = pool.install(|| commands::run(&cli.command))?;

    let stamp = |table: Table| {
        let mut head = Table::new(table.columns.clone());
        head.meta("command", cli.command.name());
        head.meta("version", env!("CARGO_PKG_VERSION"));
        head.meta("config_hash", hash.as_str());
        head.meta.extend(table.meta);
        head.rows = table.rows;
        head
    };
    let main = stamp(outputs.main);
    write_table(
        &main,
        resolve_format(common.format, common.out.as_deref()),
        common.out.as_deref(),
    )?;
    for (path, table) in outputs.extra {
        let table = stamp(table);
        write_table(
            &table,
            resolve_format(common.format, Some(&path)),
            Some(&path),
        )?;
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match config::merge_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("polarfermi: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("polarfermi: {e}");
            e.exit_code()
        }
    }
}
