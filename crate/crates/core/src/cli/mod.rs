//! Batch front end: `plan`, `validate`, `simulate`, `fuse`, `analyze`,
//! `formats`.
//!
//! Exit codes: 0 success, 1 plan validation violations, 2 input errors.

mod analyze;
mod config;
mod formats;
mod plan;
mod run;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

pub use config::{AverageSettings, FileConfig, LinkSettings, SegmenterSettings, ThresholdSettings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }

    pub fn violation(message: impl Into<String>) -> Self {
        CliError { code: EXIT_VIOLATION, message: message.into() }
    }
}

#[derive(Debug, Parser)]
#[command(name = "uavprop", version, about = "UAV radio-measurement campaign planning, fusion and analysis")]
pub struct Cli {
    /// Run seed; overrides the config file and the scene.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// TOML settings file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for output files.
    #[arg(long, global = true, env = "UAVPROP_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a mission plan and validate it.
    Plan(plan::PlanArgs),
    /// Validate an existing plan file.
    Validate(plan::ValidateArgs),
    /// Simulate a flight and its measurement files.
    Simulate(run::SimulateArgs),
    /// Segment telemetry and annotate measurements with dwell states.
    Fuse(run::FuseArgs),
    /// Produce plot-ready analysis tables from annotated data.
    Analyze {
        #[command(subcommand)]
        kind: analyze::AnalyzeCmd,
    },
    /// Print the file format reference.
    Formats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AntennaArg {
    Horn,
    Omni,
}

/// Everything a command needs besides its own arguments.
pub(crate) struct Ctx<'a> {
    pub seed: Option<u64>,
    pub out_dir: PathBuf,
    pub file: FileConfig,
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

impl Ctx<'_> {
    pub fn say(&mut self, line: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", line.as_ref());
    }

    pub fn warn(&mut self, line: impl AsRef<str>) {
        let _ = writeln!(self.err, "warning: {}", line.as_ref());
    }

    pub fn output_path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    pub fn write_output(&mut self, path: &Path, contents: &str) -> Result<(), CliError> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
        }
        std::fs::write(path, contents).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        self.say(format!("wrote {}", path.display()));
        Ok(())
    }
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Flag value, else config value, else an error naming both.
pub(crate) fn required(flag: &Option<PathBuf>, file: &Option<PathBuf>, name: &str) -> Result<PathBuf, CliError> {
    flag.clone()
        .or_else(|| file.clone())
        .ok_or_else(|| CliError::input(format!("missing --{name} (or `{}` in the config file)", name.replace('-', "_"))))
}

/// Parse `a,b,c` into three numbers.
pub(crate) fn triple(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s.split(',').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    <[f64; 3]>::try_from(v).map_err(|v| format!("expected three comma-separated numbers, got {}", v.len()))
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let out_dir = cli.out_dir.clone().or_else(|| file.out_dir.clone()).unwrap_or_else(|| PathBuf::from("."));
    let mut ctx = Ctx { seed: cli.seed.or(file.seed), out_dir, file, out, err };
    match cli.command {
        Command::Plan(a) => plan::cmd_plan(&mut ctx, &a),
        Command::Validate(a) => plan::cmd_validate(&mut ctx, &a),
        Command::Simulate(a) => run::cmd_simulate(&mut ctx, &a),
        Command::Fuse(a) => run::cmd_fuse(&mut ctx, &a),
        Command::Analyze { kind } => analyze::cmd_analyze(&mut ctx, &kind),
        Command::Formats => {
            ctx.say(formats::FORMATS.trim_end());
            Ok(EXIT_OK)
        }
    }
}

/// Run the command line `args` (program name first) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
