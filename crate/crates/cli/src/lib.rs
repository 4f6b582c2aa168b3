//! Command-line front end for `tjspec`.
//!
//! Exit codes: 0 on success, 1 on bad input, 2 when an internal consistency
//! check fails.

pub mod args;
pub mod commands;
pub mod sweep;
pub mod verify;

use std::io::Write;

use clap::Parser;
use thiserror::Error;

use tjspec::conjecture::ConjectureError;
use tjspec::families::{
    brieskorn_instance, puiseux_instance, swh_instance, three_monomial_instance, FamilyError,
    PuiseuxParams, SwhParams, ThreeMonomialParams, TjurinaInstance,
};
use tjspec::localg::{LocalgError, ParseError};

use args::{Cli, Command, FamilyKind, ParamArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::SelfCheckFailed(_)
            | FamilyError::Condition81Violated { .. }
            | FamilyError::InvalidInstance(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ConjectureError> for CliError {
    fn from(e: ConjectureError) -> Self {
        match e {
            ConjectureError::Internal(_) => CliError::Internal(e.to_string()),
            ConjectureError::Family(f) => f.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<LocalgError> for CliError {
    fn from(e: LocalgError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(format!("cannot parse polynomial: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn to_u32(name: &str, v: i64) -> Result<u32> {
    u32::try_from(v)
        .map_err(|_| CliError::Input(format!("--{name} must be a non-negative integer, got {v}")))
}

/// Builds one family member from parameter values in
/// [`FamilyKind::param_names`] order.
///
/// Puiseux members carry the consecutive Tjurina set `[1, τ]`, with `τ` from
/// the standard-basis engine.
pub fn build_instance(kind: FamilyKind, values: &[i64]) -> Result<TjurinaInstance> {
    let names = kind.param_names();
    let u = |i: usize| to_u32(names[i], values[i]);
    Ok(match kind {
        FamilyKind::Brieskorn => brieskorn_instance(u(0)?, u(1)?)?,
        FamilyKind::Swh => swh_instance(SwhParams::new(u(0)?, u(1)?, u(2)?, u(3)?)?)?,
        FamilyKind::ThreeMonomial => {
            three_monomial_instance(ThreeMonomialParams::new(u(0)?, u(1)?, u(2)?, u(3)?)?)?
        }
        FamilyKind::Puiseux => puiseux_instance(
            PuiseuxParams::new(u(0)?, u(1)?, u(2)?, values[3], u(4)?)?,
            true,
        )?,
    })
}

/// The single value of each family parameter, or an input error naming the
/// first missing or multi-valued flag.
pub fn single_params(kind: FamilyKind, params: &ParamArgs) -> Result<Vec<i64>> {
    kind.param_names()
        .iter()
        .map(|name| {
            let range = params
                .get(name)
                .ok_or_else(|| CliError::Input(format!("--{name} is required for this family")))?;
            range.single().ok_or_else(|| {
                CliError::Input(format!("--{name} must be a single value here, got {range}"))
            })
        })
        .collect()
}

/// Parses `argv`, runs the command and returns the process exit code. Normal
/// output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Spectrum(a) => commands::spectrum(&a, out),
        Command::Check(a) => commands::check(&a, out),
        Command::Enumerate(a) => commands::enumerate(&a, out),
        Command::Sweep(a) => sweep::cmd_sweep(&a, out),
        Command::Milnor(a) => commands::milnor(&a, out, false),
        Command::Tjurina(a) => commands::milnor(&a, out, true),
        Command::Verify(a) => verify::cmd_verify(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
