//! IO, file formats and command-line front end for `qecgate-core`.
//!
//! * [`amplitudes`]: the `re+imj` amplitude list format.
//! * [`records`]: flat CSV records for plans and Monte Carlo runs.
//! * [`sweep`]: parameter sweeps over `θ₀` or `Δ`, optionally from a TOML file.
//! * [`cli`]: the `qecgate` subcommands.

pub mod amplitudes;
pub mod cli;
pub mod error;
pub mod records;
pub mod sweep;

pub use error::CliError;

/// Environment variable naming the default directory for sweep output.
pub const OUT_DIR_ENV: &str = "QECGATE_OUT_DIR";
