//! File formats, parallel drivers, check sweeps and the `shtuka` command line.

pub mod checks;
pub mod cli;
pub mod error;
pub mod format;
pub mod parallel;
pub mod output;
pub mod presets;

pub use error::{CliError, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
