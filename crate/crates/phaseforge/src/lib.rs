//! File formats and command-line front end for `phaseforge-core`.
//!
//! * [`docs`]: JSON realization and transform documents.
//! * [`grid`]: grid specifications shared by `eval` and `compare`.
//! * [`cli`]: the `phaseforge` subcommands, callable in process.

pub mod cli;
pub mod docs;
pub mod error;
pub mod format;
pub mod grid;
pub mod sampling;

pub use cli::{run, run_args, Cli};
pub use docs::{RealizationDocument, TransformDocument};
pub use error::CliError;
