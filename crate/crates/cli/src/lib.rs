//! Text formats, DOT export and the `cubefold` command line.

pub mod app;
pub mod dot;
pub mod format;

pub use app::run;
pub use format::{CliError, ParseError};
