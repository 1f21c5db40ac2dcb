//! Parser, printer and command layer behind the `jac` binary.

pub mod commands;
pub mod elaborate;
pub mod error;
pub mod ideal_expr;
pub mod print;
pub mod syntax;

pub use commands::{run, Cli};
pub use error::CliError;
