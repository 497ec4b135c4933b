//! Command-line front end: state documents in, report documents out.

pub mod args;
pub mod error;
pub mod run;
pub mod statefile;
pub mod verify;

pub use args::{Cli, Command, Format, Level};
pub use error::CliError;
pub use run::{execute, Outcome};
pub use statefile::{emit_state, parse_state, State};
