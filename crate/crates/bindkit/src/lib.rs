//! Text formats, name tables and the command-line frontend for the
//! `bindkit-core` syntax toolkit.

pub mod cli;
pub mod names;
pub mod pi_text;
pub mod scan;
pub mod sig_text;
pub mod st_text;
pub mod term_text;

pub use cli::{run, run_args, Outcome};
pub use names::NameTable;
pub use scan::ParseError;
