//! Command-line front end for `rmfgeom`: analysis reports (JSON), frame
//! tables (CSV) and surface meshes (OBJ).

pub mod cli;
pub mod error;
pub mod format;
pub mod frames;
pub mod obj;
pub mod points;
pub mod report;

pub use cli::{run_cli, ExampleSpec};
pub use error::CliError;
