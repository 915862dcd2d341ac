//! Command-line front end for the `mconvex` library and its JSON format.

pub mod app;
pub mod caps;
pub mod error;
pub mod json;
pub mod registry;
pub mod selftest;

pub use app::{run, Outcome};
pub use error::CliError;
