//! Catalog verification and the `wdual` command-line front-end.

pub mod catalog;
pub mod cli;

pub use cli::{run, Outcome};
