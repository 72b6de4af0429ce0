//! File formats, figure sweeps and the `eur` command line on top of `eur-core`.

pub mod cli;
pub mod error;
pub mod input;
pub mod render;
pub mod sweep;

pub use error::ToolError;
