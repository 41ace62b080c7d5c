//! File formats and command-line driver for `swapsafe-core`.

pub mod address;
pub mod app;
pub mod codebook;
pub mod data;
pub mod error;
pub mod margins;
pub mod report;
pub mod synth;

pub use app::{run, Cli, Command, Inputs, Outcome};
pub use codebook::{Codebook, VariableSpec};
pub use data::{load_microdata, Dataset};
pub use error::{AppError, Result};
