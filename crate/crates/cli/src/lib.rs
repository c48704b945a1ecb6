//! Command-line surface for `tiltstab`: a serializable [`RunConfig`] for
//! every engine operation, and renderers for human tables, JSON, CSV and SVG.

pub mod args;
pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod svg;

pub use config::{Command, OutputMode, PlotFamily, ReiderMode, RunConfig, Target};
pub use error::CliError;
pub use run::{execute, Rendered};
