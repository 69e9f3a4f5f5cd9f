//! Configuration loading, parameter sweeps and dataset output for the
//! `optomech` command-line tool.

pub mod config;
pub mod error;
pub mod figures;
pub mod meta;
pub mod point;
pub mod sweep;
pub mod table;

pub use error::{CliError, Result};
pub use figures::{run_figure, FigureId};
pub use meta::{write_dataset, Metadata};
pub use point::{evaluate, PointReport};
pub use sweep::{run_sweep, Axis, AxisName, Output, SweepOptions, SweepSpec};
pub use table::{Cell, Table};

/// Load a config and evaluate its operating point.
pub fn run_point(params: Option<&std::path::Path>, overrides: &[String]) -> Result<PointReport> {
    let config = config::load(params, overrides)?;
    evaluate(&config)
}
