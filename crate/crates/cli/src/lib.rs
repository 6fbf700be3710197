//! Library side of the `towerlab` command: spec files, grids and subcommands.

pub mod census;
pub mod commands;
pub mod specfile;

pub use census::{cmd_census, load_grid, parse_grid, CensusGrid};
pub use commands::{cmd_build, cmd_classify, cmd_count, cmd_genus, cmd_subext, CliError, Format};
pub use specfile::{load_spec, parse_spec, LoadedSpec, SpecFileError};
