//! Command-line front end for `treesign-core`: argument parsing, tree
//! files and JSON/CSV/text output.

pub mod cli;
pub mod numbers;
pub mod table;
pub mod treefile;

pub use cli::run;
