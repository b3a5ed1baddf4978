//! File formats for the `exstat` command-line tool.

pub mod modelfile;
pub mod report;

pub use modelfile::{parse_generators, parse_model, InputError, ModelFileError};
pub use report::{GeneratorEntry, Report};
