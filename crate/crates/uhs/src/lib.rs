//! File formats and the `uhs` command line on top of `uhs-core`.

pub mod cli;
pub mod format;
