//! File formats, reports and graph output for the `ealab` command line.

pub mod dot;
pub mod expr;
pub mod format;
pub mod report;
