//! Instance files, reports and the `obstruct` command surface.

pub mod commands;
pub mod error;
pub mod format;
pub mod json;
pub mod report;
