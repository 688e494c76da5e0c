//! File formats, reports and subcommands of the `deforma` tool.

pub mod commands;
pub mod format;
pub mod report;
