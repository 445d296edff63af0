//! Library side of the `regnum` command-line tool.

pub mod commands;
pub mod config;
pub mod expected;
pub mod resolve;
