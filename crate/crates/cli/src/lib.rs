//! Command implementations and JSON payload types behind the `dscat` binary.

pub mod commands;
pub mod payload;
