//! Configuration, record stream and subcommands of the `lampwalk` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod measure_spec;
pub mod random;
pub mod record;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "LAMPWALK_THREADS";
