//! Command-line front end over `gregory-core`: run configuration, report
//! formats, the persistent constant cache and the parallel identity runner.

pub mod cache;
pub mod commands;
pub mod config;
pub mod dump;
pub mod error;
pub mod output;
pub mod verify;

pub use gregory_core as core;
pub use error::{Error, Result};
