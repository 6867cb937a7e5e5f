//! Experiment orchestration for the quantum optimizer and the classical
//! reference: config ingestion, subcommands, and artifact emission.

pub mod artifacts;
pub mod commands;
pub mod config;
