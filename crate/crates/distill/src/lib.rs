//! Scenario definitions, telemetry output, and validation suites backing the
//! `distill` binary.

pub mod output;
pub mod scenario;
pub mod validate;
