//! Orchestration behind the `ctuples` binary: scan configuration, the six
//! reference-table builders, and the verification suites.

pub mod config;
pub mod goldens;
pub mod tables;
pub mod verify;
