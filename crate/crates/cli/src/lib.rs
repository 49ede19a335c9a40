//! Front end for `kkt-core`: algebra descriptors, JSON formats, verification
//! suites and the `kkt` subcommands.

pub mod commands;
pub mod descriptor;
pub mod json;
pub mod suites;
