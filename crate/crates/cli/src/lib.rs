//! Command-line front end for the `qell` library: group-spec parsing,
//! JSON documents, the subcommands and the verification suites.

pub mod commands;
pub mod error;
pub mod json;
pub mod random;
pub mod session;
pub mod spec;
pub mod verify;

pub use error::CliError;
pub use spec::GroupSpec;
