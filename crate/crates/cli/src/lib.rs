//! Command-line front end: instance files in, deterministic JSON reports
//! and SVG cone diagrams out.

pub mod commands;
pub mod error;
pub mod instance;
pub mod report;
pub mod svg;

pub use commands::{cmd_cones, cmd_contact, cmd_example, cmd_invariants, cmd_oracle, cmd_sweep, cmd_verdict, ContactFile};
pub use error::{CliError, CliResult};
pub use instance::{Instance, InstanceFile};
pub use report::Report;
