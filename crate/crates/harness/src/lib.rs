//! Instance format, bundled examples, random generators, the independent
//! support oracle, and the verification runner for the subdifferential
//! toolkit.

pub mod bundled;
pub mod gen;
pub mod instance;
pub mod oracle;
pub mod report;
pub mod runner;

pub use instance::{parse_instance, Instance};
pub use report::Report;
pub use runner::{run_verify, VerifyOptions};
