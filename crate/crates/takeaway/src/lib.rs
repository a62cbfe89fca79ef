//! Instance files, reports, command-line tools and the game service for the
//! hypergraph Take-Away engine in `takeaway-core`.

pub mod cli;
pub mod instance;
pub mod report;
pub mod server;
pub mod session;

pub use instance::{parse_instance, serialize_instance, InstanceDocument, InstanceError};
