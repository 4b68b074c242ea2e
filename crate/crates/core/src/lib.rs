//! Graph burning: simulation, exact burning numbers, constructive schedules
//! for k⁺-branching trees and graph powers, and the closed-form bounds that
//! go with them.
//!
//! Vertices are `0..n`. Fallible operations return [`Result`].

pub mod bounds;
pub mod burn;
pub mod decomp;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod io;
pub mod power;
pub mod schedule;
pub mod tree;
pub mod verify;

pub use burn::{is_valid, simulate, BurnSchedule, BurnTrace};
pub use error::{Error, Result};
pub use exact::{exact_burning_number, exact_modified_burning_number, ExactResult};
pub use graph::{graph_power, Graph};
pub use power::{burn_graph_power, extract_branching_spanning_tree, verify_no_branching_spanning_tree, SpanningSearch};
pub use schedule::{burn_branching_modified, burn_branching_tree, leafstrip_schedule, InnerStrategy, ScheduleCertificate};
pub use tree::Tree;
