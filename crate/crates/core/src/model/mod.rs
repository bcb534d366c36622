//! Graphs, instances, shortest paths and the oligo library.

pub mod instance;
pub mod library;
pub mod paths;

pub use instance::{
    validate_instance, Edge, Graph, Instance, InstanceDescription, ValidationError,
    ValidationErrors, Vertex, MAX_VERTICES,
};
pub use library::{assembly_pools, build_library, Library};
pub use paths::{descending_pairs, Disconnected, PairDistance, ShortestPaths};
