//! Derived graph constructions and parameter calculators.

mod catalog;
mod overlay;
mod params;
mod random;

pub use catalog::{named_graph, CatalogError};
pub use overlay::{emit_partition, mv_partite_graph, OverlayError, PartitionAssignment};
pub use params::{
    alon_parameters, is_prime_power, mv_parameters, next_prime, AlonParameters, MVParameters,
    ParamError,
};
pub use random::{gnp, RandomGraphError};
