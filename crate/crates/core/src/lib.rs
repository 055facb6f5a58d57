//! Tour-length estimation for the Euclidean travelling salesman problem.
//!
//! The crate reads TSPLIB instances, computes the instance statistics that
//! feed the estimators (minimum spanning tree, closest and farthest pair),
//! evaluates closed-form estimates and bounds of the optimal tour length,
//! and provides small exact and heuristic solvers to compare them against.

pub mod bench;
pub mod error;
pub mod estimators;
pub mod generators;
pub mod metric;
pub mod mst;
pub mod solvers;
pub mod tsplib;

pub use error::{BenchError, EstimateError, GeneratorError, MetricError, ParseError, SolverError};
pub use estimators::{Bounds, EstimateReport};
pub use metric::{Instance, InstanceStats, NormPolicy, Tour};
pub use mst::{prim_mst, MstResult};
pub use solvers::SolverLimit;
