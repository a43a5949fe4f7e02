//! Randomized SDP rounding for MAX k-CSP over an alphabet of size `d`, the
//! boolean variant, and Monte Carlo machinery for checking the per-clause
//! satisfaction guarantees of each rounding scheme.

pub mod booleancsp;
pub mod driver;
pub mod error;
pub mod exec;
pub mod gaussmath;
pub mod instance;
pub mod rng;
pub mod rounding;
pub mod sdp;
pub mod verify;

pub use driver::{DriverConfig, SolveReport};
pub use error::{Error, Result};
pub use exec::Execution;
pub use instance::{Assignment, Clause, Instance, Predicate};
pub use rounding::{Rounder, Scheme};
pub use sdp::{FeasibilityReport, SdpSolution, SolverConfig};
