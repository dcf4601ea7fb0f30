//! Simulator for group randomized response: triangle and 4-cycle counting
//! under edge local differential privacy with compressed downloads.

pub mod baseline;
pub mod error;
pub mod estimators;
pub mod graph;
pub mod harness;
pub mod privacy;
pub mod protocol;
pub mod rng;

pub use error::{Error, Result};
pub use graph::Graph;
