//! Calculus of norm-based extrafunctions.
//!
//! Function sequences are identified when their differences vanish in the
//! limit under every seminorm of a family (realised here as finite probe
//! lists). The quotient, the hyperspace, carries vector operations and
//! neighbourhood topologies; choosing a representative for each class (a
//! section of the projection) gives the sectional derivative.

pub mod bundle;
pub mod cli;
pub mod error;
pub mod expr;
pub mod hyperspace;
pub mod seminorm;
pub mod topology;

pub use error::{Error, Result};
