//! Exact linearization of third-order ODEs that arise by differentiating
//! second-order equations cubic in the first derivative.
//!
//! The pipeline reads an equation, inverts the differentiation to recover
//! the second-order equation, tests the Lie criteria, and when they hold
//! builds a flat metric, flat coordinates and a two-parameter solution family.

pub mod cas;
pub mod criteria;
pub mod geometry;
pub mod parser;
pub mod reduction;
pub mod solver;
