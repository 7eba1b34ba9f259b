//! Numerical engine for the graded algebra of bundle-valued differential
//! forms and the curvature obstructions to integrability of almost-complex
//! structures, evaluated on closed-form six-dimensional geometries.

pub mod acx;
pub mod algebra;
mod error;
pub mod geometry;
pub mod obstructure;
pub mod zoo;

pub use error::{Error, Result};
