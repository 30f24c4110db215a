//! Exact symbolic computations for hamiltonian structures on foliations.

pub mod calculus;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod expr;
pub mod foliation;
pub mod hamiltonian;

pub use error::{Error, Result};
