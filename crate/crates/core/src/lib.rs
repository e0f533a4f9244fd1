//! Exact GKM computations for classical flag varieties and regular semisimple
//! Hessenberg varieties.

pub mod actions;
pub mod calc;
pub mod classes;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod poly;
pub mod reps;
pub mod verify;
pub mod weyl;

pub use error::{GkmError, Result};
