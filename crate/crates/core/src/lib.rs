//! Exact computer algebra for the quantum matrix ball.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod fock;
pub mod kernels;
pub mod linalg;
pub mod oracles;
pub mod scalars;

pub use error::{Error, Result};
