//! Exact computations for abelian complex structures on nilpotent Lie algebras:
//! Dolbeault cohomology of the holomorphic tangent complex, harmonic
//! representatives, the Kuranishi recursion with its obstruction polynomials,
//! and classification of the resulting deformed structures.
//!
//! All arithmetic is over ℚ(i); nothing is approximated.

pub mod catalog;
pub mod cxs;
pub mod dolbeault;
mod error;
pub mod exalg;
pub mod kuranishi;
pub mod lie;
pub mod poly;

pub use error::{Error, Result};
pub use exalg::{GaussianRational, Matrix, Rational, Vector};
