//! Free EI categories of Cartan type, the algebras `H(C, D, Omega)`, and the
//! machinery that identifies `kC(C, D, Omega)` with `H(C', D', Omega')` over a
//! field of positive characteristic.

pub mod algebra;
pub mod arith;
pub mod cartan;
pub mod ei_category;
pub mod error;
pub mod ffield;
pub mod gls;
pub mod transform;
pub mod words;

pub use error::{EiCondition, Error, Result};
