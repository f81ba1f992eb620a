//! Arbitrary-precision log-sine integrals, multiple polylogarithms, Clausen
//! and Glaisher functions, and higher/multiple Mahler measures, together with
//! a registry of closed-form evaluations checked against independent
//! numerical oracles.

pub mod error;
pub mod logsine;
pub mod mahler;
pub mod mpcore;
pub mod quadrature;
pub mod specfun;
pub mod symconst;
pub mod verify;

pub use error::{Error, Result};
