//! High-precision evaluation of the modular, hypergeometric, and
//! elliptic-period quantities behind Chudnovsky-Ramanujan type series, with
//! numeric certification of the identity catalog and a fast binary-splitting
//! computation of pi.

pub mod cli;
pub mod error;
pub mod fastseries;
pub mod hypergeom;
pub mod identities;
pub mod kernel;
pub mod modular;
pub mod periods;
pub mod selftest;

pub use error::{Error, Result};
