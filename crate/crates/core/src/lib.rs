//! Computable abstract Cuntz semigroups.

pub mod approx;
pub mod axioms;
pub mod carrier;
pub mod cli;
pub mod dimension;
pub mod error;
pub mod selftest;
pub mod subcu;
pub mod verdict;

pub use carrier::{Carrier, Elem, ExtNat, FiniteCuTable};
pub use error::{Error, Result};
pub use verdict::{Budget, Verdict, Witness};
