//! Ising vectors in code and lattice vertex operator algebras.
//!
//! The crate enumerates Ising vectors combinatorially (binary codes) and
//! through exact Griess-algebra computations (root lattices), builds the
//! groups generated by their Miyamoto involutions, and checks the q-series
//! identities behind the commutant decompositions.

// Dense matrix code reads best with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod census;
pub mod error;
pub mod gf2code;
pub mod griess;
pub mod par;
pub mod qchar;
pub mod registry;
pub mod rootlat;
pub mod transpo;

pub use error::{Error, Result};
