//! Exact homological algebra over Z and Z/n.
//!
//! The crate computes with finitely presented modules and bounded chain
//! complexes of them: Smith normal forms, homology, Hom and Ext groups,
//! extension groups of complexes, orthogonality classes, approximation
//! sequences, and filtrations — all with big-integer arithmetic and
//! deterministic, seedable randomness.

pub mod approx;
pub mod classes;
pub mod complex;
pub mod error;
pub mod ext_ch;
pub mod io;
pub mod linalg;
pub mod module;
pub mod oracles;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use ring::Ring;
