//! Artin-Wraith glueing on finite topological spaces.
//!
//! Finite spaces are specialization preorders held in 64-bit masks
//! ([`space`]). On top of them sit admissible maps and glued spaces
//! ([`glueing`]), the continuity criterion, pullbacks and pushforwards
//! ([`transport`]), limits of glueing diagrams ([`limits`]), end-space
//! approximations of locally finite graphs ([`ends`]) and finitely generated
//! coarse structures ([`coarse`]). [`harness`] runs seeded law suites
//! against brute-force oracles.

pub mod coarse;
pub mod ends;
pub mod error;
pub mod format;
pub mod glueing;
pub mod harness;
pub mod limits;
pub mod space;
pub mod subset;
pub mod transport;

#[doc(hidden)]
pub mod mutation;

pub use error::{Error, Result};
pub use glueing::{check_pair, decompose, decompose_partition, glue, make_admissible, AdmissibleMap, AdmissiblePair, SumSpace};
pub use space::{validate_space, FiniteSpace, SpaceMap};
pub use subset::Subset;
