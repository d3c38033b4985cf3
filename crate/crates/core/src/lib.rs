//! Exact combinatorics of extended affine Weyl groups under twisted
//! conjugation: Newton invariants, minimal length reduction, standard
//! triples, the cocenter of the generic Iwahori–Hecke algebra and the rigid
//! part of the Newton stratification.

pub mod cli;
pub mod error;
pub mod hecke;
pub mod lattice;
pub mod root_datum;
pub mod newton;
pub mod oracle;
pub mod poly;
pub mod rigid;
pub mod setting;
pub mod weyl;

pub use error::{Error, Result};
