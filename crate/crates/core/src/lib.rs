//! Engine for binary self-dual codes: bit-packed GF(2) linear algebra,
//! neighbor constructions and the neighbor-distance metric, exact weight
//! enumeration by Gray-code traversal, and a seeded randomized search for
//! extremal codes.

pub mod cli;
pub mod codefile;
pub mod dataset;
pub mod error;
pub mod gf2;
pub mod neighbor;
pub mod search;
pub mod selfdual;
pub mod wenum;

pub use error::{Error, Result};
