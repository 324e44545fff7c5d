//! Exact arithmetic for jet minors of the current groups `SL_n[[s]]` and
//! `Sp_2n[[s]]`: relation families, straightening, basis monomials and
//! graded characters of Weyl modules.

pub mod basis;
pub mod characters;
pub mod combinatorics;
pub mod error;
pub mod jetpoly;
pub mod linalg;
pub mod minors;
pub mod oracle;
pub mod rational;
pub mod relations;

pub use combinatorics::{Alphabet, Kind, RowSet};
pub use error::{Error, Result};
