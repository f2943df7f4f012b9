//! Exact computations in quantized enveloping algebras: quantum nilpotent
//! subalgebras, PBW and dual canonical bases, quantum twist maps and
//! unipotent quantum minors.

#![allow(clippy::needless_range_loop)]

pub mod dcb;
pub mod error;
pub mod finitetype;
pub mod minors;
pub mod pbw;
pub mod rootdata;
pub mod scalars;
pub mod twist;
pub mod uqfull;
pub mod uqminus;

pub use error::{Error, Result};
pub use scalars::{qbinom, qfactorial, qint, LaurentPoly, Poly, RatFunc};
