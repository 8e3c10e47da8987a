//! Heights of algebraic points, their Galois orbits on the torus, and explicit
//! bounds for how far an orbit is from being equidistributed.

pub mod bounds;
pub mod discrepancy;
pub mod error;
pub mod experiment;
pub mod io;
pub mod orbit;
mod par;
pub mod poly;
pub mod testfn;

pub use error::{Error, Result};
