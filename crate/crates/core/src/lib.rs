//! Exact computations for divisorial contractions to a 3-fold cA1 point.

pub mod baskets;
pub mod blowup;
pub mod catalog;
pub mod duval;
pub mod error;
pub mod filtration;
pub mod numeric;
pub mod rr;

pub use error::{Error, Result};
pub use numeric::Rat;
