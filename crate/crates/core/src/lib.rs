//! Existential and universal completions of poset-valued doctrines over
//! finite categories, with brute-force decision procedures and law checkers.

pub mod completion;
pub mod dialectica;
pub mod doctrine;
pub mod error;
pub mod fincat;
pub mod laws;
pub mod poset;
pub mod principles;

pub use error::{Error, Result};
