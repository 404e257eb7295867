pub mod cli;
pub mod criterion;
pub mod determinant;
pub mod error;
pub mod exact;
pub mod holonomic;
pub mod pade;
pub mod weyl;

pub use error::{Error, Result};
