pub mod checks;
pub mod cli;
pub mod error;
pub mod levy;
pub mod numerics;
#[cfg(test)]
mod properties;
pub mod sampling;
pub mod stable;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
