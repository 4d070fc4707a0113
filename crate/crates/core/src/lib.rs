pub mod diagram;
pub mod error;
pub mod frobenius;
pub mod lawcheck;
pub mod matcat;
pub mod random;
pub mod scalars;
pub mod tqft;

pub use error::{Error, ParseError, Result};
