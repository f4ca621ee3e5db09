pub mod classify;
pub mod cli;
pub mod error;
pub mod extension;
pub mod ring;
pub mod skew;

pub use error::{Error, ParseError, Result, TwistError};
