pub mod cli;
pub mod elliptic;
pub mod error;
pub mod fluctuations;
pub mod numeric;
pub mod paths;
pub mod potential;
pub mod thermo;

pub use error::{Error, Result};
