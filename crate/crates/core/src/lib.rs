//! Exact Hall-type algebras of quiver representations over prime fields.

pub mod checks;
pub mod cli;
pub mod coeff;
pub mod delta;
pub mod element;
pub mod error;
pub mod extended;
pub mod hall;
pub mod iqg;
pub mod quiver;
pub mod repcat;

pub use error::{Error, Result};
