//! Irregular channel polarization and secure polar coding for the static
//! adversarial wiretap channel.
//!
//! Indices are 0-based throughout the library; CSV output and config files
//! use 1-based indices.

pub mod awtc;
pub mod channels;
pub mod cli;
pub mod error;
pub mod indexset;
pub mod metrics;
pub mod polarize;
pub mod rng;
pub mod secure_code;

pub use channels::{DiscreteChannel, ErasureChannel, Symbol};
pub use error::{Error, Result};
pub use indexset::IndexSet;
