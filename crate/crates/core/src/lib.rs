//! Weighted flag varieties: exact Hilbert series, canonical classes,
//! cones and quasilinear sections, Calabi-Yau/Fano candidate search and a
//! weighted Buchberger engine for the embedded defining ideals.

pub mod catalog;
pub mod cli;
pub mod construct;
pub mod error;
pub mod ideals;
pub mod invariants;
pub mod lattice;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
