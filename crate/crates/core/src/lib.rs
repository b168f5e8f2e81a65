//! Involutions of exceptional groups, distinguished unipotent parameters and
//! the square-integrability check for residues of Borel Eisenstein series.

pub mod cfunction;
pub mod cli;
pub mod error;
pub mod involutions;
pub mod nilpotent;
pub mod rootsys;
pub mod sqint;
pub mod weyl;

pub use error::{Error, Result};
