//! Exact structural analysis of rational matrices and construction,
//! verification and inversion of their strong linearizations.

pub mod error;
pub mod exactalg;
pub mod fiedler;
pub mod fixtures;
pub mod linearize;
pub mod minbases;
pub mod polymat;
pub mod sysmat;
pub mod verify;

pub use error::{Error, Result};
