//! Radiation-pressure damping and heating of optomechanical targets by
//! thermal photon gases, photon-BEC microcavity light and lasers.

pub mod constants;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod rates;
pub mod scenario;
pub mod sim;
pub mod sources;

pub use error::{Error, Result};
