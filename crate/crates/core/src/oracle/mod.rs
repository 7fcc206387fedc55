//! Direct numerical evaluation of the force, damping and heating integrals
//! without the expansions used by the closed forms in [`crate::rates`].

mod integrals;
pub mod quad;
mod sphere_mc;

pub use integrals::*;
pub use quad::Estimate;
pub use sphere_mc::*;

use crate::error::{Error, Result};

/// Occupation law used inside cavity integrands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Occupation {
    #[default]
    BoseEinstein,
    /// exp[−(ħω − μ_c)/k_BT], the form the closed expressions expand.
    Boltzmann,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub relative_tolerance: f64,
    pub absolute_tolerance: f64,
    pub max_subdivisions: usize,
    /// Gauss–Legendre order in cos θ.
    pub angular_nodes: usize,
    /// Target sample count for the 5D Monte Carlo estimates.
    pub mc_samples: usize,
    pub rng_seed: u64,
    pub occupation: Occupation,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-13,
            absolute_tolerance: 0.0,
            max_subdivisions: 4000,
            angular_nodes: 32,
            mc_samples: 100_000,
            rng_seed: 0x5eed,
            occupation: Occupation::BoseEinstein,
        }
    }
}

pub const MIN_MC_SAMPLES: usize = 10_000;

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.relative_tolerance > 0.0) {
            return Err(Error::domain("relative_tolerance", self.relative_tolerance, "must be > 0"));
        }
        if !(self.absolute_tolerance >= 0.0) {
            return Err(Error::domain("absolute_tolerance", self.absolute_tolerance, "must be >= 0"));
        }
        if self.angular_nodes < 2 {
            return Err(Error::domain("angular_nodes", self.angular_nodes as f64, "must be >= 2"));
        }
        Ok(())
    }

    pub fn with_occupation(mut self, occupation: Occupation) -> Self {
        self.occupation = occupation;
        self
    }

    pub fn with_mc_samples(mut self, samples: usize) -> Self {
        self.mc_samples = samples;
        self
    }
}

/// Exact-vs-approximate comparison of one quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub exact_value: f64,
    pub approx_value: f64,
    pub relative_error: f64,
    /// Relative uncertainty of the exact value.
    pub quadrature_error_estimate: f64,
    /// Set when the exact value is too uncertain to resolve the difference.
    pub flagged: bool,
}

pub fn compare(exact: f64, approx: f64) -> ComparisonReport {
    compare_with_uncertainty(exact, approx, 0.0)
}

pub fn compare_with_uncertainty(exact: f64, approx: f64, relative_uncertainty: f64) -> ComparisonReport {
    let relative_error = if exact == approx {
        0.0
    } else {
        (exact - approx).abs() / exact.abs()
    };
    ComparisonReport {
        exact_value: exact,
        approx_value: approx,
        relative_error,
        quadrature_error_estimate: relative_uncertainty,
        flagged: relative_uncertainty > relative_error / 10.0,
    }
}

pub fn compare_estimate(exact: Estimate, approx: f64) -> ComparisonReport {
    compare_with_uncertainty(exact.value, approx, exact.relative_error())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison_basics() {
        let r = compare(1.0, 1.05);
        assert!((r.relative_error - 0.05).abs() < 1e-15);
        assert!(!r.flagged);
        let same = compare(3.7, 3.7);
        assert_eq!(same.relative_error, 0.0);
        assert!(!same.flagged);
        assert!(compare_with_uncertainty(1.0, 1.05, 0.01).flagged);
        assert!(!compare_with_uncertainty(1.0, 1.05, 0.004).flagged);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::default().validate().is_ok());
        let bad = QuadratureSpec { relative_tolerance: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
    }
}
