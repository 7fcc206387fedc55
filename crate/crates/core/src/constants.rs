//! Physical constants (CODATA 2018) and unit conversions.
//!
//! Every other module reads constants from here; no physical literals are
//! repeated elsewhere in the crate.

/// Fundamental constants in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light, m/s.
    pub c: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Vacuum permittivity, F/m.
    pub eps0: f64,
}

pub const CODATA: PhysicalConstants = PhysicalConstants {
    c: 299_792_458.0,
    hbar: 1.054_571_817e-34,
    k_b: 1.380_649e-23,
    eps0: 8.854_187_812_8e-12,
};

pub const C: f64 = CODATA.c;
pub const HBAR: f64 = CODATA.hbar;
pub const K_B: f64 = CODATA.k_b;
pub const EPS0: f64 = CODATA.eps0;

/// Elementary charge, C (joules per electron-volt).
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;
/// Unified atomic mass unit, kg.
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

pub const PA_PER_MBAR: f64 = 100.0;
pub const SECONDS_PER_DAY: f64 = 86_400.0;
/// Julian year.
pub const SECONDS_PER_YEAR: f64 = 365.25 * SECONDS_PER_DAY;

/// Linear gain from decibels.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Angular frequency of light with the given vacuum wavelength.
pub fn wavelength_to_angular_frequency(lambda: f64) -> f64 {
    2.0 * std::f64::consts::PI * C / lambda
}

pub fn angular_frequency_to_wavelength(omega: f64) -> f64 {
    2.0 * std::f64::consts::PI * C / omega
}

pub fn ev_to_joule(ev: f64) -> f64 {
    ev * ELECTRON_VOLT
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decibel_conversion() {
        assert_eq!(db_to_linear(0.0), 1.0);
        assert!((db_to_linear(70.0) - 1e7).abs() / 1e7 < 1e-12);
        assert!((db_to_linear(80.0) - 1e8).abs() / 1e8 < 1e-12);
    }

    #[test]
    fn wavelength_round_trip() {
        let w = wavelength_to_angular_frequency(588e-9);
        assert!((angular_frequency_to_wavelength(w) - 588e-9).abs() < 1e-20);
    }
}
