//! Mechanical targets, focusing optics and the background-gas environment.

use std::f64::consts::PI;

use crate::constants::{ATOMIC_MASS_UNIT, EPS0, K_B};
use crate::error::{require_positive, Error, Result};

/// Perfectly reflecting circular disk, normal along z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectiveDisk {
    pub radius: f64,
    pub thickness: f64,
    pub density: f64,
    pub area: f64,
    pub mass: f64,
}

impl ReflectiveDisk {
    pub fn from_dimensions(radius: f64, thickness: f64, density: f64) -> Result<Self> {
        require_positive("radius", radius)?;
        require_positive("thickness", thickness)?;
        require_positive("density", density)?;
        let area = PI * radius * radius;
        Ok(Self {
            radius,
            thickness,
            density,
            area,
            mass: density * area * thickness,
        })
    }
}

/// Sub-wavelength dielectric sphere (Rayleigh scatterer).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DielectricSphere {
    pub radius: f64,
    pub density: f64,
    pub relative_permittivity: f64,
    pub mass: f64,
    /// Clausius–Mossotti polarizability, C·m²/V.
    pub polarizability: f64,
}

/// Silica defaults used when a configuration leaves the material unspecified.
pub const SILICA_DENSITY: f64 = 2000.0;
pub const SILICA_PERMITTIVITY: f64 = 2.1;

impl DielectricSphere {
    pub fn from_dimensions(radius: f64, density: f64, relative_permittivity: f64) -> Result<Self> {
        require_positive("radius", radius)?;
        require_positive("density", density)?;
        if !(relative_permittivity.is_finite() && relative_permittivity > 1.0) {
            return Err(Error::domain(
                "relative_permittivity",
                relative_permittivity,
                "must be > 1 for a positive polarizability",
            ));
        }
        let r3 = radius.powi(3);
        let eps = relative_permittivity;
        Ok(Self {
            radius,
            density,
            relative_permittivity,
            mass: density * 4.0 / 3.0 * PI * r3,
            polarizability: 4.0 * PI * EPS0 * r3 * (eps - 1.0) / (eps + 2.0),
        })
    }

    pub fn silica(radius: f64) -> Result<Self> {
        Self::from_dimensions(radius, SILICA_DENSITY, SILICA_PERMITTIVITY)
    }

    /// Strict small-particle check: radius below a tenth of the wavelength.
    pub fn is_rayleigh(&self, wavelength: f64) -> bool {
        self.radius < wavelength / 10.0
    }

    /// Hard limit beyond which the point-dipole treatment is rejected outright.
    pub fn exceeds_dipole_limit(&self, wavelength: f64) -> bool {
        self.radius >= wavelength / 4.0
    }
}

/// Light collected from the source and focused to a spot of radius `spot_radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocusingOptics {
    pub spot_radius: f64,
    pub spot_area: f64,
}

impl FocusingOptics {
    pub fn new(spot_radius: f64) -> Result<Self> {
        require_positive("spot_radius", spot_radius)?;
        Ok(Self {
            spot_radius,
            spot_area: PI * spot_radius * spot_radius,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasEnvironment {
    pub pressure: f64,
    pub temperature: f64,
    pub molecular_mass: f64,
    pub viscosity: f64,
}

pub const AIR_MOLECULAR_MASS: f64 = 28.97 * ATOMIC_MASS_UNIT;
pub const AIR_VISCOSITY: f64 = 1.81e-5;

impl GasEnvironment {
    pub fn new(pressure: f64, temperature: f64, molecular_mass: f64, viscosity: f64) -> Result<Self> {
        require_positive("pressure", pressure)?;
        require_positive("temperature", temperature)?;
        require_positive("molecular_mass", molecular_mass)?;
        require_positive("viscosity", viscosity)?;
        Ok(Self {
            pressure,
            temperature,
            molecular_mass,
            viscosity,
        })
    }

    pub fn air(pressure: f64, temperature: f64) -> Result<Self> {
        Self::new(pressure, temperature, AIR_MOLECULAR_MASS, AIR_VISCOSITY)
    }

    /// Mean free path from viscosity, λ = (η/p)·√(π k_B T / 2m).
    pub fn mean_free_path(&self) -> f64 {
        self.viscosity / self.pressure
            * (PI * K_B * self.temperature / (2.0 * self.molecular_mass)).sqrt()
    }

    pub fn knudsen_number(&self, radius: f64) -> f64 {
        self.mean_free_path() / radius
    }
}

/// Gas damping rate (rad/s) of a sphere from the slip-corrected Stokes drag,
/// which reduces to the free-molecular (Epstein) limit at large Knudsen number.
pub fn gas_damping_rate(gas: &GasEnvironment, sphere: &DielectricSphere) -> f64 {
    let kn = gas.knudsen_number(sphere.radius);
    let c_k = 0.31 * kn / (0.785 + 1.152 * kn + kn * kn);
    6.0 * PI * gas.viscosity * sphere.radius / sphere.mass * 0.619 / (0.619 + kn) * (1.0 + c_k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PA_PER_MBAR;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn paper_disk_mass() {
        let d = ReflectiveDisk::from_dimensions(5e-6, 50e-9, 2000.0).unwrap();
        assert!(rel(d.mass, 7.854e-15) < 1e-3);
        assert!(rel(d.mass, 2000.0 * PI * 25e-12 * 50e-9) < 1e-12);
    }

    #[test]
    fn micron_disk_mass() {
        let d = ReflectiveDisk::from_dimensions(1e-6, 1e-6, 1000.0).unwrap();
        assert!(rel(d.mass, 3.141_592_653_589_793e-15) < 1e-12);
    }

    #[test]
    fn degenerate_disk_names_field() {
        match ReflectiveDisk::from_dimensions(5e-6, 0.0, 2000.0) {
            Err(Error::Domain { field, .. }) => assert_eq!(field, "thickness"),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn silica_sphere_mass_and_polarizability() {
        let s = DielectricSphere::from_dimensions(100e-9, 2000.0, 2.1).unwrap();
        assert!(rel(s.mass, 8.378e-18) < 1e-3);
        // 4π·ε0·(1e-7)³·(1.1/4.1), evaluated independently
        let expected = 4.0 * PI * 8.854_187_812_8e-12 * 1e-21 * (1.1 / 4.1);
        assert!(rel(s.polarizability, expected) < 1e-12);
        assert!(!s.is_rayleigh(588e-9));
        assert!(!s.exceeds_dipole_limit(588e-9));
        assert!(DielectricSphere::silica(50e-9).unwrap().is_rayleigh(588e-9));
    }

    #[test]
    fn unit_permittivity_rejected() {
        assert!(matches!(
            DielectricSphere::from_dimensions(1e-7, 2000.0, 1.0),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn spot_area() {
        let o = FocusingOptics::new(1e-6).unwrap();
        assert!(rel(o.spot_area, PI * 1e-12) < 1e-15);
        assert!(FocusingOptics::new(0.0).is_err());
    }

    #[test]
    fn gas_damping_uhv_magnitude() {
        let gas = GasEnvironment::air(1e-9 * PA_PER_MBAR, 300.0).unwrap();
        let s = DielectricSphere::silica(100e-9).unwrap();
        let gamma = gas_damping_rate(&gas, &s);
        let hz = gamma / (2.0 * PI);
        assert!(hz > 5.81e-7 / 2.0 && hz < 5.81e-7 * 2.0, "{hz}");
    }

    #[test]
    fn gas_damping_vanishes_in_vacuum_limit() {
        let s = DielectricSphere::silica(100e-9).unwrap();
        let g = |p: f64| gas_damping_rate(&GasEnvironment::air(p, 300.0).unwrap(), &s);
        assert!(g(1e-20) < 1e-18);
        assert!(g(1e-12) < g(1e-10));
    }

    #[test]
    fn gas_damping_doubles_with_pressure() {
        let s = DielectricSphere::silica(100e-9).unwrap();
        let g = |p: f64| gas_damping_rate(&GasEnvironment::air(p, 300.0).unwrap(), &s);
        assert!(rel(g(2e-7), 2.0 * g(1e-7)) < 1e-9);
    }

    #[test]
    fn gas_rejects_nonpositive_fields() {
        assert!(GasEnvironment::air(0.0, 300.0).is_err());
        assert!(GasEnvironment::new(1.0, 300.0, -1.0, 1e-5).is_err());
    }
}
