//! Closed-form radiation-pressure forces, damping rates, heating rates and
//! equilibrium centre-of-mass temperatures.
//!
//! Damping rates are angular (rad/s). Every thermal-source pairing here
//! satisfies ΔĖ = k_B·T·Γ identically, because heating and damping share
//! one prefactor.

use std::f64::consts::PI;

use crate::constants::{C, EPS0, HBAR, K_B};
use crate::error::{Error, Result};
use crate::geometry::{DielectricSphere, FocusingOptics, ReflectiveDisk};
use crate::scenario::{Scenario, Source, Target};
use crate::sources::{Amplifier, BlackbodySource, LaserSource, Microcavity2D};

#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub pairing: String,
    /// Force along the beam (z) on a stationary target, N.
    pub radiation_pressure_force: f64,
    /// Γ per axis (x, y, z), rad/s. Zero on axes the light does not damp.
    pub damping_rate: [f64; 3],
    /// ΔĖ per axis, W.
    pub heating_rate: [f64; 3],
    pub equilibrium_temperature: f64,
    /// 2π/Γ_z, s.
    pub damping_time_2pi: f64,
    /// 1/Γ_z, s.
    pub relaxation_time: f64,
    /// Regime notes that do not invalidate the result.
    pub warnings: Vec<String>,
}

impl RateReport {
    fn new(pairing: String, force: f64, damping_rate: [f64; 3], heating_rate: [f64; 3], temperature: f64) -> Self {
        let gz = damping_rate[2];
        Self {
            pairing,
            radiation_pressure_force: force,
            damping_rate,
            heating_rate,
            equilibrium_temperature: temperature,
            damping_time_2pi: 2.0 * PI / gz,
            relaxation_time: 1.0 / gz,
            warnings: Vec::new(),
        }
    }

    pub fn damping_rate_hz(&self) -> [f64; 3] {
        self.damping_rate.map(|g| g / (2.0 * PI))
    }

    /// ΔĖ/(k_B Γ) on one axis, or `None` where the axis is undamped.
    pub fn axis_temperature(&self, axis: usize) -> Option<f64> {
        let g = self.damping_rate[axis];
        (g > 0.0).then(|| self.heating_rate[axis] / (K_B * g))
    }

    /// Scales rates by a uniform photon-flux factor; temperatures are unchanged.
    pub fn boosted(&self, factor: f64) -> Self {
        let mut out = Self::new(
            self.pairing.clone(),
            self.radiation_pressure_force * factor,
            self.damping_rate.map(|g| g * factor),
            self.heating_rate.map(|h| h * factor),
            self.equilibrium_temperature,
        );
        out.warnings = self.warnings.clone();
        out
    }
}

fn check_velocity(v: f64) -> Result<f64> {
    let beta = v / C;
    if beta.abs() < 0.01 {
        Ok(beta)
    } else {
        Err(Error::OutOfRegime(format!("|v|/c = {} must be < 0.01", beta.abs())))
    }
}

fn bb_disk_prefactor(disk: &ReflectiveDisk, src: &BlackbodySource) -> f64 {
    disk.area * PI * PI * (K_B * src.temperature).powi(4) / (HBAR.powi(3) * C.powi(3))
}

/// Force on the disk moving with v_z, pressure term minus the linear drag.
pub fn bb_disk_force(disk: &ReflectiveDisk, src: &BlackbodySource, v_z: f64) -> Result<f64> {
    check_velocity(v_z)?;
    let p = bb_disk_prefactor(disk, src);
    Ok(p / 45.0 - p / (15.0 * C) * v_z)
}

pub fn bb_disk_damping_rate(disk: &ReflectiveDisk, src: &BlackbodySource) -> f64 {
    bb_disk_prefactor(disk, src) / (15.0 * disk.mass * C)
}

pub fn bb_disk_heating_rate(disk: &ReflectiveDisk, src: &BlackbodySource) -> f64 {
    bb_disk_damping_rate(disk, src) * K_B * src.temperature
}

/// G V_R T_r e^{(μ_c−ħω_c)/k_BT} / (q n D0), with n per the cavity's convention.
fn cavity_disk_prefactor(cav: &Microcavity2D, amp: &Amplifier) -> f64 {
    amp.gain_linear * cav.cavity_volume * cav.mirror_transmission * cav.boltzmann_cutoff_factor()
        / (f64::from(cav.longitudinal_mode) * cav.disk_index_factor() * cav.mirror_separation)
}

/// Radiation-pressure term for the disk in the amplified cavity beam.
pub fn cavity_disk_pressure(cav: &Microcavity2D, amp: &Amplifier) -> f64 {
    let kt = cav.kt();
    cavity_disk_prefactor(cav, amp) * cav.cutoff_frequency.powi(2) * kt * kt / (3.0 * PI * PI * HBAR * C.powi(3))
}

pub fn cavity_disk_force(disk: &ReflectiveDisk, cav: &Microcavity2D, amp: &Amplifier, v_z: f64) -> Result<f64> {
    check_velocity(v_z)?;
    let drag = disk.mass * cavity_disk_damping_rate(disk, cav, amp) * v_z;
    Ok(cavity_disk_pressure(cav, amp) - drag)
}

pub fn cavity_disk_damping_rate(disk: &ReflectiveDisk, cav: &Microcavity2D, amp: &Amplifier) -> f64 {
    cavity_disk_prefactor(cav, amp) * cav.kt() * cav.cutoff_frequency.powi(3)
        / (4.0 * disk.mass * PI * PI * C.powi(4))
}

pub fn cavity_disk_heating_rate(disk: &ReflectiveDisk, cav: &Microcavity2D, amp: &Amplifier) -> f64 {
    cavity_disk_damping_rate(disk, cav, amp) * cav.kt()
}

/// Mirror reflecting a laser beam along z: Γ_z = 2Ṅħω/(Mc²), T_cm = ħω/k_B.
pub fn laser_mirror_rates(laser: &LaserSource, disk: &ReflectiveDisk) -> RateReport {
    let n = laser.photon_rate;
    let w = laser.angular_frequency;
    let gamma = 2.0 * n * HBAR * w / (disk.mass * C * C);
    let heating = 2.0 * n * (HBAR * w).powi(2) / (disk.mass * C * C);
    RateReport::new(
        "laser+disk".into(),
        2.0 * n * HBAR * w / C,
        [0.0, 0.0, gamma],
        [0.0, 0.0, heating],
        HBAR * w / K_B,
    )
}

/// Recoil-limited temperature of a Rayleigh sphere in a laser beam, ħω/4k_B.
pub fn laser_sphere_equilibrium_temperature(laser: &LaserSource) -> f64 {
    HBAR * laser.angular_frequency / (4.0 * K_B)
}

fn cavity_sphere_prefactor(cav: &Microcavity2D, amp: &Amplifier, optics: &FocusingOptics) -> f64 {
    amp.gain_linear * cav.emission_prefactor() * cav.boltzmann_cutoff_factor() / optics.spot_area
}

/// Rayleigh cross section σ_s = α²ω⁴/(6πε0²c⁴).
pub fn rayleigh_cross_section(sphere: &DielectricSphere, omega: f64) -> f64 {
    sphere.polarizability.powi(2) * omega.powi(4) / (6.0 * PI * EPS0 * EPS0 * C.powi(4))
}

/// Isotropic damping rate of the sphere (same on x, y, z), rad/s.
pub fn cavity_sphere_damping_rate(
    sphere: &DielectricSphere,
    cav: &Microcavity2D,
    amp: &Amplifier,
    optics: &FocusingOptics,
) -> f64 {
    cavity_sphere_prefactor(cav, amp, optics) * sphere.polarizability.powi(2) * cav.kt() * cav.cutoff_frequency.powi(7)
        / (36.0 * PI.powi(3) * EPS0 * EPS0 * C.powi(8) * sphere.mass)
}

/// Radiation-pressure force on the stationary sphere along the beam.
pub fn cavity_sphere_pressure(
    sphere: &DielectricSphere,
    cav: &Microcavity2D,
    amp: &Amplifier,
    optics: &FocusingOptics,
) -> f64 {
    let kt = cav.kt();
    cavity_sphere_prefactor(cav, amp, optics) * sphere.polarizability.powi(2) * kt * kt * cav.cutoff_frequency.powi(6)
        / (24.0 * PI.powi(3) * HBAR * EPS0 * EPS0 * C.powi(7))
}

pub fn cavity_sphere_rates(
    sphere: &DielectricSphere,
    cav: &Microcavity2D,
    amp: &Amplifier,
    optics: &FocusingOptics,
) -> Result<RateReport> {
    let lambda = crate::constants::angular_frequency_to_wavelength(cav.cutoff_frequency);
    if sphere.exceeds_dipole_limit(lambda) {
        return Err(Error::OutOfRegime(format!(
            "sphere radius {:.3e} m is not below λ_c/4 = {:.3e} m",
            sphere.radius,
            lambda / 4.0
        )));
    }
    let gamma = cavity_sphere_damping_rate(sphere, cav, amp, optics);
    let heating = gamma * cav.kt();
    let mut report = RateReport::new(
        "microcavity+sphere".into(),
        cavity_sphere_pressure(sphere, cav, amp, optics),
        [gamma; 3],
        [heating; 3],
        cav.temperature,
    );
    if !sphere.is_rayleigh(lambda) {
        report.warnings.push(format!(
            "sphere radius {:.3e} m exceeds λ_c/10 = {:.3e} m; dipole scattering is approximate",
            sphere.radius,
            lambda / 10.0
        ));
    }
    Ok(report)
}

/// Dispatches over the (source, target) pairings that have closed forms.
pub fn make_rate_report(
    source: &Source,
    target: &Target,
    amp: &Amplifier,
    optics: Option<&FocusingOptics>,
) -> Result<RateReport> {
    match (source, target) {
        (Source::Blackbody(bb), Target::Disk(disk)) => {
            let gamma = bb_disk_damping_rate(disk, bb);
            Ok(RateReport::new(
                "blackbody+disk".into(),
                bb_disk_force(disk, bb, 0.0)?,
                [0.0, 0.0, gamma],
                [0.0, 0.0, bb_disk_heating_rate(disk, bb)],
                bb.temperature,
            ))
        }
        (Source::Microcavity(cav), Target::Disk(disk)) => {
            let gamma = cavity_disk_damping_rate(disk, cav, amp);
            Ok(RateReport::new(
                "microcavity+disk".into(),
                cavity_disk_pressure(cav, amp),
                [0.0, 0.0, gamma],
                [0.0, 0.0, cavity_disk_heating_rate(disk, cav, amp)],
                cav.temperature,
            ))
        }
        (Source::Microcavity(cav), Target::Sphere(sphere)) => {
            let optics = optics.ok_or_else(|| Error::Config("sphere pairing needs focusing optics (optics.spot_radius)".into()))?;
            cavity_sphere_rates(sphere, cav, amp, optics)
        }
        (Source::Laser(laser), Target::Disk(disk)) => {
            let boosted = LaserSource::new(laser.angular_frequency, laser.photon_rate * amp.gain_linear)?;
            Ok(laser_mirror_rates(&boosted, disk))
        }
        (Source::Blackbody(_), Target::Sphere(_)) => Err(Error::UnsupportedPairing(
            "blackbody+sphere has no closed form; compare against a blackbody disk instead".into(),
        )),
        (Source::Laser(_), Target::Sphere(_)) => Err(Error::UnsupportedPairing(
            "laser+sphere provides only the equilibrium temperature ħω/4k_B".into(),
        )),
    }
}

pub fn scenario_rates(s: &Scenario) -> Result<RateReport> {
    make_rate_report(&s.source, &s.target, &s.amplifier, s.optics.as_ref())
}
