//! Disk and cavity integrals over frequency and incidence angle, plus the
//! finite-difference extraction of damping rates from the exact force.

use std::f64::consts::PI;

use super::quad::{gauss_legendre_on, integrate_adaptive, Estimate};
use super::{Occupation, QuadratureSpec};
use crate::constants::{C, HBAR, K_B};
use crate::error::{Error, Result};
use crate::geometry::ReflectiveDisk;
use crate::sources::{bose_occupation, Amplifier, BlackbodySource, Microcavity2D};

/// β step for central-difference damping extraction.
pub const FD_BETA_STEP: f64 = 1e-4;

/// Upper cut of the reduced frequency integrals, in units of k_BT above the
/// lowest photon energy. The neglected tail is below e⁻⁶⁰ of the peak.
pub(super) const TAIL_KT: f64 = 60.0;
const REDUCED_BREAKS: [f64; 8] = [0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0, TAIL_KT];

pub(super) fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta.abs() < 0.01 {
        Ok(())
    } else {
        Err(Error::OutOfRegime(format!("|β| = {} must be < 0.01", beta.abs())))
    }
}

pub(super) fn occupation(x: f64, law: Occupation) -> f64 {
    match law {
        Occupation::BoseEinstein => bose_occupation(x),
        Occupation::Boltzmann => (-x).exp(),
    }
}

/// Photon-number variance per mode, n(1+n) for Bose–Einstein statistics.
pub(super) fn occupation_variance(x: f64, law: Occupation) -> f64 {
    match law {
        Occupation::BoseEinstein => {
            let n = bose_occupation(x);
            n * (1.0 + n)
        }
        Occupation::Boltzmann => (-x).exp(),
    }
}

fn reduced_integral<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<Estimate> {
    integrate_adaptive(
        f,
        &REDUCED_BREAKS,
        spec.relative_tolerance,
        spec.absolute_tolerance,
        spec.max_subdivisions,
    )
}

/// Sums a Gauss–Legendre rule in u = cos θ over [0, 1] of per-node integrals.
fn angular_sum<F: Fn(f64) -> Result<Estimate>>(spec: &QuadratureSpec, f: F) -> Result<Estimate> {
    let (u, w) = gauss_legendre_on(spec.angular_nodes, 0.0, 1.0);
    let mut total = Estimate { value: 0.0, error: 0.0 };
    for (u, w) in u.iter().zip(&w) {
        let e = f(*u)?;
        total.value += w * e.value;
        total.error += w * e.error;
    }
    Ok(total)
}

/// ∫₀^∞ ω³/(e^{ħω/k_BT} − 1) dω in (rad/s)⁴.
pub fn integrate_planck_cubic(temperature: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    spec.validate()?;
    let src = BlackbodySource::new(temperature)?;
    let scale = K_B * src.temperature / HBAR;
    let e = reduced_integral(|x| if x > 0.0 { x.powi(3) / x.exp_m1() } else { 0.0 }, spec)?;
    Ok(e.scaled(scale.powi(4)))
}

/// z force on a perfectly reflecting disk moving with β = v_z/c through
/// isotropic blackbody light, integrated over ω, the incidence hemisphere
/// and azimuth with the Doppler shift kept to all orders in the occupation.
pub fn bb_force_exact(disk: &ReflectiveDisk, src: &BlackbodySource, beta: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    check_beta(beta)?;
    spec.validate()?;
    let scale = K_B * src.temperature / HBAR;
    // photons per (m³ sr rad/s) × flux c·cosθ × momentum 2ħω cosθ/c, azimuth gives 2π
    let prefactor = 2.0 * HBAR * disk.area / (4.0 * PI.powi(3) * C.powi(3)) * 2.0 * PI * scale.powi(4);
    let e = angular_sum(spec, |u| {
        let stretch = 1.0 + beta * u;
        let inner = reduced_integral(
            |x| if x > 0.0 { x.powi(3) / (x * stretch).exp_m1() } else { 0.0 },
            spec,
        )?;
        Ok(inner.scaled(u * u))
    })?;
    Ok(e.scaled(prefactor))
}

/// Heating power ΔĖ_z of the stationary disk from the photon-number
/// variance n(1+n) of each blackbody mode.
pub fn bb_heating_exact(disk: &ReflectiveDisk, src: &BlackbodySource, spec: &QuadratureSpec) -> Result<Estimate> {
    spec.validate()?;
    let scale = K_B * src.temperature / HBAR;
    let prefactor = 4.0 * HBAR * HBAR * disk.area / (4.0 * PI.powi(3) * C.powi(4)) * 2.0 * PI * scale.powi(5)
        / (2.0 * disk.mass);
    let e = angular_sum(spec, |u| {
        let inner = reduced_integral(
            |x| {
                if x > 0.0 {
                    let v = x.powi(4) * occupation_variance(x, Occupation::BoseEinstein);
                    debug_assert!(v >= 0.0);
                    v
                } else {
                    0.0
                }
            },
            spec,
        )?;
        Ok(inner.scaled(u.powi(3)))
    })?;
    Ok(e.scaled(prefactor))
}

/// Richardson-extrapolated central difference: (4·D(h/2) − D(h))/3.
pub fn richardson_derivative<F: Fn(f64) -> Result<Estimate>>(f: F, h: f64) -> Result<Estimate> {
    let central = |step: f64| -> Result<(f64, f64)> {
        let plus = f(step)?;
        let minus = f(-step)?;
        Ok(((plus.value - minus.value) / (2.0 * step), (plus.error + minus.error) / (2.0 * step)))
    };
    let (d1, e1) = central(h)?;
    let (d2, e2) = central(0.5 * h)?;
    Ok(Estimate {
        value: (4.0 * d2 - d1) / 3.0,
        error: (d2 - d1).abs() / 3.0 + (4.0 * e2 + e1) / 3.0,
    })
}

/// Γ_z = −(∂F/∂β)/(M c) from the exact blackbody force.
pub fn bb_damping_exact(disk: &ReflectiveDisk, src: &BlackbodySource, spec: &QuadratureSpec) -> Result<Estimate> {
    let d = richardson_derivative(|b| bb_force_exact(disk, src, b, spec), FD_BETA_STEP)?;
    Ok(d.scaled(-1.0 / (disk.mass * C)))
}

/// G·V_R·T_r/(q n D0) for the disk, n following the cavity's convention.
fn cavity_disk_flux_prefactor(cav: &Microcavity2D, amp: &Amplifier) -> f64 {
    amp.gain_linear * cav.emission_prefactor() * cav.refractive_index / cav.disk_index_factor()
}

pub(super) fn check_pole(cav: &Microcavity2D, beta: f64) -> Result<()> {
    let lowest = HBAR * cav.cutoff_frequency * (1.0 - beta.abs());
    if cav.chemical_potential >= lowest {
        Err(Error::Pole("chemical potential reaches the Doppler-shifted cutoff".into()))
    } else {
        Ok(())
    }
}

/// ∫ ω (ω_c+ω)^power · g(x(ω)) dω with x the Doppler-stretched occupation
/// argument, g the occupation or its variance.
fn cavity_frequency_integral(
    cav: &Microcavity2D,
    stretch: f64,
    power: i32,
    variance: bool,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let s = cav.kt() / HBAR;
    let wc = cav.cutoff_frequency;
    let mu = cav.chemical_potential;
    let kt = cav.kt();
    let e = reduced_integral(
        |y| {
            let w = y * s;
            let x = (HBAR * (wc + w) * stretch - mu) / kt;
            let g = if variance {
                occupation_variance(x, spec.occupation)
            } else {
                occupation(x, spec.occupation)
            };
            w * (wc + w).powi(power) * g
        },
        spec,
    )?;
    Ok(e.scaled(s))
}

/// z force on the disk in the amplified cavity output with the Doppler
/// factor (1 + β cos θ) kept inside the occupation. The whole beam is
/// assumed to land on the disk, so its size does not enter.
pub fn cavity_force_exact(
    _disk: &ReflectiveDisk,
    cav: &Microcavity2D,
    amp: &Amplifier,
    beta: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    check_beta(beta)?;
    check_pole(cav, beta)?;
    spec.validate()?;
    let prefactor = cavity_disk_flux_prefactor(cav, amp) * cav.cutoff_frequency / (4.0 * PI.powi(3) * C * C)
        * 2.0 * HBAR / C
        * 2.0 * PI;
    let e = angular_sum(spec, |u| {
        Ok(cavity_frequency_integral(cav, 1.0 + beta * u, 1, false, spec)?.scaled(u * u))
    })?;
    Ok(e.scaled(prefactor))
}

pub fn cavity_heating_exact(
    disk: &ReflectiveDisk,
    cav: &Microcavity2D,
    amp: &Amplifier,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    check_pole(cav, 0.0)?;
    spec.validate()?;
    let prefactor = cavity_disk_flux_prefactor(cav, amp) * cav.cutoff_frequency / (4.0 * PI.powi(3) * C * C)
        * 4.0 * HBAR * HBAR / (C * C)
        * 2.0 * PI
        / (2.0 * disk.mass);
    let e = angular_sum(spec, |u| {
        Ok(cavity_frequency_integral(cav, 1.0, 2, true, spec)?.scaled(u.powi(3)))
    })?;
    Ok(e.scaled(prefactor))
}

pub fn cavity_damping_exact(
    disk: &ReflectiveDisk,
    cav: &Microcavity2D,
    amp: &Amplifier,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let d = richardson_derivative(|b| cavity_force_exact(disk, cav, amp, b, spec), FD_BETA_STEP)?;
    Ok(d.scaled(-1.0 / (disk.mass * C)))
}

/// Quadrature of the cavity output-power spectrum (Boltzmann or Bose
/// integrand per `spec.occupation`).
pub fn output_power_exact(cav: &Microcavity2D, spec: &QuadratureSpec) -> Result<Estimate> {
    spec.validate()?;
    let s = cav.kt() / HBAR;
    let e = reduced_integral(
        |y| match spec.occupation {
            Occupation::Boltzmann => cav.output_power_integrand(y * s),
            Occupation::BoseEinstein => cav.output_power_integrand_bose(y * s),
        },
        spec,
    )?;
    Ok(e.scaled(s))
}
