//! Five-dimensional sphere integrals: frequency by composite Gauss–Legendre,
//! incidence and scattering directions by stratified Monte Carlo.
//!
//! Incidence directions cover the hemisphere facing the source uniformly;
//! scattered directions cover the full sphere uniformly. The scattering
//! cross section is frozen at ω_c.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::integrals::{check_beta, check_pole, occupation, occupation_variance, FD_BETA_STEP, TAIL_KT};
use super::quad::composite_gauss_legendre;
use super::{QuadratureSpec, MIN_MC_SAMPLES};
use crate::constants::{angular_frequency_to_wavelength, C, HBAR};
use crate::error::{Error, Result};
use crate::geometry::{DielectricSphere, FocusingOptics};
use crate::rates::rayleigh_cross_section;
use crate::sources::{Amplifier, Microcavity2D};

/// Per-axis Monte Carlo estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: [f64; 3],
    pub standard_error: [f64; 3],
    pub samples: usize,
}

impl McEstimate {
    fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value.map(|v| v * factor),
            standard_error: self.standard_error.map(|s| s * factor.abs()),
            samples: self.samples,
        }
    }

    pub fn total(&self) -> f64 {
        self.value.iter().sum()
    }

    pub fn total_standard_error(&self) -> f64 {
        self.standard_error.iter().map(|s| s * s).sum::<f64>().sqrt()
    }
}

struct FrequencyRule {
    omega: Vec<f64>,
    weight: Vec<f64>,
}

impl FrequencyRule {
    fn new(cav: &Microcavity2D) -> Self {
        let (omega, weight) = composite_gauss_legendre(16, 15, 0.0, TAIL_KT * cav.kt() / HBAR);
        Self { omega, weight }
    }

    /// Σ w·ω(ω_c+ω)^power·g(x) with the photon energy stretched by `stretch`.
    fn sum(&self, cav: &Microcavity2D, stretch: f64, power: i32, variance: bool, spec: &QuadratureSpec) -> f64 {
        let wc = cav.cutoff_frequency;
        let kt = cav.kt();
        let mu = cav.chemical_potential;
        self.omega
            .iter()
            .zip(&self.weight)
            .map(|(&w, &wt)| {
                let x = (HBAR * (wc + w) * stretch - mu) / kt;
                let g = if variance {
                    occupation_variance(x, spec.occupation)
                } else {
                    occupation(x, spec.occupation)
                };
                wt * w * (wc + w).powi(power) * g
            })
            .sum()
    }
}

/// Incidence and scattering unit vectors for a point of the unit 4-cube.
fn directions(p: &[f64; 4]) -> ([f64; 3], [f64; 3]) {
    let ui = p[0];
    let si = (1.0 - ui * ui).max(0.0).sqrt();
    let (fi_s, fi_c) = (2.0 * PI * p[1]).sin_cos();
    let us = 2.0 * p[2] - 1.0;
    let ss = (1.0 - us * us).max(0.0).sqrt();
    let (fs_s, fs_c) = (2.0 * PI * p[3]).sin_cos();
    ([si * fi_c, si * fi_s, ui], [ss * fs_c, ss * fs_s, us])
}

fn strata_per_axis(samples: usize) -> Result<usize> {
    if samples < MIN_MC_SAMPLES {
        return Err(Error::Statistics(format!(
            "{samples} Monte Carlo samples requested, at least {MIN_MC_SAMPLES} needed"
        )));
    }
    let mut m = (samples as f64).powf(0.25).ceil() as usize;
    if m % 2 == 1 {
        m += 1;
    }
    Ok(m)
}

/// Stratified estimate of E[f] over the unit 4-cube with one sample per
/// cell. The standard error pairs neighbouring cells along the last axis.
/// Rows run in parallel on independent ChaCha streams and are combined in
/// row order, so results do not depend on scheduling.
fn stratified_mean<F>(samples: usize, seed: u64, f: F) -> Result<McEstimate>
where
    F: Fn(&[f64; 4]) -> [f64; 3] + Sync,
{
    let m = strata_per_axis(samples)?;
    let mf = m as f64;
    let rows: Vec<([f64; 3], [f64; 3])> = (0..m)
        .into_par_iter()
        .map(|a| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(a as u64);
            let mut sum = [0.0; 3];
            let mut sq = [0.0; 3];
            for b in 0..m {
                for c in 0..m {
                    for d in (0..m).step_by(2) {
                        let mut pair = [[0.0; 3]; 2];
                        for (k, dd) in [d, d + 1].into_iter().enumerate() {
                            let p = [
                                (a as f64 + rng.random::<f64>()) / mf,
                                (b as f64 + rng.random::<f64>()) / mf,
                                (c as f64 + rng.random::<f64>()) / mf,
                                (dd as f64 + rng.random::<f64>()) / mf,
                            ];
                            pair[k] = f(&p);
                        }
                        for i in 0..3 {
                            sum[i] += pair[0][i] + pair[1][i];
                            sq[i] += (pair[0][i] - pair[1][i]).powi(2);
                        }
                    }
                }
            }
            (sum, sq)
        })
        .collect();
    let n = m.pow(4);
    let mut sum = [0.0; 3];
    let mut sq = [0.0; 3];
    for (s, q) in &rows {
        for i in 0..3 {
            sum[i] += s[i];
            sq[i] += q[i];
        }
    }
    let nf = n as f64;
    Ok(McEstimate {
        value: sum.map(|s| s / nf),
        standard_error: sq.map(|q| q.sqrt() / nf),
        samples: n,
    })
}

fn check_sphere(sphere: &DielectricSphere, cav: &Microcavity2D) -> Result<()> {
    let lambda = angular_frequency_to_wavelength(cav.cutoff_frequency);
    if sphere.exceeds_dipole_limit(lambda) {
        Err(Error::OutOfRegime(format!(
            "sphere radius {:.3e} m is not below λ_c/4 = {:.3e} m",
            sphere.radius,
            lambda / 4.0
        )))
    } else {
        Ok(())
    }
}

/// Scattered photons per (s · sr² · (rad/s)) per unit occupation, including
/// the 2π·4π/4π angular volume of the sampled domain.
fn scattering_prefactor(
    sphere: &DielectricSphere,
    cav: &Microcavity2D,
    amp: &Amplifier,
    optics: &FocusingOptics,
) -> f64 {
    amp.gain_linear * cav.emission_prefactor() / optics.spot_area
        * rayleigh_cross_section(sphere, cav.cutoff_frequency)
        * cav.cutoff_frequency
        / (4.0 * PI.powi(3) * C * C)
        * 2.0
        * PI
}

/// Force (N) on the sphere moving with velocity `v`, momentum transfer
/// ħk(Θ_i − Θ_s) per scattering event.
pub fn sphere_force_exact(
    sphere: &DielectricSphere,
    cav: &Microcavity2D,
    amp: &Amplifier,
    optics: &FocusingOptics,
    v: [f64; 3],
    spec: &QuadratureSpec,
) -> Result<McEstimate> {
    spec.validate()?;
    check_sphere(sphere, cav)?;
    let speed = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    check_beta(speed / C)?;
    check_pole(cav, speed / C)?;
    let rule = FrequencyRule::new(cav);
    let est = stratified_mean(spec.mc_samples, spec.rng_seed, |p| {
        let (ti, ts) = directions(p);
        let beta = (v[0] * ti[0] + v[1] * ti[1] + v[2] * ti[2]) / C;
        let i1 = rule.sum(cav, 1.0 + beta, 1, false, spec);
        [(ti[0] - ts[0]) * i1, (ti[1] - ts[1]) * i1, (ti[2] - ts[2]) * i1]
    })?;
    Ok(est.scaled(scattering_prefactor(sphere, cav, amp, optics) * HBAR / C))
}

/// Per-axis heating power (W) from the variance of the scattering kicks.
pub fn sphere_heating_exact(
    sphere: &DielectricSphere,
    cav: &Microcavity2D,
    amp: &Amplifier,
    optics: &FocusingOptics,
    spec: &QuadratureSpec,
) -> Result<McEstimate> {
    spec.validate()?;
    check_sphere(sphere, cav)?;
    check_pole(cav, 0.0)?;
    let rule = FrequencyRule::new(cav);
    let i2 = rule.sum(cav, 1.0, 2, true, spec);
    let est = stratified_mean(spec.mc_samples, spec.rng_seed, |p| {
        let (ti, ts) = directions(p);
        let k = [(ti[0] - ts[0]).powi(2), (ti[1] - ts[1]).powi(2), (ti[2] - ts[2]).powi(2)];
        debug_assert!(k.iter().all(|x| *x >= 0.0));
        k
    })?;
    Ok(est.scaled(scattering_prefactor(sphere, cav, amp, optics) * HBAR * HBAR / (C * C) * i2 / (2.0 * sphere.mass)))
}

/// Per-axis damping rate (rad/s), −(∂F_a/∂v_a)/M by a Richardson central
/// difference evaluated on common samples.
pub fn sphere_damping_exact(
    sphere: &DielectricSphere,
    cav: &Microcavity2D,
    amp: &Amplifier,
    optics: &FocusingOptics,
    spec: &QuadratureSpec,
) -> Result<McEstimate> {
    spec.validate()?;
    check_sphere(sphere, cav)?;
    check_pole(cav, FD_BETA_STEP)?;
    let rule = FrequencyRule::new(cav);
    let h = FD_BETA_STEP;
    let est = stratified_mean(spec.mc_samples, spec.rng_seed, |p| {
        let (ti, ts) = directions(p);
        let mut out = [0.0; 3];
        for a in 0..3 {
            let f = |b: f64| rule.sum(cav, 1.0 + b * ti[a], 1, false, spec);
            let d1 = (f(h) - f(-h)) / (2.0 * h);
            let d2 = (f(0.5 * h) - f(-0.5 * h)) / h;
            out[a] = (ti[a] - ts[a]) * (4.0 * d2 - d1) / 3.0;
        }
        out
    })?;
    Ok(est.scaled(-scattering_prefactor(sphere, cav, amp, optics) * HBAR / C / (sphere.mass * C)))
}
