//! Event-based photon-kick Monte Carlo.
//!
//! Photons arrive as a Poisson process of bunches: each event puts a
//! geometric number K ≥ 1 of photons into one mode, with the bunch
//! parameter chosen so that the photon-number variance is n(1+n). The
//! target's velocity enters only through the occupation of the arriving
//! mode, evaluated at the Doppler-shifted energy, and is applied by
//! thinning a capped proposal stream.
//!
//! Flux boosting uses macro-photons of weight s: events are drawn at rate
//! B·R/s² and each kick and Doppler shift is multiplied by s. Damping and
//! heating then both scale by exactly B. The static radiation pressure,
//! which would scale as B/s, is subtracted as a constant force.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use super::langevin::{bath_coefficients, Recorder};
use super::trajectory::Trajectory;
use super::{SimConfig, SimRates};
use crate::constants::{C, HBAR, K_B};
use crate::error::{Error, Result};
use crate::rates::rayleigh_cross_section;
use crate::scenario::{Source, Target};

const TABLE_POINTS: usize = 4096;
/// Doppler margin targeted by the automatic event count.
const AUTO_DOPPLER_MARGIN: f64 = 0.02;
/// Largest accepted s·⟨ħω/k_BT⟩·v_scale/c.
const MAX_DOPPLER_MARGIN: f64 = 0.05;
const MIN_EVENTS_PER_STEP: f64 = 10.0;
const WEIGHT_CAP: f64 = 2.0;
const EVENT_BUDGET: f64 = 5e9;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Geometry {
    /// Specular reflection along z, incidence ∝ cos θ.
    Disk,
    /// Rayleigh scattering, incidence uniform over the hemisphere,
    /// scattering uniform over the sphere.
    Sphere,
}

/// Photon energy E(y) = e0 + k_BT·y and occupation argument (E − μ)/k_BT.
#[derive(Debug, Clone, Copy)]
struct ThermalModel {
    kt: f64,
    e0: f64,
    mu: f64,
    /// Exponent of the density-of-states factor y^power.
    power: i32,
    y_max: f64,
}

impl ThermalModel {
    fn energy(&self, y: f64) -> f64 {
        self.e0 + self.kt * y
    }

    fn argument(&self, y: f64, delta: f64) -> f64 {
        (self.energy(y) * (1.0 + delta) - self.mu) / self.kt
    }
}

/// Mean bunched-event occupation n·p with p = 2/(2+n), i.e. 2/(2eˣ − 1).
fn event_occupation(x: f64) -> f64 {
    2.0 / (2.0 * x.exp() - 1.0)
}

/// Success probability of the geometric bunch size, 2/(2+n).
fn bunch_parameter(x: f64) -> f64 {
    let em1 = x.exp_m1();
    2.0 * em1 / (2.0 * em1 + 1.0)
}

struct Spectrum {
    y: Vec<f64>,
    cdf: Vec<f64>,
}

impl Spectrum {
    fn new(model: &ThermalModel) -> Self {
        let h = model.y_max / (TABLE_POINTS - 1) as f64;
        let y: Vec<f64> = (0..TABLE_POINTS).map(|i| i as f64 * h).collect();
        let density = |y: f64| {
            if y <= 0.0 {
                return 0.0;
            }
            y.powi(model.power) * event_occupation(model.argument(y, 0.0))
        };
        let mut cdf = Vec::with_capacity(TABLE_POINTS);
        cdf.push(0.0);
        for i in 1..TABLE_POINTS {
            let mass = 0.5 * h * (density(y[i - 1]) + density(y[i]));
            cdf.push(cdf[i - 1] + mass);
        }
        Self { y, cdf }
    }

    fn total(&self) -> f64 {
        self.cdf[TABLE_POINTS - 1]
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        let target = rng.random::<f64>() * self.total();
        let i = self.cdf.partition_point(|c| *c <= target).clamp(1, TABLE_POINTS - 1);
        let (c0, c1) = (self.cdf[i - 1], self.cdf[i]);
        let frac = if c1 > c0 { (target - c0) / (c1 - c0) } else { 0.0 };
        self.y[i - 1] + frac * (self.y[i] - self.y[i - 1])
    }

    /// Expectation of f under the sampled (piecewise-uniform) distribution.
    fn mean<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let mut acc = 0.0;
        for i in 1..TABLE_POINTS {
            let (a, b) = (self.y[i - 1], self.y[i]);
            let avg = (f(a) + 4.0 * f(0.5 * (a + b)) + f(b)) / 6.0;
            acc += (self.cdf[i] - self.cdf[i - 1]) * avg;
        }
        acc / self.total()
    }
}

/// Event statistics and macro-photon weight chosen for a configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickPlan {
    /// Unboosted photon-bunch arrival rate, 1/s.
    pub event_rate: f64,
    /// Macro-photon weight s ≥ 1.
    pub macro_weight: f64,
    /// Mean accepted events per step.
    pub events_per_step: f64,
    /// ⟨ħω/k_BT⟩ over arriving photons.
    pub mean_reduced_energy: f64,
    /// Velocity scale used by the linear-Doppler guard, m/s.
    pub velocity_scale: f64,
    /// s·⟨ħω/k_BT⟩·v_scale/c.
    pub doppler_margin: f64,
}

struct Setup {
    geometry: Geometry,
    model: ThermalModel,
    spectrum: Spectrum,
    plan: KickPlan,
    /// Mean impulse per accepted event at rest, along z, before the s factor.
    static_impulse: f64,
}

fn build(cfg: &SimConfig, rates: &SimRates) -> Result<Setup> {
    let s = &cfg.scenario;
    let amp = s.amplifier.gain_linear;
    let (geometry, model, geometric_rate) = match (&s.source, &s.target) {
        (Source::Blackbody(bb), Target::Disk(disk)) => {
            let kt = K_B * bb.temperature;
            let m = ThermalModel { kt, e0: 0.0, mu: 0.0, power: 2, y_max: 30.0 };
            // photons per s on area A: A/(4π²c²)·(k_BT/ħ)³·∫y²n dy
            (Geometry::Disk, m, disk.area / (4.0 * PI * PI * C * C))
        }
        (Source::Microcavity(cav), Target::Disk(_)) => {
            let m = ThermalModel {
                kt: cav.kt(),
                e0: HBAR * cav.cutoff_frequency,
                mu: cav.chemical_potential,
                power: 1,
                y_max: 40.0,
            };
            let k_disk = cav.emission_prefactor() * cav.refractive_index / cav.disk_index_factor();
            let rate = amp * k_disk * cav.cutoff_frequency / (4.0 * PI.powi(3) * C * C) * PI;
            (Geometry::Disk, m, rate)
        }
        (Source::Microcavity(cav), Target::Sphere(sphere)) => {
            let optics = s
                .optics
                .ok_or_else(|| Error::Config("sphere pairing needs focusing optics (optics.spot_radius)".into()))?;
            let m = ThermalModel {
                kt: cav.kt(),
                e0: HBAR * cav.cutoff_frequency,
                mu: cav.chemical_potential,
                power: 1,
                y_max: 40.0,
            };
            let sigma = rayleigh_cross_section(sphere, cav.cutoff_frequency);
            let rate = amp * cav.emission_prefactor() / optics.spot_area * sigma * cav.cutoff_frequency
                / (4.0 * PI.powi(3) * C * C)
                * 2.0
                * PI;
            (Geometry::Sphere, m, rate)
        }
        (src, tgt) => {
            return Err(Error::UnsupportedPairing(format!(
                "photon-kick engine supports thermal sources on a disk or a cavity on a sphere, not {}+{}",
                src.kind(),
                tgt.kind()
            )))
        }
    };
    let spectrum = Spectrum::new(&model);
    let event_rate = geometric_rate * (model.kt / HBAR).powi(model.power + 1) * spectrum.total();
    let mean_x = spectrum.mean(|y| model.energy(y) / model.kt);

    let sigma_v = (K_B * rates.radiation_temperature / rates.mass).sqrt();
    let v0 = cfg.initial_velocity.iter().map(|v| v * v).sum::<f64>().sqrt();
    let velocity_scale = v0.max(6.0 * sigma_v);
    let photons_per_step = cfg.flux_boost * event_rate * cfg.timestep;

    let (macro_weight, events_per_step) = match cfg.kicks_per_step {
        Some(k) => {
            if !(k.is_finite() && k > 0.0) {
                return Err(Error::Config(format!("sim.kicks_per_step must be > 0 (got {k})")));
            }
            let w = (photons_per_step / k).sqrt();
            if w < 1.0 {
                return Err(Error::Config(format!(
                    "sim.kicks_per_step = {k:e} exceeds the {photons_per_step:e} photon events available per step"
                )));
            }
            (w, k)
        }
        None => {
            let w_target = AUTO_DOPPLER_MARGIN * C / (mean_x * velocity_scale);
            let w = w_target.min(photons_per_step.sqrt()).max(1.0);
            (w, photons_per_step / (w * w))
        }
    };
    let doppler_margin = macro_weight * mean_x * velocity_scale / C;
    if doppler_margin > MAX_DOPPLER_MARGIN {
        return Err(Error::Config(format!(
            "macro-photon weight {macro_weight:e} gives Doppler margin {doppler_margin:.3} > {MAX_DOPPLER_MARGIN}; raise sim.kicks_per_step"
        )));
    }
    if events_per_step < MIN_EVENTS_PER_STEP {
        return Err(Error::Config(format!(
            "only {events_per_step:.3} photon events per step (need >= {MIN_EVENTS_PER_STEP}); increase sim.timestep or sim.flux_boost"
        )));
    }
    let total_events = events_per_step * cfg.steps() as f64;
    if total_events > EVENT_BUDGET {
        return Err(Error::Config(format!(
            "{total_events:.3e} photon events exceed the budget of {EVENT_BUDGET:e}; shorten sim.duration or set sim.kicks_per_step"
        )));
    }

    // mean bunch size 1/p times photon momentum, angular factor ⟨2u⟩ = 4/3
    // (disk, u ∝ cos θ) or ⟨u⟩ = 1/2 (sphere, uniform hemisphere)
    let angular = match geometry {
        Geometry::Disk => 4.0 / 3.0,
        Geometry::Sphere => 0.5,
    };
    let static_impulse = angular / C * spectrum.mean(|y| {
        let x = model.argument(y, 0.0);
        if x > 0.0 {
            model.energy(y) / bunch_parameter(x)
        } else {
            // blackbody limit y → 0: k_BT·y·(2y + 1)/(2y)
            0.5 * model.kt
        }
    });

    Ok(Setup {
        geometry,
        model,
        spectrum,
        plan: KickPlan {
            event_rate,
            macro_weight,
            events_per_step,
            mean_reduced_energy: mean_x,
            velocity_scale,
            doppler_margin,
        },
        static_impulse,
    })
}

impl KickPlan {
    pub fn for_config(cfg: &SimConfig) -> Result<Self> {
        let rates = SimRates::from_config(cfg)?;
        cfg.validate(&rates)?;
        Ok(build(cfg, &rates)?.plan)
    }
}

fn geometric_size<R: Rng>(p: f64, rng: &mut R) -> u64 {
    if p >= 1.0 {
        return 1;
    }
    let u: f64 = 1.0 - rng.random::<f64>();
    1 + (u.ln() / (-p.max(f64::MIN_POSITIVE)).ln_1p()).floor() as u64
}

fn unit_sphere<R: Rng>(rng: &mut R) -> [f64; 3] {
    let u = 2.0 * rng.random::<f64>() - 1.0;
    let s = (1.0 - u * u).max(0.0).sqrt();
    let (sp, cp) = (2.0 * PI * rng.random::<f64>()).sin_cos();
    [s * cp, s * sp, u]
}

pub fn simulate_photon_kicks(cfg: &SimConfig) -> Result<Trajectory> {
    let rates = SimRates::from_config(cfg)?;
    cfg.validate(&rates)?;
    let setup = build(cfg, &rates)?;
    let plan = setup.plan;
    let model = setup.model;
    let dt = cfg.timestep;
    let s = plan.macro_weight;
    let (bath_damping, bath_noise) = bath_coefficients(&rates, dt, false);
    let w2 = cfg.trap_frequency.map(|w| w * w);
    let proposals = Poisson::new(WEIGHT_CAP * plan.events_per_step)
        .map_err(|e| Error::Config(format!("invalid event rate: {e}")))?;
    let static_dv = plan.events_per_step * s * setup.static_impulse / rates.mass;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut x = cfg.initial_position;
    let mut v = cfg.initial_velocity;
    let mut rec = Recorder::new(cfg, &rates);
    rec.record(0, 0.0, x, v);
    for step in 1..=cfg.steps() {
        let n: f64 = proposals.sample(&mut rng);
        let mut impulse = [0.0f64; 3];
        for _ in 0..n as u64 {
            let y = setup.spectrum.sample(&mut rng);
            let x0 = model.argument(y, 0.0);
            let energy = model.energy(y);
            let (incident, beta) = match setup.geometry {
                Geometry::Disk => {
                    let u = rng.random::<f64>().sqrt();
                    ([0.0, 0.0, u], v[2] * u / C)
                }
                Geometry::Sphere => {
                    let u = rng.random::<f64>();
                    let st = (1.0 - u * u).max(0.0).sqrt();
                    let (sp, cp) = (2.0 * PI * rng.random::<f64>()).sin_cos();
                    let d = [st * cp, st * sp, u];
                    (d, (v[0] * d[0] + v[1] * d[1] + v[2] * d[2]) / C)
                }
            };
            let x1 = if cfg.doppler { model.argument(y, s * beta) } else { x0 };
            let weight = event_occupation(x1) / event_occupation(x0);
            if weight > WEIGHT_CAP {
                return Err(Error::OutOfRegime(format!(
                    "Doppler weight {weight:.3} exceeds the proposal cap {WEIGHT_CAP} at t = {:e} s; raise sim.kicks_per_step",
                    step as f64 * dt
                )));
            }
            if rng.random::<f64>() * WEIGHT_CAP >= weight {
                continue;
            }
            let k = geometric_size(bunch_parameter(x1), &mut rng);
            let p = energy / C;
            match setup.geometry {
                Geometry::Disk => impulse[2] += k as f64 * 2.0 * p * incident[2],
                Geometry::Sphere => {
                    for _ in 0..k {
                        let out = unit_sphere(&mut rng);
                        for a in 0..3 {
                            impulse[a] += p * (incident[a] - out[a]);
                        }
                    }
                }
            }
        }
        for a in 0..3 {
            let xi: f64 = StandardNormal.sample(&mut rng);
            let mut dv = s * impulse[a] / rates.mass;
            if a == 2 {
                dv -= static_dv;
            }
            v[a] += dv + (-bath_damping[a] * v[a] - w2[a] * x[a]) * dt + bath_noise[a] * xi;
            x[a] += v[a] * dt;
        }
        rec.record(step, step as f64 * dt, x, v);
    }
    Ok(rec.traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{DielectricSphere, ReflectiveDisk};
    use crate::scenario::Scenario;
    use crate::sources::{BlackbodySource, LaserSource};

    fn bb_cfg() -> SimConfig {
        let mut c = SimConfig::new(Scenario::new(
            Source::Blackbody(BlackbodySource::new(5000.0).unwrap()),
            Target::Disk(ReflectiveDisk::from_dimensions(5e-6, 50e-9, 2000.0).unwrap()),
        ));
        c.flux_boost = 1e6;
        let g = SimRates::from_config(&c).unwrap().radiation_damping[2];
        c.timestep = 0.05 / g;
        c.duration = 5.0 / g;
        c
    }

    #[test]
    fn spectrum_sampling_matches_table_mean() {
        let m = ThermalModel { kt: 1.0, e0: 0.0, mu: 0.0, power: 2, y_max: 30.0 };
        let sp = Spectrum::new(&m);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 200_000;
        let mean: f64 = (0..n).map(|_| sp.sample(&mut rng)).sum::<f64>() / n as f64;
        let expected = sp.mean(|y| y);
        assert!((mean - expected).abs() < 0.02, "{mean} vs {expected}");
    }

    #[test]
    fn bunch_statistics_reproduce_bose_variance() {
        // compound Poisson variance/mean = E[K²]/E[K] = 1 + n
        for x in [0.3, 1.0, 4.0] {
            let n = 1.0 / f64::exp_m1(x);
            let p = bunch_parameter(x);
            let ek = 1.0 / p;
            let ek2 = (2.0 - p) / (p * p);
            assert!((ek2 / ek - (1.0 + n)).abs() < 1e-12);
            assert!((event_occupation(x) * ek - n).abs() < 1e-12 * n);
        }
    }

    #[test]
    fn geometric_sizes_have_expected_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = 0.25;
        let n = 100_000;
        let mean = (0..n).map(|_| geometric_size(p, &mut rng) as f64).sum::<f64>() / n as f64;
        assert!((mean - 4.0).abs() < 0.05);
        assert_eq!(geometric_size(1.0, &mut rng), 1);
    }

    #[test]
    fn plan_respects_guards() {
        let p = KickPlan::for_config(&bb_cfg()).unwrap();
        assert!(p.events_per_step >= 10.0);
        assert!(p.macro_weight >= 1.0);
        assert!(p.doppler_margin <= 0.05);
        let mut c = bb_cfg();
        c.kicks_per_step = Some(10.0);
        assert!(matches!(KickPlan::for_config(&c), Err(Error::Config(_))));
    }

    #[test]
    fn deterministic_and_pressure_compensated() {
        let c = bb_cfg();
        let a = simulate_photon_kicks(&c).unwrap();
        assert_eq!(a, simulate_photon_kicks(&c).unwrap());
        // undamped in-plane axes receive no kicks
        assert!(a.velocities.iter().all(|v| v[0] == 0.0 && v[1] == 0.0));
    }

    #[test]
    fn laser_unsupported() {
        let mut c = SimConfig::new(Scenario::new(
            Source::Laser(LaserSource::from_wavelength_power(588e-9, 1e-3).unwrap()),
            Target::Sphere(DielectricSphere::silica(1e-7).unwrap()),
        ));
        c.damping_override = Some([1.0; 3]);
        c.timestep = 0.01;
        assert!(matches!(simulate_photon_kicks(&c), Err(Error::UnsupportedPairing(_))));
    }
}
