//! Stochastic centre-of-mass dynamics: a Langevin integrator driven by the
//! closed-form rates, an event-based photon-kick Monte Carlo, and
//! ring-down and equipartition estimators.

mod estimate;
mod kicks;
mod langevin;
mod trajectory;

pub use estimate::{
    estimate_damping_ringdown, estimate_damping_ringdown_ensemble, estimate_temperature,
    estimate_temperature_ensemble, EstimateMethod, EstimateReport, Measurement,
};
pub use kicks::{simulate_photon_kicks, KickPlan};
pub use langevin::simulate_langevin;
pub use trajectory::{Trajectory, TrajectoryMetadata};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::constants::{HBAR, K_B};
use crate::error::{Error, Result};
use crate::geometry::gas_damping_rate;
use crate::rates::scenario_rates;
use crate::scenario::{Scenario, Source, Target};

/// Additional thermal bath acting on every axis (for example residual gas).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtraBath {
    pub damping_rate: f64,
    pub temperature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Langevin,
    PhotonKicks,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Langevin => "langevin",
            Engine::PhotonKicks => "photon-kicks",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "langevin" => Some(Engine::Langevin),
            "photon-kicks" | "kicks" => Some(Engine::PhotonKicks),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub scenario: Scenario,
    /// Harmonic trap frequency per axis, rad/s; 0 leaves the axis free.
    pub trap_frequency: [f64; 3],
    pub extra_bath: Option<ExtraBath>,
    /// Radiation damping per axis for pairings without a closed form
    /// (laser + sphere), rad/s before boosting.
    pub damping_override: Option<[f64; 3]>,
    pub duration: f64,
    pub timestep: f64,
    pub initial_position: [f64; 3],
    pub initial_velocity: [f64; 3],
    pub rng_seed: u64,
    /// Uniform photon-flux multiplier, ≥ 1.
    pub flux_boost: f64,
    pub record_stride: usize,
    /// Mean accepted photon events per step for the kick engine; `None`
    /// picks the smallest count that keeps the Doppler weights linear.
    pub kicks_per_step: Option<f64>,
    /// Velocity-dependent occupation in the kick engine.
    pub doppler: bool,
}

impl SimConfig {
    pub fn new(scenario: Scenario) -> Self {
        Self {
            scenario,
            trap_frequency: [0.0; 3],
            extra_bath: None,
            damping_override: None,
            duration: 1.0,
            timestep: 1e-3,
            initial_position: [0.0; 3],
            initial_velocity: [0.0; 3],
            rng_seed: 0,
            flux_boost: 1.0,
            record_stride: 1,
            kicks_per_step: None,
            doppler: true,
        }
    }

    /// Stable identity of the configuration (first 16 hex digits of SHA-256
    /// over its canonical debug form).
    pub fn config_hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.rng_seed = 0;
        let digest = Sha256::digest(format!("{canonical:?}").as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn steps(&self) -> usize {
        (self.duration / self.timestep).round() as usize
    }

    /// Checks parameter ranges and the step-size guard against the total damping.
    pub fn validate(&self, rates: &SimRates) -> Result<()> {
        let positive = |field: &str, v: f64| -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Config(format!("{field} must be finite and > 0 (got {v})")))
            }
        };
        positive("sim.duration", self.duration)?;
        positive("sim.timestep", self.timestep)?;
        if !(self.flux_boost.is_finite() && self.flux_boost >= 1.0) {
            return Err(Error::Config(format!("sim.flux_boost must be >= 1 (got {})", self.flux_boost)));
        }
        if self.record_stride == 0 {
            return Err(Error::Config("sim.record_stride must be >= 1".into()));
        }
        if self.timestep > self.duration {
            return Err(Error::Config("sim.timestep exceeds sim.duration".into()));
        }
        for (i, w) in self.trap_frequency.iter().enumerate() {
            if !(w.is_finite() && *w >= 0.0) {
                return Err(Error::Config(format!("sim.trap_frequency[{i}] must be >= 0 (got {w})")));
            }
        }
        let fastest = (0..3)
            .map(|i| self.trap_frequency[i].max(rates.total_damping(i)))
            .fold(0.0, f64::max);
        if fastest > 0.0 && self.timestep >= 2.0 * std::f64::consts::PI / (10.0 * fastest) {
            return Err(Error::Config(format!(
                "sim.timestep {:e} s is unstable: must be < 2π/(10·{:e} rad/s)",
                self.timestep, fastest
            )));
        }
        Ok(())
    }
}

/// Boosted radiation rates and baths seen by the integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimRates {
    pub mass: f64,
    /// Boosted radiation damping per axis, rad/s.
    pub radiation_damping: [f64; 3],
    /// Boosted radiation heating per axis, W.
    pub radiation_heating: [f64; 3],
    /// Temperature the radiation alone drives the motion to.
    pub radiation_temperature: f64,
    pub baths: [Option<ExtraBath>; 2],
}

impl SimRates {
    pub fn total_damping(&self, axis: usize) -> f64 {
        self.radiation_damping[axis] + self.baths.iter().flatten().map(|b| b.damping_rate).sum::<f64>()
    }

    /// Equilibrium temperature of one axis from all damping channels.
    pub fn equilibrium_temperature(&self, axis: usize) -> Option<f64> {
        let total = self.total_damping(axis);
        if total <= 0.0 {
            return None;
        }
        let heat = self.radiation_heating[axis]
            + self.baths.iter().flatten().map(|b| b.damping_rate * K_B * b.temperature).sum::<f64>();
        Some(heat / (K_B * total))
    }

    pub fn from_config(cfg: &SimConfig) -> Result<Self> {
        let s = &cfg.scenario;
        let b = cfg.flux_boost;
        let mass = s.target.mass();
        let (damping, heating, temperature) = match (&s.source, &s.target, cfg.damping_override) {
            (Source::Laser(laser), Target::Sphere(_), Some(g)) => {
                let t = HBAR * laser.angular_frequency / (4.0 * K_B);
                (g, g.map(|x| x * K_B * t), t)
            }
            (Source::Laser(_), Target::Sphere(_), None) => {
                return Err(Error::Config(
                    "laser + sphere needs sim.damping_override: only its temperature has a closed form".into(),
                ))
            }
            (_, _, Some(_)) => {
                return Err(Error::Config("sim.damping_override is only accepted for laser + sphere".into()))
            }
            _ => {
                let r = scenario_rates(s)?;
                (r.damping_rate, r.heating_rate, r.equilibrium_temperature)
            }
        };
        let gas = match (&s.gas, &s.target) {
            (Some(gas), Target::Sphere(sphere)) => Some(ExtraBath {
                damping_rate: gas_damping_rate(gas, sphere),
                temperature: gas.temperature,
            }),
            _ => None,
        };
        Ok(Self {
            mass,
            radiation_damping: damping.map(|g| g * b),
            radiation_heating: heating.map(|h| h * b),
            radiation_temperature: temperature,
            baths: [gas, cfg.extra_bath],
        })
    }
}

/// Seed of ensemble member `index`, independent of evaluation order.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(index.to_le_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("digest is 32 bytes"))
}

pub fn simulate(cfg: &SimConfig, engine: Engine) -> Result<Trajectory> {
    match engine {
        Engine::Langevin => simulate_langevin(cfg),
        Engine::PhotonKicks => simulate_photon_kicks(cfg),
    }
}

/// Runs `members` independent copies of `cfg` with derived seeds; the
/// output order matches member index.
pub fn simulate_ensemble(cfg: &SimConfig, engine: Engine, members: usize) -> Result<Vec<Trajectory>> {
    (0..members)
        .into_par_iter()
        .map(|i| {
            let mut c = cfg.clone();
            c.rng_seed = derive_seed(cfg.rng_seed, i as u64);
            simulate(&c, engine)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ReflectiveDisk;
    use crate::sources::BlackbodySource;

    fn cfg() -> SimConfig {
        let scenario = Scenario::new(
            Source::Blackbody(BlackbodySource::new(5000.0).unwrap()),
            Target::Disk(ReflectiveDisk::from_dimensions(5e-6, 50e-9, 2000.0).unwrap()),
        );
        SimConfig::new(scenario)
    }

    #[test]
    fn hash_ignores_seed_but_not_physics() {
        let a = cfg();
        let mut b = a.clone();
        b.rng_seed = 99;
        assert_eq!(a.config_hash(), b.config_hash());
        b.flux_boost = 2.0;
        assert_ne!(a.config_hash(), b.config_hash());
        assert_eq!(a.config_hash().len(), 16);
    }

    #[test]
    fn derived_seeds_distinct() {
        let s: std::collections::HashSet<u64> = (0..100).map(|i| derive_seed(7, i)).collect();
        assert_eq!(s.len(), 100);
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn timestep_guard() {
        let mut c = cfg();
        c.flux_boost = 1e7;
        let r = SimRates::from_config(&c).unwrap();
        c.duration = 10.0;
        c.timestep = 2.0 * std::f64::consts::PI / (10.0 * r.radiation_damping[2]);
        assert!(matches!(c.validate(&r), Err(Error::Config(_))));
        c.timestep *= 0.5;
        assert!(c.validate(&r).is_ok());
        c.flux_boost = 0.5;
        assert!(c.validate(&r).is_err());
    }

    #[test]
    fn boosted_rates_keep_temperature() {
        let mut c = cfg();
        let r1 = SimRates::from_config(&c).unwrap();
        c.flux_boost = 1e6;
        let r2 = SimRates::from_config(&c).unwrap();
        assert!((r2.radiation_damping[2] / r1.radiation_damping[2] - 1e6).abs() < 1e-6);
        let t = r2.equilibrium_temperature(2).unwrap();
        assert!((t / 5000.0 - 1.0).abs() < 1e-12);
        assert!(r2.equilibrium_temperature(0).is_none());
    }
}
