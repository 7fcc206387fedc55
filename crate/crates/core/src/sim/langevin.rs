//! Symplectic Euler–Maruyama integration of
//! dv = (−Γv − ω²x) dt + √(2ΔĖ/M) dW per axis.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::trajectory::{Trajectory, TrajectoryMetadata};
use super::{SimConfig, SimRates};
use crate::constants::K_B;
use crate::error::Result;

pub(super) struct Recorder {
    stride: usize,
    pub traj: Trajectory,
}

impl Recorder {
    pub fn new(cfg: &SimConfig, rates: &SimRates) -> Self {
        let capacity = cfg.steps() / cfg.record_stride + 1;
        Self {
            stride: cfg.record_stride,
            traj: Trajectory {
                times: Vec::with_capacity(capacity),
                positions: Vec::with_capacity(capacity),
                velocities: Vec::with_capacity(capacity),
                seed: cfg.rng_seed,
                config_hash: cfg.config_hash(),
                metadata: TrajectoryMetadata {
                    mass: rates.mass,
                    trap_frequency: cfg.trap_frequency,
                    damping_rate: [0, 1, 2].map(|i| rates.total_damping(i)),
                },
            },
        }
    }

    pub fn record(&mut self, step: usize, t: f64, x: [f64; 3], v: [f64; 3]) {
        if step % self.stride == 0 {
            self.traj.times.push(t);
            self.traj.positions.push(x);
            self.traj.velocities.push(v);
        }
    }
}

/// Per-axis drift coefficient and noise standard deviation per step for
/// every bath, radiation included when `with_radiation` is set.
pub(super) fn bath_coefficients(rates: &SimRates, dt: f64, with_radiation: bool) -> ([f64; 3], [f64; 3]) {
    let mut damping = [0.0; 3];
    let mut noise_var = [0.0; 3];
    for a in 0..3 {
        if with_radiation {
            damping[a] += rates.radiation_damping[a];
            noise_var[a] += 2.0 * rates.radiation_heating[a] * dt / rates.mass;
        }
        for b in rates.baths.iter().flatten() {
            damping[a] += b.damping_rate;
            noise_var[a] += 2.0 * b.damping_rate * K_B * b.temperature * dt / rates.mass;
        }
    }
    (damping, noise_var.map(f64::sqrt))
}

pub fn simulate_langevin(cfg: &SimConfig) -> Result<Trajectory> {
    let rates = SimRates::from_config(cfg)?;
    cfg.validate(&rates)?;
    let dt = cfg.timestep;
    let (damping, noise) = bath_coefficients(&rates, dt, true);
    let w2 = cfg.trap_frequency.map(|w| w * w);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut x = cfg.initial_position;
    let mut v = cfg.initial_velocity;
    let mut rec = Recorder::new(cfg, &rates);
    let steps = cfg.steps();
    rec.record(0, 0.0, x, v);
    for step in 1..=steps {
        for a in 0..3 {
            let xi: f64 = StandardNormal.sample(&mut rng);
            v[a] += (-damping[a] * v[a] - w2[a] * x[a]) * dt + noise[a] * xi;
            x[a] += v[a] * dt;
        }
        rec.record(step, step as f64 * dt, x, v);
    }
    Ok(rec.traj)
}
