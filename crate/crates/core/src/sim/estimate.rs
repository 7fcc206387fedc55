//! Ring-down and equipartition estimators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::trajectory::Trajectory;
use crate::constants::K_B;
use crate::error::{Error, Result};

const BOOTSTRAP_RESAMPLES: usize = 400;
/// Fit window: samples whose excess energy is above this fraction of the initial excess.
const RINGDOWN_FLOOR: f64 = 0.1;
/// Fraction of the trajectory averaged for the equilibrium energy.
const TAIL_FRACTION: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMethod {
    RingDown,
    Equipartition,
}

impl EstimateMethod {
    pub fn name(self) -> &'static str {
        match self {
            EstimateMethod::RingDown => "ring-down",
            EstimateMethod::Equipartition => "equipartition",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub value: f64,
    pub standard_error: f64,
}

impl Measurement {
    /// |value − reference| in units of the standard error.
    pub fn z_score(&self, reference: f64) -> f64 {
        (self.value - reference).abs() / self.standard_error
    }
}

/// Per-axis results; axes without damping are left empty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateReport {
    pub method: EstimateMethod,
    pub damping_rate: [Option<Measurement>; 3],
    pub temperature: [Option<Measurement>; 3],
}

fn check_grid(trajs: &[Trajectory]) -> Result<()> {
    let first = trajs
        .first()
        .ok_or_else(|| Error::InsufficientData("empty ensemble".into()))?;
    if first.len() < 3 {
        return Err(Error::InsufficientData(format!("{} samples recorded", first.len())));
    }
    if trajs.iter().any(|t| t.times != first.times) {
        return Err(Error::Config("ensemble members are on different time grids".into()));
    }
    Ok(())
}

/// Least-squares line through (t, y): slope and its standard error.
fn fit_line(t: &[f64], y: &[f64]) -> (f64, f64) {
    let n = t.len() as f64;
    let mt = t.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let stt: f64 = t.iter().map(|a| (a - mt).powi(2)).sum();
    let sty: f64 = t.iter().zip(y).map(|(a, b)| (a - mt) * (b - my)).sum();
    let slope = sty / stt;
    let rss: f64 = t.iter().zip(y).map(|(a, b)| (b - my - slope * (a - mt)).powi(2)).sum();
    let se = if n > 2.0 { (rss / (n - 2.0) / stt).sqrt() } else { 0.0 };
    (slope, se)
}

/// Decay rate of the excess energy above its tail average.
fn ringdown_rate(times: &[f64], energy: &[f64], free_axis: bool) -> Result<(f64, f64)> {
    let n = energy.len();
    let tail_start = ((1.0 - TAIL_FRACTION) * n as f64) as usize;
    let eq = energy[tail_start..].iter().sum::<f64>() / (n - tail_start) as f64;
    let a0 = energy[0] - eq;
    if !(a0 > 0.0 && a0 > eq.abs()) {
        return Err(Error::FitFailure(format!(
            "initial excess energy {a0:e} J does not exceed the equilibrium level {eq:e} J"
        )));
    }
    let mut t = Vec::new();
    let mut y = Vec::new();
    for i in 0..tail_start {
        let excess = energy[i] - eq;
        if excess <= RINGDOWN_FLOOR * a0 {
            break;
        }
        t.push(times[i]);
        y.push(excess.ln());
    }
    if t.len() < 5 {
        return Err(Error::FitFailure(format!("only {} samples in the decay window", t.len())));
    }
    let (slope, se) = fit_line(&t, &y);
    if !(slope < 0.0) || !slope.is_finite() {
        return Err(Error::FitFailure(format!("energy does not decay (slope {slope:e})")));
    }
    let k = if free_axis { 2.0 } else { 1.0 };
    Ok((-slope / k, se / k))
}

fn mean_energy(trajs: &[&Trajectory], axis: usize) -> Vec<f64> {
    let n = trajs[0].len();
    let mut acc = vec![0.0; n];
    for t in trajs {
        for (a, e) in acc.iter_mut().zip(t.axis_energy(axis)) {
            *a += e;
        }
    }
    let m = trajs.len() as f64;
    acc.iter().map(|a| a / m).collect()
}

/// Ring-down fit of a single trajectory; standard errors come from the
/// least-squares residuals.
pub fn estimate_damping_ringdown(traj: &Trajectory) -> Result<EstimateReport> {
    estimate_damping_ringdown_ensemble(std::slice::from_ref(traj))
}

/// Ring-down fit of the ensemble-mean energy. With two or more members the
/// standard error is a leave-one-out jackknife over members.
pub fn estimate_damping_ringdown_ensemble(trajs: &[Trajectory]) -> Result<EstimateReport> {
    check_grid(trajs)?;
    let md = trajs[0].metadata;
    let times = &trajs[0].times;
    let all: Vec<&Trajectory> = trajs.iter().collect();
    let mut damping = [None; 3];
    let mut fitted_any = false;
    for axis in 0..3 {
        if md.damping_rate[axis] <= 0.0 {
            continue;
        }
        let free = md.trap_frequency[axis] == 0.0;
        let (rate, lsq_se) = ringdown_rate(times, &mean_energy(&all, axis), free)?;
        let m = trajs.len();
        let se = if m >= 2 {
            let mut reps = Vec::with_capacity(m);
            for skip in 0..m {
                let subset: Vec<&Trajectory> = all.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, t)| *t).collect();
                reps.push(ringdown_rate(times, &mean_energy(&subset, axis), free)?.0);
            }
            let mean = reps.iter().sum::<f64>() / m as f64;
            let var = reps.iter().map(|r| (r - mean).powi(2)).sum::<f64>() * (m - 1) as f64 / m as f64;
            var.sqrt()
        } else {
            lsq_se
        };
        damping[axis] = Some(Measurement { value: rate, standard_error: se });
        fitted_any = true;
    }
    if !fitted_any {
        return Err(Error::FitFailure("no damped axis to fit".into()));
    }
    Ok(EstimateReport {
        method: EstimateMethod::RingDown,
        damping_rate: damping,
        temperature: [None; 3],
    })
}

/// Equipartition temperature M⟨v²⟩/k_B per damped axis after discarding a
/// burn-in fraction. The standard error is a block bootstrap with blocks of
/// at least 10/Γ, seeded from the trajectory seed.
pub fn estimate_temperature(traj: &Trajectory, discard_fraction: f64) -> Result<EstimateReport> {
    if !(0.0..1.0).contains(&discard_fraction) {
        return Err(Error::domain("discard_fraction", discard_fraction, "must be in [0, 1)"));
    }
    let n = traj.len();
    let start = (discard_fraction * n as f64).ceil() as usize;
    let retained = n.saturating_sub(start);
    let dt = traj
        .sample_interval()
        .ok_or_else(|| Error::InsufficientData(format!("{n} samples recorded")))?;
    let md = traj.metadata;
    let mut temperature = [None; 3];
    let mut any = false;
    for axis in 0..3 {
        let gamma = md.damping_rate[axis];
        if gamma <= 0.0 {
            continue;
        }
        let span = retained as f64 * dt;
        if span < 100.0 / gamma {
            return Err(Error::InsufficientData(format!(
                "axis {axis}: retained span {span:e} s is shorter than 100/Γ = {:e} s",
                100.0 / gamma
            )));
        }
        let scale = md.mass / K_B;
        let samples: Vec<f64> = traj.velocities[start..].iter().map(|v| scale * v[axis] * v[axis]).collect();
        let block = ((10.0 / (gamma * dt)).ceil() as usize).max(1);
        let blocks: Vec<f64> = samples
            .chunks_exact(block)
            .map(|c| c.iter().sum::<f64>() / block as f64)
            .collect();
        let value = samples.iter().sum::<f64>() / samples.len() as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(traj.seed);
        rng.set_stream(axis as u64);
        let nb = blocks.len();
        let mut reps = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
        for _ in 0..BOOTSTRAP_RESAMPLES {
            let s: f64 = (0..nb).map(|_| blocks[rng.random_range(0..nb)]).sum();
            reps.push(s / nb as f64);
        }
        let mean = reps.iter().sum::<f64>() / reps.len() as f64;
        let var = reps.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (reps.len() - 1) as f64;
        temperature[axis] = Some(Measurement { value, standard_error: var.sqrt() });
        any = true;
    }
    if !any {
        return Err(Error::InsufficientData("no damped axis".into()));
    }
    Ok(EstimateReport {
        method: EstimateMethod::Equipartition,
        damping_rate: [None; 3],
        temperature,
    })
}

/// Mean of per-member temperatures, standard errors combined in quadrature.
pub fn estimate_temperature_ensemble(trajs: &[Trajectory], discard_fraction: f64) -> Result<EstimateReport> {
    if trajs.is_empty() {
        return Err(Error::InsufficientData("empty ensemble".into()));
    }
    let reports = trajs
        .iter()
        .map(|t| estimate_temperature(t, discard_fraction))
        .collect::<Result<Vec<_>>>()?;
    let m = reports.len() as f64;
    let mut temperature = [None; 3];
    for (axis, slot) in temperature.iter_mut().enumerate() {
        let vals: Vec<Measurement> = reports.iter().filter_map(|r| r.temperature[axis]).collect();
        if vals.len() == reports.len() {
            let value = vals.iter().map(|v| v.value).sum::<f64>() / m;
            let se = vals.iter().map(|v| v.standard_error.powi(2)).sum::<f64>().sqrt() / m;
            *slot = Some(Measurement { value, standard_error: se });
        }
    }
    Ok(EstimateReport {
        method: EstimateMethod::Equipartition,
        damping_rate: [None; 3],
        temperature,
    })
}
