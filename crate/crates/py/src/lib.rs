//! Python bindings: sources, targets, closed-form rates, exact integrals and
//! the trajectory simulators.

use std::collections::HashMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use radtherm_core::geometry::{self as geo, GasEnvironment};
use radtherm_core::oracle::{self, QuadratureSpec};
use radtherm_core::rates::{self as closed, RateReport};
use radtherm_core::scenario::{self, Scenario};
use radtherm_core::sim::{self, SimConfig, SimRates};
use radtherm_core::sources::{self as src, CavityParams, ChemicalPotential, Convention, DEFAULT_REFRACTIVE_INDEX};

fn py_err(e: radtherm_core::Error) -> PyErr {
    use radtherm_core::Error as E;
    match e {
        E::Domain { .. } | E::Config(_) | E::Pole(_) | E::UnsupportedPairing(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Thermal or coherent light source.
#[pyclass(frozen, module = "radtherm")]
pub struct Source(scenario::Source);

#[pymethods]
impl Source {
    #[staticmethod]
    fn blackbody(temperature: f64) -> PyResult<Self> {
        Ok(Self(scenario::Source::Blackbody(src::BlackbodySource::new(temperature).map_err(py_err)?)))
    }

    /// 2D dye microcavity. Give exactly one of `mu_ratio` (μ/ħω_c) or `mu_ev`.
    #[staticmethod]
    #[pyo3(signature = (
        temperature, mirror_separation, mirror_curvature, mirror_transmission, longitudinal_mode = 7,
        mu_ratio = None, mu_ev = None, refractive_index = DEFAULT_REFRACTIVE_INDEX,
        cutoff_wavelength = None, convention = "supp"
    ))]
    #[allow(clippy::too_many_arguments)]
    fn microcavity(
        temperature: f64,
        mirror_separation: f64,
        mirror_curvature: f64,
        mirror_transmission: f64,
        longitudinal_mode: u32,
        mu_ratio: Option<f64>,
        mu_ev: Option<f64>,
        refractive_index: f64,
        cutoff_wavelength: Option<f64>,
        convention: &str,
    ) -> PyResult<Self> {
        let chemical_potential = match (mu_ratio, mu_ev) {
            (Some(r), None) => ChemicalPotential::CutoffRatio(r),
            (None, Some(e)) => ChemicalPotential::ElectronVolts(e),
            _ => return Err(PyValueError::new_err("give exactly one of mu_ratio, mu_ev")),
        };
        let convention = Convention::parse(convention)
            .ok_or_else(|| PyValueError::new_err(format!("convention must be main or supp (got {convention})")))?;
        let cav = src::Microcavity2D::new(CavityParams {
            temperature,
            chemical_potential,
            longitudinal_mode,
            mirror_separation,
            mirror_curvature,
            refractive_index,
            mirror_transmission,
            cutoff_wavelength,
            convention,
        })
        .map_err(py_err)?;
        Ok(Self(scenario::Source::Microcavity(cav)))
    }

    #[staticmethod]
    fn laser(wavelength: f64, power: f64) -> PyResult<Self> {
        Ok(Self(scenario::Source::Laser(src::LaserSource::from_wavelength_power(wavelength, power).map_err(py_err)?)))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind()
    }

    #[getter]
    fn temperature(&self) -> Option<f64> {
        self.0.temperature()
    }

    /// Unamplified output power of a microcavity, W.
    fn output_power(&self) -> PyResult<f64> {
        match &self.0 {
            scenario::Source::Microcavity(c) => Ok(c.output_power()),
            scenario::Source::Laser(l) => Ok(l.power()),
            scenario::Source::Blackbody(_) => Err(PyValueError::new_err("a blackbody has no finite beam power")),
        }
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

/// Perfectly reflecting disk or dielectric sphere.
#[pyclass(frozen, module = "radtherm")]
pub struct Target(scenario::Target);

#[pymethods]
impl Target {
    #[staticmethod]
    #[pyo3(signature = (radius, thickness, density = 2000.0))]
    fn disk(radius: f64, thickness: f64, density: f64) -> PyResult<Self> {
        Ok(Self(scenario::Target::Disk(geo::ReflectiveDisk::from_dimensions(radius, thickness, density).map_err(py_err)?)))
    }

    #[staticmethod]
    #[pyo3(signature = (radius, density = 2000.0, relative_permittivity = 2.1))]
    fn sphere(radius: f64, density: f64, relative_permittivity: f64) -> PyResult<Self> {
        Ok(Self(scenario::Target::Sphere(
            geo::DielectricSphere::from_dimensions(radius, density, relative_permittivity).map_err(py_err)?,
        )))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind()
    }

    #[getter]
    fn mass(&self) -> f64 {
        self.0.mass()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

fn build_scenario(
    source: &Source,
    target: &Target,
    gain_db: f64,
    spot_radius: Option<f64>,
) -> PyResult<Scenario> {
    let mut s = Scenario::new(source.0, target.0).with_amplifier(src::Amplifier::from_db(gain_db).map_err(py_err)?);
    if let Some(w) = spot_radius {
        s = s.with_optics(geo::FocusingOptics::new(w).map_err(py_err)?);
    }
    Ok(s)
}

fn report_dict<'py>(py: Python<'py>, r: &RateReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("pairing", &r.pairing)?;
    d.set_item("force", r.radiation_pressure_force)?;
    d.set_item("damping_rate", r.damping_rate.to_vec())?;
    d.set_item("heating_rate", r.heating_rate.to_vec())?;
    d.set_item("equilibrium_temperature", r.equilibrium_temperature)?;
    d.set_item("damping_time_2pi", r.damping_time_2pi)?;
    d.set_item("relaxation_time", r.relaxation_time)?;
    d.set_item("warnings", r.warnings.clone())?;
    Ok(d)
}

/// Closed-form force (N), per-axis damping (rad/s) and heating (W) and the
/// equilibrium temperature (K).
#[pyfunction]
#[pyo3(signature = (source, target, gain_db = 0.0, spot_radius = None))]
fn rates<'py>(
    py: Python<'py>,
    source: &Source,
    target: &Target,
    gain_db: f64,
    spot_radius: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let s = build_scenario(source, target, gain_db, spot_radius)?;
    report_dict(py, &closed::scenario_rates(&s).map_err(py_err)?)
}

/// Residual-gas damping rate of a sphere, rad/s.
#[pyfunction]
#[pyo3(signature = (target, pressure, temperature = 300.0))]
fn gas_damping_rate(target: &Target, pressure: f64, temperature: f64) -> PyResult<f64> {
    match &target.0 {
        scenario::Target::Sphere(s) => Ok(geo::gas_damping_rate(&GasEnvironment::air(pressure, temperature).map_err(py_err)?, s)),
        scenario::Target::Disk(_) => Err(PyValueError::new_err("gas damping is modelled for spheres only")),
    }
}

/// Laser-illuminated sphere temperature ħω/4k_B, K.
#[pyfunction]
fn laser_sphere_temperature(source: &Source) -> PyResult<f64> {
    match &source.0 {
        scenario::Source::Laser(l) => Ok(closed::laser_sphere_equilibrium_temperature(l)),
        _ => Err(PyValueError::new_err("needs a laser source")),
    }
}

/// Exact integrals for the z force, damping and heating as
/// `{name: (value, standard_error)}`; the sphere uses Monte Carlo.
#[pyfunction]
#[pyo3(signature = (source, target, gain_db = 0.0, spot_radius = None, mc_samples = 100_000))]
fn exact(
    source: &Source,
    target: &Target,
    gain_db: f64,
    spot_radius: Option<f64>,
    mc_samples: usize,
) -> PyResult<HashMap<&'static str, (f64, f64)>> {
    let spec = QuadratureSpec::default().with_mc_samples(mc_samples);
    let amp = src::Amplifier::from_db(gain_db).map_err(py_err)?;
    let mut out = HashMap::new();
    let est = |e: oracle::Estimate| (e.value, e.error);
    match (&source.0, &target.0) {
        (scenario::Source::Blackbody(b), scenario::Target::Disk(d)) => {
            out.insert("force_z", est(oracle::bb_force_exact(d, b, 0.0, &spec).map_err(py_err)?));
            out.insert("damping_rate_z", est(oracle::bb_damping_exact(d, b, &spec).map_err(py_err)?));
            out.insert("heating_rate_z", est(oracle::bb_heating_exact(d, b, &spec).map_err(py_err)?));
        }
        (scenario::Source::Microcavity(c), scenario::Target::Disk(d)) => {
            out.insert("force_z", est(oracle::cavity_force_exact(d, c, &amp, 0.0, &spec).map_err(py_err)?));
            out.insert("damping_rate_z", est(oracle::cavity_damping_exact(d, c, &amp, &spec).map_err(py_err)?));
            out.insert("heating_rate_z", est(oracle::cavity_heating_exact(d, c, &amp, &spec).map_err(py_err)?));
        }
        (scenario::Source::Microcavity(c), scenario::Target::Sphere(s)) => {
            let w = spot_radius.ok_or_else(|| PyValueError::new_err("sphere needs spot_radius"))?;
            let optics = geo::FocusingOptics::new(w).map_err(py_err)?;
            let f = oracle::sphere_force_exact(s, c, &amp, &optics, [0.0; 3], &spec).map_err(py_err)?;
            let g = oracle::sphere_damping_exact(s, c, &amp, &optics, &spec).map_err(py_err)?;
            let h = oracle::sphere_heating_exact(s, c, &amp, &optics, &spec).map_err(py_err)?;
            out.insert("force_z", (f.value[2], f.standard_error[2]));
            out.insert("damping_rate_z", (g.value[2], g.standard_error[2]));
            out.insert("heating_rate_z", (h.value[2], h.standard_error[2]));
        }
        (s, t) => {
            return Err(PyValueError::new_err(format!("no exact integral for {}+{}", s.kind(), t.kind())));
        }
    }
    Ok(out)
}

/// Recorded positions and velocities of one run.
#[pyclass(frozen, module = "radtherm")]
pub struct Trajectory(sim::Trajectory);

#[pymethods]
impl Trajectory {
    #[getter]
    fn times(&self) -> Vec<f64> {
        self.0.times.clone()
    }

    #[getter]
    fn positions(&self) -> Vec<[f64; 3]> {
        self.0.positions.clone()
    }

    #[getter]
    fn velocities(&self) -> Vec<[f64; 3]> {
        self.0.velocities.clone()
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.0.seed
    }

    #[getter]
    fn config_hash(&self) -> String {
        self.0.config_hash.clone()
    }

    fn axis_energy(&self, axis: usize) -> PyResult<Vec<f64>> {
        if axis > 2 {
            return Err(PyValueError::new_err("axis must be 0, 1 or 2"));
        }
        Ok(self.0.axis_energy(axis))
    }

    /// Equipartition temperature per axis as `(value, standard_error)`; None on undamped axes.
    #[pyo3(signature = (discard_fraction = 0.1))]
    fn temperature(&self, discard_fraction: f64) -> PyResult<Vec<Option<(f64, f64)>>> {
        let r = sim::estimate_temperature(&self.0, discard_fraction).map_err(py_err)?;
        Ok(r.temperature.iter().map(|m| m.map(|m| (m.value, m.standard_error))).collect())
    }

    fn to_csv(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        self.0.write_csv(&mut buf, env!("CARGO_PKG_VERSION")).map_err(py_err)?;
        String::from_utf8(buf).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Runs one trajectory. Times are in seconds; `flux_boost` scales the photon flux.
#[pyfunction]
#[pyo3(signature = (
    source, target, duration, timestep, gain_db = 0.0, spot_radius = None, engine = "langevin",
    flux_boost = 1.0, seed = 0, trap_frequency = [0.0; 3], initial_velocity = [0.0; 3], record_stride = 1
))]
#[allow(clippy::too_many_arguments)]
fn simulate(
    py: Python<'_>,
    source: &Source,
    target: &Target,
    duration: f64,
    timestep: f64,
    gain_db: f64,
    spot_radius: Option<f64>,
    engine: &str,
    flux_boost: f64,
    seed: u64,
    trap_frequency: [f64; 3],
    initial_velocity: [f64; 3],
    record_stride: usize,
) -> PyResult<Trajectory> {
    let engine = sim::Engine::parse(engine)
        .ok_or_else(|| PyValueError::new_err(format!("engine must be langevin or photon-kicks (got {engine})")))?;
    let mut cfg = SimConfig::new(build_scenario(source, target, gain_db, spot_radius)?);
    cfg.duration = duration;
    cfg.timestep = timestep;
    cfg.flux_boost = flux_boost;
    cfg.rng_seed = seed;
    cfg.trap_frequency = trap_frequency;
    cfg.initial_velocity = initial_velocity;
    cfg.record_stride = record_stride;
    cfg.validate(&SimRates::from_config(&cfg).map_err(py_err)?).map_err(py_err)?;
    let t = py.detach(|| sim::simulate(&cfg, engine)).map_err(py_err)?;
    Ok(Trajectory(t))
}

#[pymodule]
pub fn radtherm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Source>()?;
    m.add_class::<Target>()?;
    m.add_class::<Trajectory>()?;
    m.add_function(wrap_pyfunction!(rates, m)?)?;
    m.add_function(wrap_pyfunction!(gas_damping_rate, m)?)?;
    m.add_function(wrap_pyfunction!(laser_sphere_temperature, m)?)?;
    m.add_function(wrap_pyfunction!(exact, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
