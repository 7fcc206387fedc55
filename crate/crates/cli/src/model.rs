//! Typed run descriptions built from a configuration [`Document`].

use std::path::PathBuf;

use radtherm_core::constants::K_B;
use radtherm_core::geometry::{
    DielectricSphere, FocusingOptics, GasEnvironment, ReflectiveDisk, AIR_MOLECULAR_MASS, AIR_VISCOSITY,
    SILICA_DENSITY, SILICA_PERMITTIVITY,
};
use radtherm_core::scenario::{Scenario, Source, Target};
use radtherm_core::sim::{Engine, EstimateMethod, ExtraBath, SimConfig, SimRates};
use radtherm_core::sources::{
    Amplifier, BlackbodySource, CavityParams, ChemicalPotential, Convention, LaserSource, Microcavity2D,
    DEFAULT_REFRACTIVE_INDEX,
};
use sha2::{Digest, Sha256};

use crate::config::{Dim, Document, Section};
use crate::CliError;

pub const SECTIONS: &[&str] = &[
    "source", "target", "amplifier", "optics", "gas", "comparison", "sweep", "sim", "validate", "output",
];

/// Command-line settings that take precedence over the file.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub convention: Option<Convention>,
    pub seed: Option<u64>,
}

/// Source parameters kept unbuilt so sweeps can vary them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceTemplate {
    Blackbody { temperature: f64 },
    Microcavity(CavityParams),
    Laser(LaserSource),
}

impl SourceTemplate {
    pub fn build(&self) -> Result<Source, CliError> {
        let at = CliError::in_section("source");
        Ok(match *self {
            SourceTemplate::Blackbody { temperature } => Source::Blackbody(BlackbodySource::new(temperature).map_err(at)?),
            SourceTemplate::Microcavity(p) => Source::Microcavity(Microcavity2D::new(p).map_err(at)?),
            SourceTemplate::Laser(l) => Source::Laser(l),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    BlackbodyTemperature,
    ChemicalPotentialRatio,
    CavityTemperature,
}

impl SweepParameter {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "blackbody_temperature" => Some(Self::BlackbodyTemperature),
            "chemical_potential_ratio" => Some(Self::ChemicalPotentialRatio),
            "cavity_temperature" => Some(Self::CavityTemperature),
            _ => None,
        }
    }

    /// CSV column of the swept value, unit suffixed.
    pub fn column(self) -> &'static str {
        match self {
            Self::BlackbodyTemperature => "blackbody_temperature_K",
            Self::ChemicalPotentialRatio => "chemical_potential_ratio",
            Self::CavityTemperature => "cavity_temperature_K",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log: bool,
    /// Output column stems; empty selects every available column.
    pub columns: Vec<String>,
    /// Chemical-potential ratios drawn as separate series on a temperature sweep.
    pub series: Vec<f64>,
}

impl SweepSpec {
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == n - 1 {
                    return self.max;
                }
                let f = i as f64 / (n - 1) as f64;
                if self.log {
                    (self.min.ln() + f * (self.max.ln() - self.min.ln())).exp()
                } else {
                    self.min + f * (self.max - self.min)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeSpec {
    Seconds(f64),
    /// Multiples of 1/Γ for the fastest boosted damping channel.
    DampingTimes(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VelocitySpec {
    MetersPerSecond([f64; 3]),
    /// Multiples of √(k_B T_eq/M).
    Thermal([f64; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorChoice {
    Auto,
    Fixed(EstimateMethod),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimSpec {
    pub engine: Engine,
    pub flux_boost: f64,
    pub duration: TimeSpec,
    pub timestep: TimeSpec,
    pub trap_frequency: [f64; 3],
    pub initial_position: [f64; 3],
    pub initial_velocity: VelocitySpec,
    pub seed: u64,
    pub record_stride: usize,
    pub members: usize,
    pub kicks_per_step: Option<f64>,
    pub doppler: bool,
    pub damping_override: Option<[f64; 3]>,
    pub extra_bath: Option<ExtraBath>,
    pub discard_fraction: f64,
    pub estimator: EstimatorChoice,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateSpec {
    pub tolerance: f64,
    pub planck_tolerance: f64,
    pub power_tolerance: f64,
    pub mc_samples: usize,
}

impl Default for ValidateSpec {
    fn default() -> Self {
        Self { tolerance: 0.10, planck_tolerance: 1e-10, power_tolerance: 1e-6, mc_samples: 100_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Csv,
    #[default]
    Table,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: Option<SourceTemplate>,
    pub target: Option<Target>,
    pub amplifier: Amplifier,
    pub optics: Option<FocusingOptics>,
    pub gas: Option<GasEnvironment>,
    /// Blackbody-illuminated reference disk reported next to the main target.
    pub comparison: Option<ReflectiveDisk>,
    pub sweep: Option<SweepSpec>,
    pub sim: Option<SimSpec>,
    pub validate: ValidateSpec,
    pub output: OutputSpec,
    pub convention_set: bool,
    pub hash: String,
}

impl RunConfig {
    pub fn from_text(text: &str, ov: Overrides) -> Result<Self, CliError> {
        let mut doc = Document::parse(text)?;
        let hash = config_hash(&doc, ov);
        let mut convention_set = ov.convention.is_some();
        let source = match doc.section("source") {
            Some(s) => Some(source_template(s, ov, &mut convention_set)?),
            None => None,
        };
        let target = doc.section("target").map(target).transpose()?;
        let amplifier = match doc.section("amplifier") {
            Some(s) => amplifier(s)?,
            None => Amplifier::unity(),
        };
        let optics = match doc.section("optics") {
            Some(s) => Some(FocusingOptics::new(s.require_si("spot_radius", Dim::Length)?).map_err(CliError::in_section("optics"))?),
            None => None,
        };
        let gas = doc.section("gas").map(gas).transpose()?;
        let comparison = doc.section("comparison").map(comparison).transpose()?;
        let sweep = doc.section("sweep").map(sweep).transpose()?;
        let sim = doc.section("sim").map(|s| sim(s, ov)).transpose()?;
        let validate = match doc.section("validate") {
            Some(s) => validate(s)?,
            None => ValidateSpec::default(),
        };
        let output = match doc.section("output") {
            Some(s) => output(s)?,
            None => OutputSpec::default(),
        };
        doc.finish(SECTIONS)?;
        Ok(Self {
            source,
            target,
            amplifier,
            optics,
            gas,
            comparison,
            sweep,
            sim,
            validate,
            output,
            convention_set,
            hash,
        })
    }

    pub fn load(path: &std::path::Path, ov: Overrides) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_text(&text, ov)
    }

    pub fn require_source(&self) -> Result<SourceTemplate, CliError> {
        self.source.ok_or_else(|| CliError::config("missing [source] section"))
    }

    pub fn scenario_with(&self, source: Source) -> Result<Scenario, CliError> {
        let target = self.target.ok_or_else(|| CliError::config("missing [target] section"))?;
        let mut s = Scenario::new(source, target).with_amplifier(self.amplifier);
        if let Some(o) = self.optics {
            s = s.with_optics(o);
        }
        if let Some(g) = self.gas {
            s = s.with_gas(g);
        }
        Ok(s)
    }

    pub fn scenario(&self) -> Result<Scenario, CliError> {
        self.scenario_with(self.require_source()?.build()?)
    }

    /// Resolves relative times and thermal velocities against the boosted rates.
    pub fn sim_config(&self) -> Result<(SimConfig, SimSpec), CliError> {
        let spec = self.sim.clone().ok_or_else(|| CliError::config("missing [sim] section"))?;
        let mut cfg = SimConfig::new(self.scenario()?);
        cfg.trap_frequency = spec.trap_frequency;
        cfg.extra_bath = spec.extra_bath;
        cfg.damping_override = spec.damping_override;
        cfg.initial_position = spec.initial_position;
        cfg.rng_seed = spec.seed;
        cfg.flux_boost = spec.flux_boost;
        cfg.record_stride = spec.record_stride;
        cfg.kicks_per_step = spec.kicks_per_step;
        cfg.doppler = spec.doppler;
        let rates = SimRates::from_config(&cfg)?;
        let gamma = (0..3).map(|a| rates.total_damping(a)).fold(0.0, f64::max);
        let resolve = |t: TimeSpec, key: &str| -> Result<f64, CliError> {
            match t {
                TimeSpec::Seconds(s) => Ok(s),
                TimeSpec::DampingTimes(k) if gamma > 0.0 => Ok(k / gamma),
                TimeSpec::DampingTimes(_) => Err(CliError::config(format!(
                    "`sim.{key}` is given in 1/gamma but no axis is damped"
                ))),
            }
        };
        cfg.duration = resolve(spec.duration, "duration")?;
        cfg.timestep = resolve(spec.timestep, "timestep")?;
        cfg.initial_velocity = match spec.initial_velocity {
            VelocitySpec::MetersPerSecond(v) => v,
            VelocitySpec::Thermal(k) => {
                let sigma = (K_B * rates.radiation_temperature / rates.mass).sqrt();
                k.map(|x| x * sigma)
            }
        };
        cfg.validate(&rates)?;
        Ok((cfg, spec))
    }
}

fn config_hash(doc: &Document, ov: Overrides) -> String {
    let mut h = Sha256::new();
    for (k, v) in doc.canonical() {
        if k == "sim.seed" {
            continue;
        }
        h.update(k.as_bytes());
        h.update(b"=");
        h.update(v.as_bytes());
        h.update(b"\n");
    }
    if let Some(c) = ov.convention {
        h.update(format!("convention={}", c.name()).as_bytes());
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn choice<'a>(s: &Section, key: &str, raw: &str, options: &[&'a str]) -> Result<&'a str, CliError> {
    options
        .iter()
        .find(|o| **o == raw)
        .copied()
        .ok_or_else(|| CliError::config(format!("`{}` must be one of {} (got `{raw}`)", s.path(key), options.join("|"))))
}

fn source_template(s: &mut Section, ov: Overrides, convention_set: &mut bool) -> Result<SourceTemplate, CliError> {
    let kind = s.require_text("kind")?;
    let kind = choice(s, "kind", &kind, &["blackbody", "microcavity", "laser"])?;
    match kind {
        "blackbody" => Ok(SourceTemplate::Blackbody { temperature: s.require_si("temperature", Dim::Temperature)? }),
        "microcavity" => {
            let chemical_potential = {
                let path = s.path("chemical_potential");
                let q = s.quantity("chemical_potential")?.ok_or_else(|| CliError::config(format!("missing `{path}`")))?;
                if q.values.len() != 1 {
                    return Err(CliError::config(format!("`{path}` needs one value")));
                }
                let v = q.values[0];
                match q.unit.as_deref() {
                    Some("ratio") => ChemicalPotential::CutoffRatio(v),
                    Some("eV") => ChemicalPotential::ElectronVolts(v),
                    Some("J") => ChemicalPotential::Joules(v),
                    other => {
                        return Err(CliError::config(format!(
                            "`{path}` unit must be ratio, eV or J (got `{}`)",
                            other.unwrap_or("")
                        )))
                    }
                }
            };
            let convention = match (ov.convention, s.text("convention")) {
                (Some(c), _) => c,
                (None, Some(raw)) => {
                    *convention_set = true;
                    Convention::parse(&raw).ok_or_else(|| {
                        CliError::config(format!("`{}` must be main or supp (got `{raw}`)", s.path("convention")))
                    })?
                }
                (None, None) => Convention::default(),
            };
            let q = s.integer("longitudinal_mode")?.ok_or_else(|| CliError::config("missing `source.longitudinal_mode`"))?;
            Ok(SourceTemplate::Microcavity(CavityParams {
                temperature: s.require_si("temperature", Dim::Temperature)?,
                chemical_potential,
                longitudinal_mode: u32::try_from(q).map_err(|_| CliError::config("`source.longitudinal_mode` too large"))?,
                mirror_separation: s.require_si("mirror_separation", Dim::Length)?,
                mirror_curvature: s.require_si("mirror_curvature", Dim::Length)?,
                refractive_index: s.si("refractive_index", Dim::Dimensionless)?.unwrap_or(DEFAULT_REFRACTIVE_INDEX),
                mirror_transmission: s.require_si("mirror_transmission", Dim::Dimensionless)?,
                cutoff_wavelength: s.si("cutoff_wavelength", Dim::Length)?,
                convention,
            }))
        }
        _ => {
            let at = CliError::in_section("source");
            let omega = match (s.si("wavelength", Dim::Length)?, s.si("angular_frequency", Dim::Rate)?) {
                (Some(l), None) => radtherm_core::constants::wavelength_to_angular_frequency(
                    if l > 0.0 { l } else { return Err(CliError::config(format!("`source.wavelength`: must be > 0 (got {l})"))) },
                ),
                (None, Some(w)) => w,
                _ => return Err(CliError::config("laser source needs exactly one of `source.wavelength`, `source.angular_frequency`")),
            };
            let laser = match (s.si("power", Dim::Power)?, s.si("photon_rate", Dim::Rate)?) {
                (Some(p), None) => {
                    if !(p > 0.0) {
                        return Err(CliError::config(format!("`source.power`: must be > 0 (got {p})")));
                    }
                    LaserSource::new(omega, p / (radtherm_core::constants::HBAR * omega)).map_err(at)?
                }
                (None, Some(r)) => LaserSource::new(omega, r).map_err(at)?,
                _ => return Err(CliError::config("laser source needs exactly one of `source.power`, `source.photon_rate`")),
            };
            Ok(SourceTemplate::Laser(laser))
        }
    }
}

fn target(s: &mut Section) -> Result<Target, CliError> {
    let kind = s.require_text("kind")?;
    let at = CliError::in_section("target");
    match choice(s, "kind", &kind, &["disk", "sphere"])? {
        "disk" => Ok(Target::Disk(
            ReflectiveDisk::from_dimensions(
                s.require_si("radius", Dim::Length)?,
                s.require_si("thickness", Dim::Length)?,
                s.si("density", Dim::Density)?.unwrap_or(SILICA_DENSITY),
            )
            .map_err(at)?,
        )),
        _ => Ok(Target::Sphere(
            DielectricSphere::from_dimensions(
                s.require_si("radius", Dim::Length)?,
                s.si("density", Dim::Density)?.unwrap_or(SILICA_DENSITY),
                s.si("relative_permittivity", Dim::Dimensionless)?.unwrap_or(SILICA_PERMITTIVITY),
            )
            .map_err(at)?,
        )),
    }
}

fn amplifier(s: &mut Section) -> Result<Amplifier, CliError> {
    let path = s.path("gain");
    let Some(q) = s.quantity("gain")? else {
        return Ok(Amplifier::unity());
    };
    if q.values.len() != 1 {
        return Err(CliError::config(format!("`{path}` needs one value")));
    }
    let db = match q.unit.as_deref() {
        Some("dB") => q.values[0],
        None | Some("x") => {
            let g = q.values[0];
            if !(g >= 1.0) {
                return Err(CliError::config(format!("`{path}`: linear gain must be >= 1 (got {g})")));
            }
            10.0 * g.log10()
        }
        Some(u) => return Err(CliError::config(format!("`{path}` unit must be dB or x (got `{u}`)"))),
    };
    Amplifier::from_db(db).map_err(CliError::in_section("amplifier"))
}

fn gas(s: &mut Section) -> Result<GasEnvironment, CliError> {
    GasEnvironment::new(
        s.require_si("pressure", Dim::Pressure)?,
        s.si("temperature", Dim::Temperature)?.unwrap_or(300.0),
        s.si("molecular_mass", Dim::Mass)?.unwrap_or(AIR_MOLECULAR_MASS),
        s.si("viscosity", Dim::Viscosity)?.unwrap_or(AIR_VISCOSITY),
    )
    .map_err(CliError::in_section("gas"))
}

fn comparison(s: &mut Section) -> Result<ReflectiveDisk, CliError> {
    let kind = s.require_text("kind")?;
    choice(s, "kind", &kind, &["blackbody_disk"])?;
    ReflectiveDisk::from_dimensions(
        s.require_si("radius", Dim::Length)?,
        s.require_si("thickness", Dim::Length)?,
        s.si("density", Dim::Density)?.unwrap_or(SILICA_DENSITY),
    )
    .map_err(CliError::in_section("comparison"))
}

fn sweep(s: &mut Section) -> Result<SweepSpec, CliError> {
    let raw = s.require_text("parameter")?;
    let parameter = SweepParameter::parse(&raw).ok_or_else(|| {
        CliError::config(format!(
            "`sweep.parameter` must be blackbody_temperature|chemical_potential_ratio|cavity_temperature (got `{raw}`)"
        ))
    })?;
    let dim = match parameter {
        SweepParameter::ChemicalPotentialRatio => Dim::Dimensionless,
        _ => Dim::Temperature,
    };
    let min = s.require_si("min", dim)?;
    let max = s.require_si("max", dim)?;
    let points = s.integer("points")?.ok_or_else(|| CliError::config("missing `sweep.points`"))? as usize;
    let log = match s.text("spacing").as_deref() {
        None | Some("linear") => false,
        Some("log") => true,
        Some(other) => return Err(CliError::config(format!("`sweep.spacing` must be linear or log (got `{other}`)"))),
    };
    if !(min < max) {
        return Err(CliError::config(format!("`sweep.min` must be < `sweep.max` (got {min} and {max})")));
    }
    if points < 2 {
        return Err(CliError::config(format!("`sweep.points` must be >= 2 (got {points})")));
    }
    if log && !(min > 0.0) {
        return Err(CliError::config("`sweep.min` must be > 0 for log spacing"));
    }
    let columns = s
        .text("columns")
        .map(|c| c.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect())
        .unwrap_or_default();
    let series = s.si_values("chemical_potential_ratios", Dim::Dimensionless, None)?.unwrap_or_default();
    if !series.is_empty() && parameter != SweepParameter::CavityTemperature {
        return Err(CliError::config("`sweep.chemical_potential_ratios` needs parameter = cavity_temperature"));
    }
    Ok(SweepSpec { parameter, min, max, points, log, columns, series })
}

fn time(s: &mut Section, key: &str) -> Result<Option<TimeSpec>, CliError> {
    let path = s.path(key);
    let Some(q) = s.quantity(key)? else {
        return Ok(None);
    };
    if q.values.len() != 1 {
        return Err(CliError::config(format!("`{path}` needs one value")));
    }
    let v = q.values[0];
    if !(v > 0.0) {
        return Err(CliError::config(format!("`{path}`: must be > 0 (got {v})")));
    }
    if q.unit.as_deref() == Some("1/gamma") {
        return Ok(Some(TimeSpec::DampingTimes(v)));
    }
    let f = crate::config::unit_factor(Dim::Time, q.unit.as_deref())
        .ok_or_else(|| CliError::config(format!("`{path}` unit must be s, ms, us, days, years or 1/gamma")))?;
    Ok(Some(TimeSpec::Seconds(crate::config::to_si(v, f))))
}

fn triple(v: Vec<f64>) -> [f64; 3] {
    [v[0], v[1], v[2]]
}

fn sim(s: &mut Section, ov: Overrides) -> Result<SimSpec, CliError> {
    let engine = match s.text("engine") {
        None => Engine::Langevin,
        Some(raw) => Engine::parse(&raw)
            .ok_or_else(|| CliError::config(format!("`sim.engine` must be langevin or photon-kicks (got `{raw}`)")))?,
    };
    let initial_velocity = {
        let path = s.path("initial_velocity");
        match s.quantity("initial_velocity")? {
            None => VelocitySpec::MetersPerSecond([0.0; 3]),
            Some(q) if q.values.len() == 3 => match q.unit.as_deref() {
                Some("sigma_v") => VelocitySpec::Thermal(triple(q.values)),
                u => {
                    let f = crate::config::unit_factor(Dim::Velocity, u)
                        .ok_or_else(|| CliError::config(format!("`{path}` unit must be m/s or sigma_v")))?;
                    VelocitySpec::MetersPerSecond(triple(q.values).map(|v| v * f))
                }
            },
            Some(_) => return Err(CliError::config(format!("`{path}` needs 3 values"))),
        }
    };
    let extra_bath = match (s.si("extra_damping", Dim::Rate)?, s.si("extra_bath_temperature", Dim::Temperature)?) {
        (None, None) => None,
        (Some(g), Some(t)) => Some(ExtraBath { damping_rate: g, temperature: t }),
        _ => return Err(CliError::config("`sim.extra_damping` and `sim.extra_bath_temperature` go together")),
    };
    let estimator = match s.text("estimator").as_deref() {
        None | Some("auto") => EstimatorChoice::Auto,
        Some("ringdown") => EstimatorChoice::Fixed(EstimateMethod::RingDown),
        Some("equipartition") => EstimatorChoice::Fixed(EstimateMethod::Equipartition),
        Some(other) => {
            return Err(CliError::config(format!("`sim.estimator` must be auto|ringdown|equipartition (got `{other}`)")))
        }
    };
    let discard_fraction = s.si("discard_fraction", Dim::Dimensionless)?.unwrap_or(0.1);
    if !(0.0..1.0).contains(&discard_fraction) {
        return Err(CliError::config(format!("`sim.discard_fraction` must lie in [0, 1) (got {discard_fraction})")));
    }
    let members = s.integer("members")?.unwrap_or(1) as usize;
    if members == 0 {
        return Err(CliError::config("`sim.members` must be >= 1"));
    }
    let file_seed = s.integer("seed")?.unwrap_or(0);
    Ok(SimSpec {
        engine,
        flux_boost: s.si("flux_boost", Dim::Dimensionless)?.unwrap_or(1.0),
        duration: time(s, "duration")?.ok_or_else(|| CliError::config("missing `sim.duration`"))?,
        timestep: time(s, "timestep")?.ok_or_else(|| CliError::config("missing `sim.timestep`"))?,
        trap_frequency: s.si_values("trap_frequency", Dim::Rate, Some(3))?.map(triple).unwrap_or([0.0; 3]),
        initial_position: s.si_values("initial_position", Dim::Length, Some(3))?.map(triple).unwrap_or([0.0; 3]),
        initial_velocity,
        seed: ov.seed.unwrap_or(file_seed),
        record_stride: s.integer("record_stride")?.unwrap_or(1) as usize,
        members,
        kicks_per_step: s.si("kicks_per_step", Dim::Dimensionless)?,
        doppler: s.boolean("doppler")?.unwrap_or(true),
        damping_override: s.si_values("damping_override", Dim::Rate, Some(3))?.map(triple),
        extra_bath,
        discard_fraction,
        estimator,
    })
}

fn validate(s: &mut Section) -> Result<ValidateSpec, CliError> {
    let d = ValidateSpec::default();
    Ok(ValidateSpec {
        tolerance: s.si("tolerance", Dim::Dimensionless)?.unwrap_or(d.tolerance),
        planck_tolerance: s.si("planck_tolerance", Dim::Dimensionless)?.unwrap_or(d.planck_tolerance),
        power_tolerance: s.si("power_tolerance", Dim::Dimensionless)?.unwrap_or(d.power_tolerance),
        mc_samples: s.integer("mc_samples")?.map(|n| n as usize).unwrap_or(d.mc_samples),
    })
}

fn output(s: &mut Section) -> Result<OutputSpec, CliError> {
    let format = match s.text("format").as_deref() {
        None => None,
        Some("csv") => Some(Format::Csv),
        Some("table") => Some(Format::Table),
        Some(other) => return Err(CliError::config(format!("`output.format` must be csv or table (got `{other}`)"))),
    };
    Ok(OutputSpec { path: s.text("path").map(PathBuf::from), format })
}
