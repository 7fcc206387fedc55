//! The four subcommands. Each writes human-readable text to `out` and any
//! files it is asked for, and reports failures as [`CliError`].

use std::io::Write;
use std::path::{Path, PathBuf};

use radtherm_core::constants::{C, HBAR, K_B, SECONDS_PER_DAY, SECONDS_PER_YEAR};
use radtherm_core::geometry::{gas_damping_rate, ReflectiveDisk};
use radtherm_core::oracle::{
    bb_damping_exact, bb_force_exact, bb_heating_exact, cavity_damping_exact, cavity_force_exact,
    cavity_heating_exact, compare_estimate, compare_with_uncertainty, integrate_planck_cubic, output_power_exact,
    sphere_damping_exact, sphere_force_exact, sphere_heating_exact, ComparisonReport, Occupation, QuadratureSpec,
};
use radtherm_core::rates::{
    bb_disk_damping_rate, laser_sphere_equilibrium_temperature, scenario_rates,
};
use radtherm_core::scenario::{Scenario, Source, Target};
use radtherm_core::sim::{
    estimate_damping_ringdown_ensemble, estimate_temperature_ensemble, simulate_ensemble, Engine, EstimateMethod,
    KickPlan, SimRates, Trajectory,
};
use radtherm_core::sources::{amplified_intensity, BlackbodySource, CavityParams, ChemicalPotential, Convention};
use rayon::prelude::*;

use crate::model::{EstimatorChoice, Format, RunConfig, SourceTemplate, SweepParameter};
use crate::output::Table;
use crate::{CliError, TOOL_VERSION};

const AXES: [&str; 3] = ["x", "y", "z"];

/// Named scalar outputs of one evaluated scenario, column names unit-suffixed.
pub type Quantities = Vec<(String, f64)>;

/// Evaluated quantities plus regime warnings.
pub fn scenario_quantities(s: &Scenario) -> Result<(Quantities, Vec<String>), CliError> {
    let mut q: Quantities = Vec::new();
    let mut warnings = Vec::new();
    match (&s.source, &s.target) {
        (Source::Laser(l), Target::Sphere(_)) => {
            q.push(("laser_power_W".into(), l.power() * s.amplifier.gain_linear));
            q.push(("equilibrium_temperature_K".into(), laser_sphere_equilibrium_temperature(l)));
        }
        _ => {
            let r = scenario_rates(s)?;
            warnings.extend(r.warnings.iter().cloned());
            q.push(("force_z_N".into(), r.radiation_pressure_force));
            for a in 0..3 {
                let g = r.damping_rate[a];
                if g <= 0.0 {
                    continue;
                }
                let ax = AXES[a];
                q.push((format!("damping_rate_{ax}_rad_s"), g));
                q.push((format!("damping_rate_{ax}_Hz"), g / (2.0 * std::f64::consts::PI)));
                q.push((format!("heating_rate_{ax}_W"), r.heating_rate[a]));
                q.push((format!("damping_time_2pi_{ax}_s"), 2.0 * std::f64::consts::PI / g));
                q.push((format!("relaxation_time_{ax}_s"), 1.0 / g));
            }
            q.push(("equilibrium_temperature_K".into(), r.equilibrium_temperature));
            if let Source::Laser(l) = &s.source {
                q.push(("laser_power_W".into(), l.power() * s.amplifier.gain_linear));
            }
        }
    }
    if let Source::Microcavity(cav) = &s.source {
        q.push(("output_power_W".into(), cav.output_power()));
        q.push(("amplified_power_W".into(), s.amplifier.gain_linear * cav.output_power()));
        if let Some(o) = &s.optics {
            q.push(("amplified_intensity_W_m2".into(), amplified_intensity(cav, &s.amplifier, o)));
        }
    }
    if let (Some(gas), Target::Sphere(sphere)) = (&s.gas, &s.target) {
        let g = gas_damping_rate(gas, sphere);
        q.push(("gas_damping_rate_rad_s".into(), g));
        q.push(("gas_damping_rate_Hz".into(), g / (2.0 * std::f64::consts::PI)));
        q.push(("gas_relaxation_time_s".into(), 1.0 / g));
        q.push(("gas_damping_time_2pi_s".into(), 2.0 * std::f64::consts::PI / g));
    }
    Ok((q, warnings))
}

/// Blackbody-illuminated reference disk at `temperature`.
fn comparison_quantities(disk: &ReflectiveDisk, temperature: f64) -> Result<Quantities, CliError> {
    let bb = BlackbodySource::new(temperature).map_err(CliError::in_section("comparison"))?;
    let g = bb_disk_damping_rate(disk, &bb);
    Ok(vec![
        ("blackbody_disk_damping_rate_z_rad_s".into(), g),
        ("blackbody_disk_damping_time_2pi_z_s".into(), 2.0 * std::f64::consts::PI / g),
    ])
}

fn source_only_quantities(src: &Source, cfg: &RunConfig) -> Quantities {
    let mut q = Quantities::new();
    match src {
        Source::Microcavity(cav) => {
            q.push(("cutoff_angular_frequency_rad_s".into(), cav.cutoff_frequency));
            q.push(("cutoff_wavelength_m".into(), 2.0 * std::f64::consts::PI * C / cav.cutoff_frequency));
            q.push(("chemical_potential_J".into(), cav.chemical_potential));
            q.push(("chemical_potential_ratio".into(), cav.chemical_potential_ratio()));
            q.push(("transverse_spacing_rad_s".into(), cav.transverse_spacing));
            q.push(("cavity_volume_m3".into(), cav.cavity_volume));
            q.push(("output_power_W".into(), cav.output_power()));
            q.push(("amplified_power_W".into(), cfg.amplifier.gain_linear * cav.output_power()));
            if let Some(o) = &cfg.optics {
                q.push(("amplified_intensity_W_m2".into(), amplified_intensity(cav, &cfg.amplifier, o)));
            }
        }
        Source::Laser(l) => {
            q.push(("laser_power_W".into(), l.power()));
            q.push(("mirror_equilibrium_temperature_K".into(), HBAR * l.angular_frequency / K_B));
            q.push(("sphere_equilibrium_temperature_K".into(), laser_sphere_equilibrium_temperature(l)));
        }
        Source::Blackbody(b) => q.push(("temperature_K".into(), b.temperature)),
    }
    q
}

fn human_time(seconds: f64) -> String {
    if seconds >= SECONDS_PER_YEAR {
        format!("{:.4} years", seconds / SECONDS_PER_YEAR)
    } else if seconds >= SECONDS_PER_DAY {
        format!("{:.4} days", seconds / SECONDS_PER_DAY)
    } else {
        format!("{seconds:.4} s")
    }
}

fn write_table(out: &mut dyn Write, q: &Quantities) -> Result<(), CliError> {
    let width = q.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in q {
        if k.contains("_time_") {
            writeln!(out, "{k:<width$}  {v:e}  ({})", human_time(*v))?;
        } else {
            writeln!(out, "{k:<width$}  {v:e}")?;
        }
    }
    Ok(())
}

fn create(path: &Path) -> Result<std::io::BufWriter<std::fs::File>, CliError> {
    let f = std::fs::File::create(path).map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display())))?;
    Ok(std::io::BufWriter::new(f))
}

fn out_path(cfg: &RunConfig, cli_out: Option<&Path>) -> Option<PathBuf> {
    cli_out.map(Path::to_path_buf).or_else(|| cfg.output.path.clone())
}

pub fn cmd_rates(cfg: &RunConfig, cli_out: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let src = cfg.require_source()?.build()?;
    let (mut q, warnings, pairing) = match cfg.target {
        Some(_) => {
            let s = cfg.scenario_with(src)?;
            let (q, w) = scenario_quantities(&s)?;
            (q, w, format!("{}+{}", s.source.kind(), s.target.kind()))
        }
        None => (source_only_quantities(&src, cfg), Vec::new(), src.kind().to_string()),
    };
    if let (Some(disk), Some(t)) = (&cfg.comparison, src.temperature()) {
        q.extend(comparison_quantities(disk, t)?);
    }
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let meta = [("command", "rates".to_string()), ("pairing", pairing.clone())];
    match (out_path(cfg, cli_out), cfg.output.format.unwrap_or_default()) {
        (Some(path), _) => {
            let mut t = Table::new(q.iter().map(|(k, _)| k.clone()).collect());
            t.push(q.iter().map(|(_, v)| *v).collect())?;
            t.write_csv(create(&path)?, &cfg.hash, &meta)?;
            writeln!(out, "wrote {}", path.display())?;
        }
        (None, Format::Csv) => {
            let mut t = Table::new(q.iter().map(|(k, _)| k.clone()).collect());
            t.push(q.iter().map(|(_, v)| *v).collect())?;
            t.write_csv(&mut *out, &cfg.hash, &meta)?;
        }
        (None, Format::Table) => {
            writeln!(out, "pairing: {pairing}")?;
            write_table(out, &q)?;
        }
    }
    Ok(())
}

fn point_quantities(cfg: &RunConfig, parameter: SweepParameter, series: &[f64], x: f64) -> Result<Quantities, CliError> {
    let template = cfg.require_source()?;
    let with = |p: CavityParams| SourceTemplate::Microcavity(p);
    let cavity = |t: SourceTemplate| match t {
        SourceTemplate::Microcavity(p) => Ok(p),
        _ => Err(CliError::config(format!("sweep over {} needs a microcavity source", parameter.column()))),
    };
    let mut q = vec![(parameter.column().to_string(), x)];
    let instances: Vec<(String, SourceTemplate)> = match parameter {
        SweepParameter::BlackbodyTemperature => match template {
            SourceTemplate::Blackbody { .. } => vec![(String::new(), SourceTemplate::Blackbody { temperature: x })],
            _ => return Err(CliError::config("sweep over blackbody_temperature needs a blackbody source")),
        },
        SweepParameter::ChemicalPotentialRatio => {
            let p = cavity(template)?;
            vec![(String::new(), with(CavityParams { chemical_potential: ChemicalPotential::CutoffRatio(x), ..p }))]
        }
        SweepParameter::CavityTemperature => {
            let p = CavityParams { temperature: x, ..cavity(template)? };
            if series.is_empty() {
                vec![(String::new(), with(p))]
            } else {
                series
                    .iter()
                    .map(|r| (format!("mu{r}_"), with(CavityParams { chemical_potential: ChemicalPotential::CutoffRatio(*r), ..p })))
                    .collect()
            }
        }
    };
    let mut temperature = None;
    for (prefix, t) in instances {
        let src = t.build()?;
        temperature = src.temperature();
        let (vals, _) = scenario_quantities(&cfg.scenario_with(src)?)?;
        q.extend(vals.into_iter().map(|(k, v)| (format!("{prefix}{k}"), v)));
    }
    if let (Some(disk), Some(t)) = (&cfg.comparison, temperature) {
        q.extend(comparison_quantities(disk, t)?);
    }
    Ok(q)
}

pub fn cmd_sweep(cfg: &RunConfig, cli_out: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = cfg.sweep.as_ref().ok_or_else(|| CliError::config("missing [sweep] section"))?;
    let grid = spec.grid();
    let points: Vec<Quantities> = grid
        .par_iter()
        .map(|&x| point_quantities(cfg, spec.parameter, &spec.series, x))
        .collect::<Result<_, _>>()?;
    let all: Vec<String> = points[0].iter().map(|(k, _)| k.clone()).collect();
    let keep: Vec<usize> = if spec.columns.is_empty() {
        (0..all.len()).collect()
    } else {
        for stem in &spec.columns {
            if !all.iter().any(|c| matches_stem(c, stem)) {
                return Err(CliError::config(format!(
                    "`sweep.columns`: no output column matches `{stem}` (available: {})",
                    all[1..].join(", ")
                )));
            }
        }
        (0..all.len()).filter(|&i| i == 0 || spec.columns.iter().any(|s| matches_stem(&all[i], s))).collect()
    };
    let mut table = Table::new(keep.iter().map(|&i| all[i].clone()).collect());
    for p in &points {
        if p.len() != all.len() {
            return Err(CliError::runtime("sweep points produced different column sets"));
        }
        table.push(keep.iter().map(|&i| p[i].1).collect())?;
    }
    let meta = [
        ("command", "sweep".to_string()),
        ("swept", spec.parameter.column().to_string()),
        ("points", spec.points.to_string()),
        ("spacing", if spec.log { "log" } else { "linear" }.to_string()),
    ];
    match out_path(cfg, cli_out) {
        Some(path) => {
            table.write_csv(create(&path)?, &cfg.hash, &meta)?;
            writeln!(out, "wrote {} rows to {}", table.rows.len(), path.display())?;
        }
        None => table.write_csv(&mut *out, &cfg.hash, &meta)?,
    }
    Ok(())
}

/// Column `name` belongs to stem `stem` when it equals it or extends it
/// with an axis or unit suffix (with or without a series prefix).
fn matches_stem(name: &str, stem: &str) -> bool {
    let base = match name.split_once('_') {
        Some((p, rest)) if p.starts_with("mu") && p[2..].parse::<f64>().is_ok() => rest,
        _ => name,
    };
    base == stem || base.starts_with(&format!("{stem}_"))
}

/// One exact-vs-closed-form comparison in the validation report.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    pub section: String,
    pub quantity: String,
    pub report: ComparisonReport,
    pub bound: f64,
}

impl ValidationRow {
    pub fn passed(&self) -> bool {
        self.report.relative_error <= self.bound
    }

    /// The exact value's own uncertainty could flip the verdict.
    pub fn verdict_uncertain(&self) -> bool {
        (self.report.relative_error - self.bound).abs() <= self.report.quadrature_error_estimate
    }
}

const PAPER_SCENARIOS: [(&str, &str); 4] = [
    ("fig2", include_str!("../../../presets/fig2.conf")),
    ("fig3", include_str!("../../../presets/fig3.conf")),
    ("fig4a", include_str!("../../../presets/fig4a.conf")),
    ("klaers-cavity", include_str!("../../../presets/klaers-cavity.conf")),
];

fn validation_rows(
    label: &str,
    cfg: &RunConfig,
    spec: &QuadratureSpec,
    tol: &crate::model::ValidateSpec,
) -> Result<Vec<ValidationRow>, CliError> {
    let src = cfg.require_source()?.build()?;
    let mut rows = Vec::new();
    let mut push = |quantity: &str, report: ComparisonReport, bound: f64| {
        rows.push(ValidationRow { section: label.to_string(), quantity: quantity.to_string(), report, bound });
    };
    let mc = |e: radtherm_core::oracle::McEstimate, axis: Option<usize>, approx: f64| {
        let (v, se) = match axis {
            Some(a) => (e.value[a], e.standard_error[a]),
            None => (e.total() / 3.0, e.total_standard_error() / 3.0),
        };
        compare_with_uncertainty(v, approx, se / v.abs())
    };
    match (&src, &cfg.target) {
        (Source::Blackbody(bb), Some(Target::Disk(disk))) => {
            let t = bb.temperature;
            let planck = (std::f64::consts::PI.powi(4) / 15.0) * (K_B * t / HBAR).powi(4);
            push("planck_cubic_integral", compare_estimate(integrate_planck_cubic(t, spec)?, planck), tol.planck_tolerance);
            let r = scenario_rates(&cfg.scenario_with(src)?)?;
            push("force_z", compare_estimate(bb_force_exact(disk, bb, 0.0, spec)?, r.radiation_pressure_force), tol.tolerance);
            push("damping_rate_z", compare_estimate(bb_damping_exact(disk, bb, spec)?, r.damping_rate[2]), tol.tolerance);
            push("heating_rate_z", compare_estimate(bb_heating_exact(disk, bb, spec)?, r.heating_rate[2]), tol.tolerance);
        }
        (Source::Microcavity(cav), Some(Target::Disk(disk))) => {
            let amp = &cfg.amplifier;
            let r = scenario_rates(&cfg.scenario_with(src)?)?;
            push("force_z", compare_estimate(cavity_force_exact(disk, cav, amp, 0.0, spec)?, r.radiation_pressure_force), tol.tolerance);
            push("damping_rate_z", compare_estimate(cavity_damping_exact(disk, cav, amp, spec)?, r.damping_rate[2]), tol.tolerance);
            push("heating_rate_z", compare_estimate(cavity_heating_exact(disk, cav, amp, spec)?, r.heating_rate[2]), tol.tolerance);
        }
        (Source::Microcavity(cav), Some(Target::Sphere(sphere))) => {
            let amp = &cfg.amplifier;
            let optics = cfg.optics.ok_or_else(|| CliError::config("sphere validation needs [optics] spot_radius"))?;
            let r = scenario_rates(&cfg.scenario_with(src)?)?;
            let f = sphere_force_exact(sphere, cav, amp, &optics, [0.0; 3], spec)?;
            push("force_z", mc(f, Some(2), r.radiation_pressure_force), tol.tolerance);
            let g = sphere_damping_exact(sphere, cav, amp, &optics, spec)?;
            for a in 0..3 {
                push(&format!("damping_rate_{}", AXES[a]), mc(g, Some(a), r.damping_rate[a]), tol.tolerance);
            }
            let h = sphere_heating_exact(sphere, cav, amp, &optics, spec)?;
            for a in 0..3 {
                push(&format!("heating_rate_{}", AXES[a]), mc(h, Some(a), r.heating_rate[a]), tol.tolerance);
            }
        }
        (Source::Microcavity(_), None) => {}
        (_, None) => return Err(CliError::config("validation needs a [target] section")),
        (s, Some(t)) => {
            return Err(CliError::config(format!(
                "no exact integral is implemented for {}+{}",
                s.kind(),
                t.kind()
            )))
        }
    }
    if let Source::Microcavity(cav) = &src {
        let boltz = spec.with_occupation(Occupation::Boltzmann);
        push("output_power_boltzmann", compare_estimate(output_power_exact(cav, &boltz)?, cav.output_power()), tol.power_tolerance);
        push("output_power_bose", compare_estimate(output_power_exact(cav, spec)?, cav.output_power()), tol.tolerance);
    }
    Ok(rows)
}

/// Runs every comparison for the configured scenario, or for the paper's
/// scenarios when the file has no [source]. Sections are repeated for
/// both index conventions unless one is fixed.
pub fn run_validation(cfg: Option<&RunConfig>, convention: Option<Convention>) -> Result<Vec<ValidationRow>, CliError> {
    let tol = cfg.map(|c| c.validate).unwrap_or_default();
    let spec = QuadratureSpec::default().with_mc_samples(tol.mc_samples);
    let fixed = convention.or_else(|| {
        cfg.filter(|c| c.convention_set)
            .and_then(|c| match c.source {
                Some(SourceTemplate::Microcavity(p)) => Some(p.convention),
                _ => None,
            })
    });
    let conventions: Vec<Convention> = match fixed {
        Some(c) => vec![c],
        None => vec![Convention::Supplementary, Convention::MainText],
    };
    let mut rows = Vec::new();
    for conv in conventions {
        let ov = crate::model::Overrides { convention: Some(conv), seed: None };
        let scenarios: Vec<(String, RunConfig)> = match cfg.filter(|c| c.source.is_some()) {
            Some(c) => {
                let mut c = c.clone();
                if let Some(SourceTemplate::Microcavity(p)) = &mut c.source {
                    p.convention = conv;
                }
                vec![("config".to_string(), c)]
            }
            None => PAPER_SCENARIOS
                .iter()
                .map(|(name, text)| Ok((name.to_string(), RunConfig::from_text(text, ov)?)))
                .collect::<Result<_, CliError>>()?,
        };
        for (name, mut c) in scenarios {
            c.validate = tol;
            rows.extend(validation_rows(&format!("{}/{name}", conv.name()), &c, &spec, &tol)?);
        }
    }
    Ok(rows)
}

pub fn cmd_validate(
    cfg: Option<&RunConfig>,
    convention: Option<Convention>,
    cli_out: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let rows = run_validation(cfg, convention)?;
    let sw = rows.iter().map(|r| r.section.len()).max().unwrap_or(0);
    let qw = rows.iter().map(|r| r.quantity.len()).max().unwrap_or(0);
    writeln!(out, "{:<sw$}  {:<qw$}  {:>13}  {:>13}  {:>10}  {:>8}  result", "section", "quantity", "exact", "closed_form", "rel_error", "bound")?;
    for r in &rows {
        let flag = if r.verdict_uncertain() { " (uncertain)" } else { "" };
        writeln!(
            out,
            "{:<sw$}  {:<qw$}  {:>13.6e}  {:>13.6e}  {:>10.3e}  {:>8.1e}  {}{flag}",
            r.section,
            r.quantity,
            r.report.exact_value,
            r.report.approx_value,
            r.report.relative_error,
            r.bound,
            if r.passed() { "PASS" } else { "FAIL" }
        )?;
    }
    if let Some(path) = cli_out.map(Path::to_path_buf).or_else(|| cfg.and_then(|c| c.output.path.clone())) {
        let mut w = create(&path)?;
        writeln!(w, "# radtherm {TOOL_VERSION}")?;
        writeln!(w, "# config_hash = {}", cfg.map(|c| c.hash.as_str()).unwrap_or("paper-defaults"))?;
        writeln!(w, "section,quantity,exact,closed_form,relative_error,exact_relative_uncertainty,bound,pass")?;
        for r in &rows {
            writeln!(
                w,
                "{},{},{:e},{:e},{:e},{:e},{:e},{}",
                r.section,
                r.quantity,
                r.report.exact_value,
                r.report.approx_value,
                r.report.relative_error,
                r.report.quadrature_error_estimate,
                r.bound,
                u8::from(r.passed())
            )?;
        }
        w.flush()?;
    }
    let failed: Vec<String> = rows.iter().filter(|r| !r.passed()).map(|r| format!("{}:{}", r.section, r.quantity)).collect();
    if failed.is_empty() {
        writeln!(out, "all {} comparisons within bounds", rows.len())?;
        Ok(())
    } else {
        Err(CliError::Validation(format!("{} of {} comparisons out of bounds: {}", failed.len(), rows.len(), failed.join(", "))))
    }
}

fn member_path(base: &Path, index: usize, members: usize) -> PathBuf {
    if members == 1 {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("trajectory");
    let name = match base.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}.member{index}.{ext}"),
        None => format!("{stem}.member{index}"),
    };
    base.with_file_name(name)
}

pub fn cmd_simulate(cfg: &RunConfig, cli_out: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let (sim, spec) = cfg.sim_config()?;
    let rates = SimRates::from_config(&sim)?;
    writeln!(out, "engine: {}", spec.engine.name())?;
    writeln!(out, "config_hash: {}", sim.config_hash())?;
    writeln!(out, "seed: {}  members: {}  steps: {}", sim.rng_seed, spec.members, sim.steps())?;
    if spec.engine == Engine::PhotonKicks {
        let p = KickPlan::for_config(&sim)?;
        writeln!(
            out,
            "photon events/step: {:.3e}  macro-photon weight: {:.3e}  doppler margin: {:.3}",
            p.events_per_step, p.macro_weight, p.doppler_margin
        )?;
    }
    let trajs = simulate_ensemble(&sim, spec.engine, spec.members)?;
    let base = out_path(cfg, cli_out).unwrap_or_else(|| PathBuf::from("trajectory.csv"));
    for (i, t) in trajs.iter().enumerate() {
        let path = member_path(&base, i, spec.members);
        let mut w = create(&path)?;
        t.write_csv(&mut w, TOOL_VERSION)?;
        w.flush()?;
        writeln!(out, "wrote {} ({} samples)", path.display(), t.len())?;
    }
    let method = match spec.estimator {
        EstimatorChoice::Fixed(m) => m,
        EstimatorChoice::Auto => auto_method(&trajs[0], &rates),
    };
    summarize(out, &trajs, &rates, method, spec.discard_fraction)
}

/// Ring-down when the run starts well above the equilibrium energy.
fn auto_method(t: &Trajectory, rates: &SimRates) -> EstimateMethod {
    let excited = (0..3).any(|a| {
        let e0 = t.axis_energy(a).first().copied().unwrap_or(0.0);
        rates.equilibrium_temperature(a).is_some_and(|teq| e0 > 20.0 * K_B * teq)
    });
    if excited {
        EstimateMethod::RingDown
    } else {
        EstimateMethod::Equipartition
    }
}

fn summarize(
    out: &mut dyn Write,
    trajs: &[Trajectory],
    rates: &SimRates,
    method: EstimateMethod,
    discard: f64,
) -> Result<(), CliError> {
    writeln!(out, "estimator: {}", method.name())?;
    let report = match method {
        EstimateMethod::RingDown => estimate_damping_ringdown_ensemble(trajs)?,
        EstimateMethod::Equipartition => estimate_temperature_ensemble(trajs, discard)?,
    };
    for a in 0..3 {
        let gamma = rates.total_damping(a);
        if let Some(m) = report.damping_rate[a] {
            writeln!(
                out,
                "damping_rate_{} = {:e} ± {:e} rad/s  (closed form {:e}, ratio {:.4}, z = {:.2})",
                AXES[a],
                m.value,
                m.standard_error,
                gamma,
                m.value / gamma,
                m.z_score(gamma)
            )?;
        }
        if let (Some(m), Some(teq)) = (report.temperature[a], rates.equilibrium_temperature(a)) {
            writeln!(
                out,
                "temperature_{} = {:.6e} ± {:.3e} K  (expected {:.6e} K, z = {:.2})",
                AXES[a],
                m.value,
                m.standard_error,
                teq,
                m.z_score(teq)
            )?;
        }
    }
    Ok(())
}
