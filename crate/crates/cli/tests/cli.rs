use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use radtherm_cli::commands::scenario_quantities;
use radtherm_cli::model::{Overrides, RunConfig};

const PRESETS: [&str; 8] = [
    "fig2",
    "fig3",
    "fig4a",
    "fig4b",
    "klaers-cavity",
    "ringdown-bb-disk",
    "thermalize-cavity-sphere",
    "kicks-bb-disk",
];

fn preset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../presets").join(format!("{name}.conf"))
}

fn radtherm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radtherm")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let (meta, rest): (Vec<&str>, Vec<&str>) = text.lines().partition(|l| l.starts_with('#'));
    let header: Vec<String> = rest[0].split(',').map(str::to_string).collect();
    let rows = rest[1..].iter().map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    (meta.into_iter().map(str::to_string).collect(), header, rows)
}

fn column(header: &[String], rows: &[Vec<f64>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name} in {header:?}"));
    rows.iter().map(|r| r[i]).collect()
}

#[test]
fn every_preset_parses_and_reports_rates() {
    for name in PRESETS {
        RunConfig::load(&preset(name), Overrides::default()).unwrap_or_else(|e| panic!("{name}: {e}"));
        let o = radtherm(&["rates", "--config", preset(name).to_str().unwrap()]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
    }
}

#[test]
fn sweep_headers_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["fig2", "fig3", "fig4a", "fig4b"] {
        let a = dir.path().join(format!("{name}.a.csv"));
        let b = dir.path().join(format!("{name}.b.csv"));
        for p in [&a, &b] {
            let o = radtherm(&["sweep", "--config", preset(name).to_str().unwrap(), "--out", p.to_str().unwrap()]);
            assert!(o.status.success(), "{name}: {}", stderr(&o));
        }
        let (ma, ha, ra) = csv_rows(&a);
        let (mb, hb, rb) = csv_rows(&b);
        assert_eq!((ma, ha), (mb, hb), "{name}");
        assert_eq!(ra, rb, "{name}");
        assert_eq!(ra.len(), 50, "{name}");
    }
    let (meta, header, _) = csv_rows(&dir.path().join("fig2.a.csv"));
    assert!(meta[0].starts_with("# radtherm "));
    assert!(meta[1].starts_with("# config_hash = "));
    assert_eq!(
        header.join(","),
        "blackbody_temperature_K,damping_rate_z_rad_s,damping_time_2pi_z_s,equilibrium_temperature_K"
    );
}

#[test]
fn blackbody_sweep_spans_centuries_to_days() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig2.csv");
    radtherm(&["sweep", "--config", preset("fig2").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    let (_, h, rows) = csv_rows(&out);
    let t = column(&h, &rows, "blackbody_temperature_K");
    let tau = column(&h, &rows, "damping_time_2pi_z_s");
    assert_eq!((t[0], t[49]), (300.0, 5000.0));
    assert!(t.windows(2).all(|w| w[1] > w[0]));
    let year = 365.25 * 86400.0;
    assert!(tau[0] > 500.0 * year && tau[0] < 2000.0 * year, "{}", tau[0] / year);
    assert!((tau[49] / 86400.0 - 4.63).abs() < 0.1, "{}", tau[49] / 86400.0);
}

#[test]
fn chemical_potential_sweep_is_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig3.csv");
    radtherm(&["sweep", "--config", preset("fig3").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    let (_, h, rows) = csv_rows(&out);
    let tau = column(&h, &rows, "damping_time_2pi_z_s");
    assert!(tau.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn temperature_sweep_has_one_series_per_ratio_and_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig4b.csv");
    radtherm(&["sweep", "--config", preset("fig4b").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    let (_, h, rows) = csv_rows(&out);
    for r in ["0.99", "0.95", "0.9"] {
        column(&h, &rows, &format!("mu{r}_damping_time_2pi_z_s"));
    }
    column(&h, &rows, "blackbody_disk_damping_time_2pi_z_s");
    let hi = column(&h, &rows, "mu0.99_damping_time_2pi_z_s");
    let lo = column(&h, &rows, "mu0.9_damping_time_2pi_z_s");
    assert!(hi.iter().zip(&lo).all(|(a, b)| a < b));
}

const CAVITY_SPHERE: &str = "
[source]
kind = microcavity
temperature = 300 K
chemical_potential = {MU}
longitudinal_mode = 7
mirror_separation = {D0}
mirror_curvature = 1 m
mirror_transmission = 1.5e-5
cutoff_wavelength = 588 nm
[target]
kind = sphere
radius = {R}
[amplifier]
gain = 70 dB
[optics]
spot_radius = 1 um
[gas]
pressure = {P}
";

fn quantities(mu: &str, d0: &str, r: &str, p: &str) -> Vec<(String, f64)> {
    let text = CAVITY_SPHERE.replace("{MU}", mu).replace("{D0}", d0).replace("{R}", r).replace("{P}", p);
    let cfg = RunConfig::from_text(&text, Overrides::default()).unwrap();
    scenario_quantities(&cfg.scenario().unwrap()).unwrap().0
}

#[test]
fn equivalent_units_give_equal_results() {
    let a = quantities("1.93 eV", "1.5 um", "100 nm", "1e-9 mbar");
    let b = quantities("3.0922009036199997e-19 J", "1.5e-6 m", "1e-7 m", "1e-7 Pa");
    assert_eq!(a.len(), b.len());
    for ((ka, va), (kb, vb)) in a.iter().zip(&b) {
        assert_eq!(ka, kb);
        assert!((va - vb).abs() <= 1e-12 * va.abs(), "{ka}: {va} vs {vb}");
    }
}

#[test]
fn negative_radius_is_a_config_error_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(preset("fig3")).unwrap().replace("radius = 5 um", "radius = -5 um");
    let p = write(dir.path(), "bad.conf", &text);
    let o = radtherm(&["rates", "--config", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("target.radius"), "{}", stderr(&o));
}

#[test]
fn unknown_key_and_missing_file_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(preset("fig2")).unwrap().replace("thickness", "thicknes");
    let p = write(dir.path(), "typo.conf", &text);
    let o = radtherm(&["rates", "--config", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("target.thicknes"), "{}", stderr(&o));
    let o = radtherm(&["rates", "--config", dir.path().join("absent.conf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tight_tolerance_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(preset("fig3")).unwrap() + "\n[validate]\ntolerance = 0.001\n";
    let p = write(dir.path(), "tight.conf", &text);
    let o = radtherm(&["validate", "--config", p.to_str().unwrap(), "--convention", "supp"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let o = radtherm(&["validate", "--config", preset("fig3").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn validation_csv_has_one_row_per_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let o = radtherm(&["validate", "--config", preset("fig2").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(out).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "section,quantity,exact,closed_form,relative_error,exact_relative_uncertainty,bound,pass");
    assert_eq!(rows.len(), 1 + 2 * 4);
}

#[test]
fn too_short_simulation_fails_at_runtime() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(preset("thermalize-cavity-sphere"))
        .unwrap()
        .replace("duration = 300 1/gamma", "duration = 20 1/gamma");
    let p = write(dir.path(), "short.conf", &text);
    let out = dir.path().join("t.csv");
    let o = radtherm(&["simulate", "--config", p.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn simulation_is_reproducible_and_seed_sensitive() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = preset("ringdown-bb-disk");
    let run = |name: &str, seed: &str| {
        let out = dir.path().join(name);
        let o = radtherm(&["simulate", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", seed]);
        assert!(o.status.success(), "{}", stderr(&o));
        std::fs::read(dir.path().join(name.replace(".csv", ".member3.csv"))).unwrap()
    };
    let a = run("a.csv", "11");
    assert_eq!(a, run("b.csv", "11"));
    assert_ne!(a, run("c.csv", "12"));
    let text = String::from_utf8(a).unwrap();
    assert!(text.lines().any(|l| l == "t,x,y,z,vx,vy,vz"));
}

#[test]
fn ringdown_preset_recovers_the_damping_rate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = radtherm(&["simulate", "--config", preset("ringdown-bb-disk").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let line = text.lines().find(|l| l.starts_with("damping_rate_z")).unwrap();
    let ratio: f64 = line.split("ratio ").nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    assert!((ratio - 1.0).abs() < 0.05, "{line}");
}

#[test]
fn missing_config_is_a_config_error() {
    let o = radtherm(&["rates"]);
    assert_eq!(o.status.code(), Some(2));
    let o = radtherm(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}
