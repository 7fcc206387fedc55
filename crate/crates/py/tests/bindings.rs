use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) {
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(radtherm::radtherm)(py);
        let globals = PyDict::new(py);
        globals.set_item("radtherm", m).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        py.run(&code, Some(&globals), None).unwrap_or_else(|e| panic!("{e}"));
    });
}

#[test]
fn blackbody_disk_rates() {
    run(r#"
disk = radtherm.Target.disk(5e-6, 50e-9)
r = radtherm.rates(radtherm.Source.blackbody(5000.0), disk)
assert abs(r["damping_time_2pi"] / 86400 - 4.61) < 0.01, r
assert r["equilibrium_temperature"] == 5000.0
assert r["damping_rate"][0] == 0.0
"#);
}

#[test]
fn domain_errors_become_value_errors() {
    run(r#"
try:
    radtherm.Target.sphere(-1e-7)
    raise AssertionError("accepted")
except ValueError as e:
    assert "radius" in str(e)
try:
    radtherm.rates(radtherm.Source.blackbody(300.0), radtherm.Target.sphere(1e-7))
    raise AssertionError("accepted")
except ValueError as e:
    assert "pairing" in str(e)
"#);
}

#[test]
fn cavity_sphere_is_isotropic_and_simulates() {
    run(r#"
cav = radtherm.Source.microcavity(300.0, 1.5e-6, 1.0, 1.5e-5, mu_ratio=0.92, cutoff_wavelength=588e-9)
sphere = radtherm.Target.sphere(1e-7)
r = radtherm.rates(cav, sphere, gain_db=70.0, spot_radius=1e-6)
assert len(set(r["damping_rate"])) == 1
g = r["damping_rate"][0] * 1e4
t = radtherm.simulate(cav, sphere, 10.0 / g, 0.05 / g, gain_db=70.0, spot_radius=1e-6, flux_boost=1e4, seed=3)
assert len(t) == 201 and t.seed != 0
assert t.to_csv().splitlines()[6] == "t,x,y,z,vx,vy,vz"
"#);
}
