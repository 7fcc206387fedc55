use std::f64::consts::PI;

use proptest::prelude::*;
use radtherm_core::constants::{HBAR, K_B, PA_PER_MBAR};
use radtherm_core::geometry::{gas_damping_rate, DielectricSphere, FocusingOptics, GasEnvironment, ReflectiveDisk};
use radtherm_core::rates::*;
use radtherm_core::sources::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn cavity(temperature: f64, ratio: f64, t_r: f64, d0: f64, convention: Convention) -> Microcavity2D {
    Microcavity2D::new(CavityParams {
        temperature,
        chemical_potential: ChemicalPotential::CutoffRatio(ratio),
        longitudinal_mode: 7,
        mirror_separation: d0,
        mirror_curvature: 1.0,
        refractive_index: 1.33,
        mirror_transmission: t_r,
        cutoff_wavelength: Some(588e-9),
        convention,
    })
    .unwrap()
}

fn convention() -> impl Strategy<Value = Convention> {
    prop_oneof![Just(Convention::Supplementary), Just(Convention::MainText)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn disk_mass_and_area(r in 1e-7f64..1e-4, t in 1e-9f64..1e-5, rho in 100.0f64..2e4) {
        let d = ReflectiveDisk::from_dimensions(r, t, rho).unwrap();
        prop_assert!(rel(d.area, PI * r * r) < 1e-12);
        prop_assert!(rel(d.mass, rho * PI * r * r * t) < 1e-12);
    }

    #[test]
    fn sphere_mass_and_polarizability(r in 1e-9f64..1e-6, rho in 100.0f64..2e4, eps in 1.01f64..20.0) {
        let s = DielectricSphere::from_dimensions(r, rho, eps).unwrap();
        prop_assert!(rel(s.mass, rho * 4.0 / 3.0 * PI * r.powi(3)) < 1e-12);
        prop_assert!(s.polarizability > 0.0);
    }

    #[test]
    fn gas_damping_linear_in_pressure(log_p in -9.0f64..-3.0, r in 20e-9f64..100e-9) {
        let p = 10f64.powf(log_p) * PA_PER_MBAR;
        let s = DielectricSphere::silica(r).unwrap();
        let g1 = gas_damping_rate(&GasEnvironment::air(p, 300.0).unwrap(), &s);
        let g2 = gas_damping_rate(&GasEnvironment::air(2.0 * p, 300.0).unwrap(), &s);
        prop_assert!(rel(g2, 2.0 * g1) < 1e-6);
    }

    #[test]
    fn blackbody_disk_closure(t in 1.0f64..1e4, r in 1e-7f64..1e-4, th in 1e-9f64..1e-5, rho in 100.0f64..2e4) {
        let d = ReflectiveDisk::from_dimensions(r, th, rho).unwrap();
        let src = BlackbodySource::new(t).unwrap();
        let g = bb_disk_damping_rate(&d, &src);
        prop_assert!(rel(bb_disk_heating_rate(&d, &src) / (K_B * g), t) < 1e-12);
    }

    #[test]
    fn blackbody_power_laws(t in 1.0f64..5e3) {
        let d = ReflectiveDisk::from_dimensions(5e-6, 50e-9, 2000.0).unwrap();
        let (a, b) = (BlackbodySource::new(t).unwrap(), BlackbodySource::new(2.0 * t).unwrap());
        prop_assert!(rel(bb_disk_damping_rate(&d, &b) / bb_disk_damping_rate(&d, &a), 16.0) < 1e-12);
        prop_assert!(rel(bb_disk_heating_rate(&d, &b) / bb_disk_heating_rate(&d, &a), 32.0) < 1e-12);
    }

    #[test]
    fn cavity_disk_closure(
        t in 50.0f64..600.0,
        ratio in 0.5f64..0.999,
        t_r in 1e-6f64..0.1,
        d0 in 0.5e-6f64..5e-6,
        db in 0.0f64..90.0,
        conv in convention(),
    ) {
        let c = cavity(t, ratio, t_r, d0, conv);
        let d = ReflectiveDisk::from_dimensions(5e-6, 50e-9, 2000.0).unwrap();
        let amp = Amplifier::from_db(db).unwrap();
        let g = cavity_disk_damping_rate(&d, &c, &amp);
        prop_assert!(rel(cavity_disk_heating_rate(&d, &c, &amp) / (K_B * g), t) < 1e-12);
    }

    #[test]
    fn cavity_sphere_closure(
        t in 50.0f64..600.0,
        ratio in 0.5f64..0.999,
        r in 10e-9f64..140e-9,
        w in 0.3e-6f64..10e-6,
        db in 0.0f64..90.0,
    ) {
        let c = cavity(t, ratio, 1.5e-5, 1.5e-6, Convention::Supplementary);
        let s = DielectricSphere::silica(r).unwrap();
        let rep = cavity_sphere_rates(&s, &c, &Amplifier::from_db(db).unwrap(), &FocusingOptics::new(w).unwrap()).unwrap();
        for a in 0..3 {
            prop_assert!(rel(rep.axis_temperature(a).unwrap(), t) < 1e-12);
        }
        prop_assert_eq!(rep.damping_rate[0], rep.damping_rate[2]);
    }

    #[test]
    fn cavity_gain_linearity(db in 0.0f64..90.0, ratio in 0.5f64..0.99) {
        let c = cavity(300.0, ratio, 1.5e-5, 1.45e-6, Convention::Supplementary);
        let d = ReflectiveDisk::from_dimensions(5e-6, 50e-9, 2000.0).unwrap();
        let amp = Amplifier::from_db(db).unwrap();
        let g1 = cavity_disk_damping_rate(&d, &c, &Amplifier::unity());
        let h1 = cavity_disk_heating_rate(&d, &c, &Amplifier::unity());
        prop_assert!(rel(cavity_disk_damping_rate(&d, &c, &amp), amp.gain_linear * g1) < 1e-12);
        prop_assert!(rel(cavity_disk_heating_rate(&d, &c, &amp), amp.gain_linear * h1) < 1e-12);
    }

    #[test]
    fn chemical_potential_scaling(ratio in 0.5f64..0.95, delta in 0.0f64..0.04) {
        let a = cavity(300.0, ratio, 1.5e-5, 1.45e-6, Convention::Supplementary);
        let b = cavity(300.0, ratio + delta, 1.5e-5, 1.45e-6, Convention::Supplementary);
        let d = ReflectiveDisk::from_dimensions(5e-6, 50e-9, 2000.0).unwrap();
        let amp = Amplifier::from_db(80.0).unwrap();
        let expected = ((b.chemical_potential - a.chemical_potential) / (K_B * 300.0)).exp();
        let ratio_g = cavity_disk_damping_rate(&d, &b, &amp) / cavity_disk_damping_rate(&d, &a, &amp);
        prop_assert!(rel(ratio_g, expected) < 1e-9);
    }

    #[test]
    fn doppler_temperature_symmetry(t in 1.0f64..1e4, beta in -0.009f64..0.009) {
        let fwd = doppler_frame_temperature(t, beta, 0.0).unwrap();
        let back = doppler_frame_temperature(t, -beta, 0.0).unwrap();
        prop_assert!(rel(fwd * (1.0 + beta), t) < 1e-12);
        prop_assert!((fwd > t) == (beta < 0.0) || beta == 0.0);
        prop_assert!(rel(back * (1.0 - beta), t) < 1e-12);
    }
}

#[test]
fn argmax_over_mu_sweep_independent_of_gain() {
    let d = ReflectiveDisk::from_dimensions(5e-6, 50e-9, 2000.0).unwrap();
    let ratios: Vec<f64> = (0..20).map(|i| 0.80 + 0.01 * i as f64).collect();
    let argmax = |db: f64| {
        let amp = Amplifier::from_db(db).unwrap();
        ratios
            .iter()
            .map(|&r| cavity_disk_damping_rate(&d, &cavity(300.0, r, 1.5e-5, 1.45e-6, Convention::Supplementary), &amp))
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap()
            .0
    };
    assert_eq!(argmax(0.0), argmax(80.0));
    assert_eq!(argmax(0.0), ratios.len() - 1);
}

#[test]
fn laser_sphere_is_quarter_of_mirror() {
    let l = LaserSource::from_wavelength_power(588e-9, 1e-3).unwrap();
    let mirror = HBAR * l.angular_frequency / K_B;
    assert!(rel(laser_sphere_equilibrium_temperature(&l), mirror / 4.0) < 1e-15);
}
