//! Spectral photon statistics of the light sources: blackbody, 2D dye
//! microcavity with a chemical potential, and a Poissonian laser.
//!
//! Angular frequencies are in rad/s. For the microcavity, spectral
//! functions take `omega` as the offset above the cutoff, so the photon
//! energy is ħ(ω_c + ω).

use std::f64::consts::PI;

use crate::constants::{
    db_to_linear, ev_to_joule, wavelength_to_angular_frequency, C, HBAR, K_B,
};
use crate::error::{require_positive, Error, Result};

/// Bose–Einstein occupation 1/(eˣ − 1).
pub fn bose_occupation(x: f64) -> f64 {
    1.0 / x.exp_m1()
}

/// Occupation variance relative to the mean, eˣ/(eˣ − 1).
pub fn bunching_factor(x: f64) -> f64 {
    1.0 / (-(-x).exp_m1())
}

/// Which form of the cavity formulas to use where the two published forms
/// disagree: with the refractive index (default) or the vacuum form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// Refractive index included everywhere; derived cutoff ω_c = qπc/(nD0).
    #[default]
    Supplementary,
    /// Index dropped from the disk force/damping/heating; derived cutoff ω_c = qπc/D0.
    MainText,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Supplementary => "supp",
            Convention::MainText => "main",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "supp" | "supplementary" => Some(Convention::Supplementary),
            "main" | "main-text" => Some(Convention::MainText),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlackbodySource {
    pub temperature: f64,
}

impl BlackbodySource {
    pub fn new(temperature: f64) -> Result<Self> {
        require_positive("temperature", temperature)?;
        Ok(Self { temperature })
    }

    fn reduced(&self, omega: f64) -> Result<f64> {
        require_positive("omega", omega)?;
        Ok(HBAR * omega / (K_B * self.temperature))
    }

    /// Photons per (m³ · sr · rad/s): ω²/(4π³c³) · 1/(e^{ħω/k_BT} − 1).
    pub fn spectral_number_density(&self, omega: f64) -> Result<f64> {
        let x = self.reduced(omega)?;
        Ok(omega * omega / (4.0 * PI.powi(3) * C.powi(3)) * bose_occupation(x))
    }

    /// Photon-number variance per (m³ · sr · rad/s).
    pub fn spectral_variance(&self, omega: f64) -> Result<f64> {
        let x = self.reduced(omega)?;
        Ok(self.spectral_number_density(omega)? * bunching_factor(x))
    }
}

/// Temperature of a stationary thermal source seen from a frame moving with
/// speed βc at angle θ to the photon direction (first order in β).
pub fn doppler_frame_temperature(temperature: f64, beta: f64, theta: f64) -> Result<f64> {
    if !(beta.abs() < 0.01) {
        return Err(Error::OutOfRegime(format!(
            "|beta| = {} must be < 0.01 for the low-velocity frame transform",
            beta.abs()
        )));
    }
    Ok(temperature / (1.0 + beta * theta.cos()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChemicalPotential {
    Joules(f64),
    ElectronVolts(f64),
    /// μ_c / ħω_c.
    CutoffRatio(f64),
}

/// Inputs for [`Microcavity2D::new`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    pub temperature: f64,
    pub chemical_potential: ChemicalPotential,
    pub longitudinal_mode: u32,
    pub mirror_separation: f64,
    pub mirror_curvature: f64,
    pub refractive_index: f64,
    pub mirror_transmission: f64,
    /// Vacuum cutoff wavelength; overrides the derivation from q, n and D0.
    pub cutoff_wavelength: Option<f64>,
    pub convention: Convention,
}

/// Refractive index of the dye solution when none is configured.
pub const DEFAULT_REFRACTIVE_INDEX: f64 = 1.33;

/// Dye-filled 2D microcavity holding a thermalized photon gas in the
/// transverse modes of one longitudinal mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Microcavity2D {
    pub temperature: f64,
    /// Chemical potential in joules.
    pub chemical_potential: f64,
    pub longitudinal_mode: u32,
    pub mirror_separation: f64,
    pub mirror_curvature: f64,
    pub refractive_index: f64,
    pub mirror_transmission: f64,
    pub cutoff_frequency: f64,
    pub transverse_spacing: f64,
    pub cavity_volume: f64,
    pub convention: Convention,
}

impl Microcavity2D {
    pub fn new(p: CavityParams) -> Result<Self> {
        require_positive("temperature", p.temperature)?;
        require_positive("mirror_separation", p.mirror_separation)?;
        require_positive("mirror_curvature", p.mirror_curvature)?;
        require_positive("refractive_index", p.refractive_index)?;
        if p.longitudinal_mode < 1 {
            return Err(Error::domain("longitudinal_mode", 0.0, "must be >= 1"));
        }
        let t_r = p.mirror_transmission;
        if !(0.0..1.0).contains(&t_r) {
            return Err(Error::domain("mirror_transmission", t_r, "must lie in [0, 1)"));
        }
        let d0 = p.mirror_separation;
        let r = p.mirror_curvature;
        if r / d0 <= 1e3 {
            return Err(Error::domain(
                "mirror_curvature",
                r,
                "must exceed 1e3 × mirror_separation",
            ));
        }
        let n = p.refractive_index;
        let q = f64::from(p.longitudinal_mode);
        let omega_c = match p.cutoff_wavelength {
            Some(lambda) => wavelength_to_angular_frequency(require_positive("cutoff_wavelength", lambda)?),
            None => match p.convention {
                Convention::Supplementary => q * PI * C / (n * d0),
                Convention::MainText => q * PI * C / d0,
            },
        };
        let mu = match p.chemical_potential {
            ChemicalPotential::Joules(j) => j,
            ChemicalPotential::ElectronVolts(ev) => ev_to_joule(ev),
            ChemicalPotential::CutoffRatio(ratio) => ratio * HBAR * omega_c,
        };
        if !mu.is_finite() && mu != f64::NEG_INFINITY {
            return Err(Error::domain("chemical_potential", mu, "must be a number"));
        }
        if mu >= HBAR * omega_c {
            return Err(Error::Pole(format!(
                "chemical potential {:.4e} J at or above cutoff energy {:.4e} J",
                mu,
                HBAR * omega_c
            )));
        }
        Ok(Self {
            temperature: p.temperature,
            chemical_potential: mu,
            longitudinal_mode: p.longitudinal_mode,
            mirror_separation: d0,
            mirror_curvature: r,
            refractive_index: n,
            mirror_transmission: t_r,
            cutoff_frequency: omega_c,
            transverse_spacing: 2.0 * PI * C / (n * (d0 * r / 2.0).sqrt()),
            cavity_volume: PI * d0 * d0 * r / 2.0,
            convention: p.convention,
        })
    }

    pub fn kt(&self) -> f64 {
        K_B * self.temperature
    }

    /// ħω_c / k_BT.
    pub fn reduced_cutoff(&self) -> f64 {
        HBAR * self.cutoff_frequency / self.kt()
    }

    pub fn chemical_potential_ratio(&self) -> f64 {
        self.chemical_potential / (HBAR * self.cutoff_frequency)
    }

    /// exp[(μ_c − ħω_c)/k_BT], the occupation of the cutoff mode in the Boltzmann regime.
    pub fn boltzmann_cutoff_factor(&self) -> f64 {
        ((self.chemical_potential - HBAR * self.cutoff_frequency) / self.kt()).exp()
    }

    /// Index factor used by the disk force/damping/heating forms.
    pub fn disk_index_factor(&self) -> f64 {
        match self.convention {
            Convention::Supplementary => self.refractive_index,
            Convention::MainText => 1.0,
        }
    }

    /// V_R T_r / (n q D0): emission prefactor shared by every cavity flux.
    pub fn emission_prefactor(&self) -> f64 {
        self.cavity_volume * self.mirror_transmission
            / (self.refractive_index * f64::from(self.longitudinal_mode) * self.mirror_separation)
    }

    /// Reduced occupation argument (ħ(ω_c+ω) − μ_c)/k_BT.
    pub fn occupation_argument(&self, omega: f64) -> f64 {
        (HBAR * (self.cutoff_frequency + omega) - self.chemical_potential) / self.kt()
    }

    fn check_offset(&self, omega: f64) -> Result<()> {
        if omega.is_finite() && omega >= 0.0 {
            Ok(())
        } else {
            Err(Error::domain("omega", omega, "offset above cutoff must be >= 0"))
        }
    }

    /// Energy density (J/m³) from the discrete transverse-mode sum over the
    /// first `n_max` shells m = n_x + n_y (each level carries 2(m+1) states).
    pub fn energy_density_modesum(&self, n_max: usize) -> Result<f64> {
        if n_max < 1 {
            return Err(Error::domain("n_max", 0.0, "must be >= 1"));
        }
        let spacing = self.transverse_spacing;
        if self.chemical_potential >= HBAR * (self.cutoff_frequency + spacing) {
            return Err(Error::Pole("chemical potential reaches the lowest transverse mode".into()));
        }
        let mut sum = 0.0;
        for m in 0..n_max {
            let k = (m + 1) as f64;
            let energy = HBAR * (self.cutoff_frequency + k * spacing);
            let x = (energy - self.chemical_potential) / self.kt();
            sum += 2.0 * k * energy * bose_occupation(x);
        }
        Ok(sum / self.cavity_volume)
    }

    /// Continuum spectral energy density, J/(m³ · rad/s).
    pub fn energy_density_continuum(&self, omega: f64) -> Result<f64> {
        self.check_offset(omega)?;
        let wc = self.cutoff_frequency;
        let q = f64::from(self.longitudinal_mode);
        Ok(wc * omega / (q * PI * PI * C.powi(3))
            * HBAR
            * (wc + omega)
            * bose_occupation(self.occupation_argument(omega)))
    }

    /// Ratio between the continuum-form prefactor ω_c/(qπ²c³) and the
    /// density-of-states prefactor 2/(V_R Ω²) that the mode sum tends to.
    pub fn continuum_dos_ratio(&self) -> f64 {
        let wc = self.cutoff_frequency;
        let q = f64::from(self.longitudinal_mode);
        let continuum = wc / (q * PI * PI * C.powi(3));
        let discrete = 2.0 / (self.cavity_volume * self.transverse_spacing.powi(2));
        continuum / discrete
    }

    /// Photons escaping per (s · sr · rad/s), full Bose–Einstein form.
    pub fn emission_rate(&self, omega: f64) -> Result<f64> {
        self.check_offset(omega)?;
        Ok(self.emission_shape(omega) * bose_occupation(self.occupation_argument(omega)))
    }

    /// Emission rate with the occupation replaced by its Boltzmann tail
    /// exp[μ_c/k_BT]·exp[−ħ(ω_c+ω)/k_BT].
    pub fn emission_rate_boltzmann(&self, omega: f64) -> Result<f64> {
        self.check_offset(omega)?;
        Ok(self.emission_shape(omega) * (-self.occupation_argument(omega)).exp())
    }

    fn emission_shape(&self, omega: f64) -> f64 {
        self.emission_prefactor() * self.cutoff_frequency * omega / (4.0 * PI.powi(3) * C * C)
    }

    /// Integrand of the output power, W/(rad/s), in the Boltzmann form whose
    /// integral is [`Self::output_power`].
    pub fn output_power_integrand(&self, omega: f64) -> f64 {
        2.0 * PI * self.emission_shape(omega) * HBAR * (self.cutoff_frequency + omega)
            * (-self.occupation_argument(omega)).exp()
    }

    /// Same integrand with the full Bose–Einstein occupation.
    pub fn output_power_integrand_bose(&self, omega: f64) -> f64 {
        2.0 * PI * self.emission_shape(omega) * HBAR * (self.cutoff_frequency + omega)
            * bose_occupation(self.occupation_argument(omega))
    }

    /// Closed-form output power (W) through one mirror.
    pub fn output_power(&self) -> f64 {
        let kt = self.kt();
        let wc = self.cutoff_frequency;
        let q = f64::from(self.longitudinal_mode);
        self.boltzmann_cutoff_factor() * self.cavity_volume * self.mirror_transmission * wc * kt * kt
            * (2.0 * kt + HBAR * wc)
            / (2.0 * q * self.refractive_index * self.mirror_separation * PI * PI * HBAR * HBAR * C * C)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplifier {
    pub gain_db: f64,
    pub gain_linear: f64,
}

impl Amplifier {
    pub fn from_db(gain_db: f64) -> Result<Self> {
        if !(gain_db.is_finite() && gain_db >= 0.0) {
            return Err(Error::domain("gain", gain_db, "must be >= 0 dB"));
        }
        Ok(Self {
            gain_db,
            gain_linear: db_to_linear(gain_db),
        })
    }

    pub fn unity() -> Self {
        Self {
            gain_db: 0.0,
            gain_linear: 1.0,
        }
    }
}

/// Single-frequency laser with Poissonian photon statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserSource {
    pub angular_frequency: f64,
    /// Mean photons per second in the beam.
    pub photon_rate: f64,
}

impl LaserSource {
    pub fn new(angular_frequency: f64, photon_rate: f64) -> Result<Self> {
        require_positive("angular_frequency", angular_frequency)?;
        require_positive("photon_rate", photon_rate)?;
        Ok(Self {
            angular_frequency,
            photon_rate,
        })
    }

    pub fn from_wavelength_power(wavelength: f64, power: f64) -> Result<Self> {
        require_positive("wavelength", wavelength)?;
        require_positive("power", power)?;
        let omega = wavelength_to_angular_frequency(wavelength);
        Self::new(omega, power / (HBAR * omega))
    }

    pub fn power(&self) -> f64 {
        self.photon_rate * HBAR * self.angular_frequency
    }
}

/// Intensity (W/m²) of the amplified cavity output focused onto the spot.
pub fn amplified_intensity(
    cav: &Microcavity2D,
    amp: &Amplifier,
    optics: &crate::geometry::FocusingOptics,
) -> f64 {
    amp.gain_linear * cav.output_power() / optics.spot_area
}
