//! Source and target variants, and the bundle that pairs them.

use crate::geometry::{DielectricSphere, FocusingOptics, GasEnvironment, ReflectiveDisk};
use crate::sources::{Amplifier, BlackbodySource, LaserSource, Microcavity2D};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    Blackbody(BlackbodySource),
    Microcavity(Microcavity2D),
    Laser(LaserSource),
}

impl Source {
    pub fn kind(&self) -> &'static str {
        match self {
            Source::Blackbody(_) => "blackbody",
            Source::Microcavity(_) => "microcavity",
            Source::Laser(_) => "laser",
        }
    }

    /// Source temperature for thermal sources.
    pub fn temperature(&self) -> Option<f64> {
        match self {
            Source::Blackbody(b) => Some(b.temperature),
            Source::Microcavity(c) => Some(c.temperature),
            Source::Laser(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Disk(ReflectiveDisk),
    Sphere(DielectricSphere),
}

impl Target {
    pub fn kind(&self) -> &'static str {
        match self {
            Target::Disk(_) => "disk",
            Target::Sphere(_) => "sphere",
        }
    }

    pub fn mass(&self) -> f64 {
        match self {
            Target::Disk(d) => d.mass,
            Target::Sphere(s) => s.mass,
        }
    }
}

/// A fully specified physical configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub source: Source,
    pub target: Target,
    pub amplifier: Amplifier,
    pub optics: Option<FocusingOptics>,
    pub gas: Option<GasEnvironment>,
}

impl Scenario {
    pub fn new(source: Source, target: Target) -> Self {
        Self {
            source,
            target,
            amplifier: Amplifier::unity(),
            optics: None,
            gas: None,
        }
    }

    pub fn with_amplifier(mut self, amplifier: Amplifier) -> Self {
        self.amplifier = amplifier;
        self
    }

    pub fn with_optics(mut self, optics: FocusingOptics) -> Self {
        self.optics = Some(optics);
        self
    }

    pub fn with_gas(mut self, gas: GasEnvironment) -> Self {
        self.gas = Some(gas);
        self
    }
}
