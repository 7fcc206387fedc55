//! Sectioned `key = value unit` configuration files.
//!
//! ```text
//! # comment
//! [source]
//! kind = microcavity
//! temperature = 300 K
//! chemical_potential = 0.92 ratio
//! mirror_separation = 1.45 um
//! ```
//!
//! A value is either free text (`kind = disk`) or one or more numbers
//! followed by an optional unit. Every key must be consumed by the reader
//! that interprets the file; leftovers are reported as unknown.

use std::collections::BTreeMap;

use radtherm_core::constants::{ATOMIC_MASS_UNIT, ELECTRON_VOLT, PA_PER_MBAR, SECONDS_PER_DAY, SECONDS_PER_YEAR};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub raw: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub line: usize,
    entries: Vec<Entry>,
    used: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Document {
    sections: Vec<Section>,
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut doc = Document::default();
        for (i, raw_line) in text.lines().enumerate() {
            let line = i + 1;
            let content = match raw_line.find('#') {
                Some(p) => &raw_line[..p],
                None => raw_line,
            }
            .trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .map(str::trim)
                    .filter(|n| is_ident(n))
                    .ok_or_else(|| CliError::config(format!("line {line}: malformed section header `{content}`")))?;
                if doc.sections.iter().any(|s| s.name == name) {
                    return Err(CliError::config(format!("line {line}: duplicate section [{name}]")));
                }
                doc.sections.push(Section { name: name.to_string(), line, entries: Vec::new(), used: Vec::new() });
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| CliError::config(format!("line {line}: expected `key = value`, got `{content}`")))?;
            let key = key.trim();
            let value = value.trim();
            let section = doc
                .sections
                .last_mut()
                .ok_or_else(|| CliError::config(format!("line {line}: `{key}` appears before any [section]")))?;
            if !is_ident(key) {
                return Err(CliError::config(format!("line {line}: invalid key `{key}`")));
            }
            if value.is_empty() {
                return Err(CliError::config(format!("line {line}: `{}.{key}` has no value", section.name)));
            }
            if section.entries.iter().any(|e| e.key == key) {
                return Err(CliError::config(format!("line {line}: duplicate key `{}.{key}`", section.name)));
            }
            section.entries.push(Entry { key: key.to_string(), raw: value.to_string(), line });
            section.used.push(false);
        }
        Ok(doc)
    }

    pub fn section_names(&self) -> impl Iterator<Item = &str> {
        self.sections.iter().map(|s| s.name.as_str())
    }

    pub fn has(&self, name: &str) -> bool {
        self.sections.iter().any(|s| s.name == name)
    }

    pub fn section(&mut self, name: &str) -> Option<&mut Section> {
        self.sections.iter_mut().find(|s| s.name == name)
    }

    /// Rejects sections not in `known` and keys nobody consumed.
    pub fn finish(&self, known: &[&str]) -> Result<(), CliError> {
        for s in &self.sections {
            if !known.contains(&s.name.as_str()) {
                return Err(CliError::config(format!(
                    "line {}: unknown section [{}] (expected one of: {})",
                    s.line,
                    s.name,
                    known.join(", ")
                )));
            }
            if let Some((e, _)) = s.entries.iter().zip(&s.used).find(|(_, u)| !**u) {
                return Err(CliError::config(format!("line {}: unknown key `{}.{}`", e.line, s.name, e.key)));
            }
        }
        Ok(())
    }

    /// Canonical text of every entry, sorted, for hashing.
    pub fn canonical(&self) -> BTreeMap<String, String> {
        self.sections
            .iter()
            .flat_map(|s| s.entries.iter().map(move |e| (format!("{}.{}", s.name, e.key), e.raw.clone())))
            .collect()
    }
}

/// Physical dimension of a configured quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Length,
    Temperature,
    Energy,
    Pressure,
    Density,
    Power,
    Time,
    /// Angular rate, rad/s.
    Rate,
    Velocity,
    Mass,
    Viscosity,
    Dimensionless,
}

impl Dim {
    fn si_unit(self) -> &'static str {
        match self {
            Dim::Length => "m",
            Dim::Temperature => "K",
            Dim::Energy => "J",
            Dim::Pressure => "Pa",
            Dim::Density => "kg/m^3",
            Dim::Power => "W",
            Dim::Time => "s",
            Dim::Rate => "rad/s",
            Dim::Velocity => "m/s",
            Dim::Mass => "kg",
            Dim::Viscosity => "Pa*s",
            Dim::Dimensionless => "(none)",
        }
    }
}

/// Multiplier taking `unit` to SI for dimension `dim`.
pub fn unit_factor(dim: Dim, unit: Option<&str>) -> Option<f64> {
    let Some(u) = unit else {
        return Some(1.0);
    };
    let f = match (dim, u) {
        (Dim::Length, "m") => 1.0,
        (Dim::Length, "mm") => 1e-3,
        (Dim::Length, "um" | "µm" | "μm") => 1e-6,
        (Dim::Length, "nm") => 1e-9,
        (Dim::Temperature, "K") => 1.0,
        (Dim::Energy, "J") => 1.0,
        (Dim::Energy, "eV") => ELECTRON_VOLT,
        (Dim::Energy, "meV") => 1e-3 * ELECTRON_VOLT,
        (Dim::Pressure, "Pa") => 1.0,
        (Dim::Pressure, "mbar" | "mBar") => PA_PER_MBAR,
        (Dim::Pressure, "bar") => 1e3 * PA_PER_MBAR,
        (Dim::Density, "kg/m^3" | "kg/m3") => 1.0,
        (Dim::Density, "g/cm^3" | "g/cm3") => 1e3,
        (Dim::Power, "W") => 1.0,
        (Dim::Power, "mW") => 1e-3,
        (Dim::Power, "uW" | "µW" | "μW") => 1e-6,
        (Dim::Power, "nW") => 1e-9,
        (Dim::Time, "s") => 1.0,
        (Dim::Time, "ms") => 1e-3,
        (Dim::Time, "us" | "µs" | "μs") => 1e-6,
        (Dim::Time, "days") => SECONDS_PER_DAY,
        (Dim::Time, "years") => SECONDS_PER_YEAR,
        (Dim::Rate, "rad/s" | "1/s") => 1.0,
        (Dim::Rate, "Hz") => 2.0 * std::f64::consts::PI,
        (Dim::Velocity, "m/s") => 1.0,
        (Dim::Mass, "kg") => 1.0,
        (Dim::Mass, "u" | "amu") => ATOMIC_MASS_UNIT,
        (Dim::Viscosity, "Pa*s" | "Pa.s") => 1.0,
        _ => return None,
    };
    Some(f)
}

/// Applies `factor`, dividing by the exact power of ten for sub-unit
/// prefixes so that `5 um` is exactly `5e-6`.
pub(crate) fn to_si(value: f64, factor: f64) -> f64 {
    let inverse = (1.0 / factor).round();
    if factor < 1.0 && (inverse.log10().round() - inverse.log10()).abs() < 1e-12 {
        value / inverse
    } else {
        value * factor
    }
}

/// Numbers and trailing unit of one value.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantity {
    pub values: Vec<f64>,
    pub unit: Option<String>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<Entry> {
        let i = self.entries.iter().position(|e| e.key == key)?;
        self.used[i] = true;
        Some(self.entries[i].clone())
    }

    pub fn path(&self, key: &str) -> String {
        format!("{}.{}", self.name, key)
    }

    fn err(&self, e: &Entry, msg: impl std::fmt::Display) -> CliError {
        CliError::config(format!("line {}: `{}`: {msg}", e.line, self.path(&e.key)))
    }

    pub fn text(&mut self, key: &str) -> Option<String> {
        self.take(key).map(|e| e.raw)
    }

    pub fn require_text(&mut self, key: &str) -> Result<String, CliError> {
        self.text(key).ok_or_else(|| CliError::config(format!("missing `{}`", self.path(key))))
    }

    /// Raw numbers and unit without conversion.
    pub fn quantity(&mut self, key: &str) -> Result<Option<Quantity>, CliError> {
        let Some(e) = self.take(key) else {
            return Ok(None);
        };
        let tokens: Vec<&str> = e.raw.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
        let mut values = Vec::new();
        let mut unit = None;
        for (i, t) in tokens.iter().enumerate() {
            match t.parse::<f64>() {
                Ok(v) if unit.is_none() => {
                    if !v.is_finite() {
                        return Err(self.err(&e, format!("non-finite number `{t}`")));
                    }
                    values.push(v)
                }
                _ if i == tokens.len() - 1 && !values.is_empty() => unit = Some(t.to_string()),
                _ => return Err(self.err(&e, format!("expected numbers then an optional unit, got `{}`", e.raw))),
            }
        }
        if values.is_empty() {
            return Err(self.err(&e, format!("expected a number, got `{}`", e.raw)));
        }
        Ok(Some(Quantity { values, unit }))
    }

    /// Values converted to SI, with the count checked when `count` is given.
    pub fn si_values(&mut self, key: &str, dim: Dim, count: Option<usize>) -> Result<Option<Vec<f64>>, CliError> {
        let line = self.entries.iter().find(|e| e.key == key).map(|e| e.line).unwrap_or(0);
        let Some(q) = self.quantity(key)? else {
            return Ok(None);
        };
        let path = self.path(key);
        if let Some(n) = count {
            if q.values.len() != n {
                return Err(CliError::config(format!(
                    "line {line}: `{path}` needs {n} value(s), got {}",
                    q.values.len()
                )));
            }
        }
        let f = unit_factor(dim, q.unit.as_deref()).ok_or_else(|| {
            CliError::config(format!(
                "line {line}: `{path}`: unit `{}` is not a {:?} unit (SI: {})",
                q.unit.clone().unwrap_or_default(),
                dim,
                dim.si_unit()
            ))
        })?;
        Ok(Some(q.values.iter().map(|&v| to_si(v, f)).collect()))
    }

    pub fn si(&mut self, key: &str, dim: Dim) -> Result<Option<f64>, CliError> {
        Ok(self.si_values(key, dim, Some(1))?.map(|v| v[0]))
    }

    pub fn require_si(&mut self, key: &str, dim: Dim) -> Result<f64, CliError> {
        self.si(key, dim)?.ok_or_else(|| CliError::config(format!("missing `{}`", self.path(key))))
    }

    pub fn integer(&mut self, key: &str) -> Result<Option<u64>, CliError> {
        let Some(e) = self.take(key) else {
            return Ok(None);
        };
        e.raw.parse::<u64>().map(Some).map_err(|_| self.err(&e, format!("expected a non-negative integer, got `{}`", e.raw)))
    }

    pub fn boolean(&mut self, key: &str) -> Result<Option<bool>, CliError> {
        let Some(e) = self.take(key) else {
            return Ok(None);
        };
        match e.raw.as_str() {
            "true" | "on" | "yes" => Ok(Some(true)),
            "false" | "off" | "no" => Ok(Some(false)),
            other => Err(self.err(&e, format!("expected on/off, got `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
# leading comment
[target]
kind = disk          # trailing comment
radius = 5 um
trap = 1, 2, 3 Hz
";

    #[test]
    fn parses_sections_values_and_units() {
        let mut d = Document::parse(SAMPLE).unwrap();
        let t = d.section("target").unwrap();
        assert_eq!(t.text("kind").as_deref(), Some("disk"));
        assert_eq!(t.require_si("radius", Dim::Length).unwrap(), 5e-6);
        let w = t.si_values("trap", Dim::Rate, Some(3)).unwrap().unwrap();
        assert!((w[2] - 6.0 * std::f64::consts::PI).abs() < 1e-15);
        d.finish(&["target"]).unwrap();
    }

    #[test]
    fn unknown_key_reported_with_path() {
        let mut d = Document::parse("[target]\nkind = disk\nradiuss = 1 m\n").unwrap();
        d.section("target").unwrap().text("kind");
        let e = d.finish(&["target"]).unwrap_err().to_string();
        assert!(e.contains("target.radiuss") && e.contains("line 3"), "{e}");
    }

    #[test]
    fn unknown_section_and_wrong_unit() {
        let d = Document::parse("[targte]\n").unwrap();
        assert!(d.finish(&["target"]).unwrap_err().to_string().contains("[targte]"));
        let mut d = Document::parse("[target]\nradius = 5 K\n").unwrap();
        let e = d.section("target").unwrap().si("radius", Dim::Length).unwrap_err().to_string();
        assert!(e.contains("target.radius") && e.contains("`K`"), "{e}");
    }

    #[test]
    fn malformed_lines() {
        assert!(Document::parse("radius = 1\n").is_err());
        assert!(Document::parse("[a]\nno equals\n").is_err());
        assert!(Document::parse("[a]\nx = 1\nx = 2\n").is_err());
        assert!(Document::parse("[a\n").is_err());
        let mut d = Document::parse("[a]\nx = 1 2 m 3\n").unwrap();
        assert!(d.section("a").unwrap().quantity("x").is_err());
        let mut d = Document::parse("[a]\nx = nan\n").unwrap();
        assert!(d.section("a").unwrap().quantity("x").is_err());
    }

    #[test]
    fn unit_equivalences_exact() {
        assert_eq!(unit_factor(Dim::Pressure, Some("mbar")), Some(100.0));
        assert_eq!(unit_factor(Dim::Energy, Some("eV")), Some(ELECTRON_VOLT));
        assert_eq!(unit_factor(Dim::Length, Some("nm")), Some(1e-9));
        assert_eq!(unit_factor(Dim::Length, None), Some(1.0));
        assert_eq!(unit_factor(Dim::Length, Some("eV")), None);
    }
}
