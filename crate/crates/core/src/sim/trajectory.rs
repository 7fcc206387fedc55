//! Recorded trajectories and their CSV form.
//!
//! Files start with `#` comment lines (`# key = value`), followed by the
//! header `t,x,y,z,vx,vy,vz` and one row per recorded step in SI units.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub const TRAJECTORY_HEADER: &str = "t,x,y,z,vx,vy,vz";

/// Physical context needed by the estimators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryMetadata {
    pub mass: f64,
    pub trap_frequency: [f64; 3],
    /// Total damping per axis used to set block lengths, rad/s.
    pub damping_rate: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub positions: Vec<[f64; 3]>,
    pub velocities: Vec<[f64; 3]>,
    pub seed: u64,
    pub config_hash: String,
    pub metadata: TrajectoryMetadata,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Spacing of the recorded grid.
    pub fn sample_interval(&self) -> Option<f64> {
        (self.times.len() >= 2).then(|| self.times[1] - self.times[0])
    }

    /// Total energy of one axis at each recorded sample, J.
    pub fn axis_energy(&self, axis: usize) -> Vec<f64> {
        let m = self.metadata.mass;
        let w2 = self.metadata.trap_frequency[axis].powi(2);
        self.positions
            .iter()
            .zip(&self.velocities)
            .map(|(x, v)| 0.5 * m * (v[axis] * v[axis] + w2 * x[axis] * x[axis]))
            .collect()
    }

    pub fn write_csv<W: Write>(&self, mut w: W, tool_version: &str) -> Result<()> {
        let md = &self.metadata;
        writeln!(w, "# radtherm {tool_version}")?;
        writeln!(w, "# config_hash = {}", self.config_hash)?;
        writeln!(w, "# seed = {}", self.seed)?;
        writeln!(w, "# mass_kg = {:e}", md.mass)?;
        writeln!(w, "# trap_frequency_rad_s = {}", join3(&md.trap_frequency))?;
        writeln!(w, "# damping_rate_rad_s = {}", join3(&md.damping_rate))?;
        writeln!(w, "{TRAJECTORY_HEADER}")?;
        for i in 0..self.len() {
            let (x, v) = (self.positions[i], self.velocities[i]);
            let row = [self.times[i], x[0], x[1], x[2], v[0], v[1], v[2]];
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::Statistics(format!("non-finite state at t = {:e}", self.times[i])));
            }
            let cells: Vec<String> = row.iter().map(|c| format!("{c:e}")).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut seed = None;
        let mut hash = None;
        let mut mass = None;
        let mut trap = None;
        let mut damping = None;
        let mut header_seen = false;
        let mut times = Vec::new();
        let mut positions = Vec::new();
        let mut velocities = Vec::new();
        for (n, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = n + 1;
            let bad = |what: &str| Error::Io(format!("line {lineno}: {what}"));
            if let Some(c) = line.strip_prefix('#') {
                if let Some((k, v)) = c.split_once('=') {
                    let v = v.trim();
                    match k.trim() {
                        "config_hash" => hash = Some(v.to_string()),
                        "seed" => seed = Some(v.parse::<u64>().map_err(|_| bad("bad seed"))?),
                        "mass_kg" => mass = Some(v.parse::<f64>().map_err(|_| bad("bad mass"))?),
                        "trap_frequency_rad_s" => trap = Some(parse3(v).ok_or_else(|| bad("bad trap frequency"))?),
                        "damping_rate_rad_s" => damping = Some(parse3(v).ok_or_else(|| bad("bad damping rate"))?),
                        _ => {}
                    }
                }
                continue;
            }
            if !header_seen {
                if line.trim() != TRAJECTORY_HEADER {
                    return Err(bad("expected header t,x,y,z,vx,vy,vz"));
                }
                header_seen = true;
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let vals: Vec<f64> = line
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("non-numeric cell"))?;
            if vals.len() != 7 {
                return Err(bad("expected 7 columns"));
            }
            times.push(vals[0]);
            positions.push([vals[1], vals[2], vals[3]]);
            velocities.push([vals[4], vals[5], vals[6]]);
        }
        if !header_seen {
            return Err(Error::Io("missing header row".into()));
        }
        let missing = |k: &str| Error::Io(format!("missing metadata line '# {k} = …'"));
        Ok(Self {
            times,
            positions,
            velocities,
            seed: seed.ok_or_else(|| missing("seed"))?,
            config_hash: hash.ok_or_else(|| missing("config_hash"))?,
            metadata: TrajectoryMetadata {
                mass: mass.ok_or_else(|| missing("mass_kg"))?,
                trap_frequency: trap.ok_or_else(|| missing("trap_frequency_rad_s"))?,
                damping_rate: damping.ok_or_else(|| missing("damping_rate_rad_s"))?,
            },
        })
    }
}

fn join3(v: &[f64; 3]) -> String {
    format!("{:e} {:e} {:e}", v[0], v[1], v[2])
}

fn parse3(s: &str) -> Option<[f64; 3]> {
    let v: Vec<f64> = s.split_whitespace().map(|t| t.parse().ok()).collect::<Option<_>>()?;
    v.try_into().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Trajectory {
        Trajectory {
            times: vec![0.0, 0.1, 0.2],
            positions: vec![[0.0, 1e-9, -2.5e-7], [1.0 / 3.0, 0.0, 0.0], [0.0; 3]],
            velocities: vec![[1e-3, 0.0, 0.0], [0.0, -7.0e-12, 0.0], [0.0, 0.0, std::f64::consts::PI]],
            seed: 42,
            config_hash: "00ff00ff00ff00ff".into(),
            metadata: TrajectoryMetadata {
                mass: 8.377580409572781e-18,
                trap_frequency: [0.0, 1.0, 2.0],
                damping_rate: [1e-3, 1e-3, 2e-3],
            },
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let t = sample();
        let mut buf = Vec::new();
        t.write_csv(&mut buf, "0.1.0").unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("\nt,x,y,z,vx,vy,vz\n"));
        assert!(text.contains("# seed = 42"));
        let back = Trajectory::read_csv(std::io::Cursor::new(buf)).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn nan_rejected() {
        let mut t = sample();
        t.velocities[1][0] = f64::NAN;
        assert!(t.write_csv(Vec::new(), "x").is_err());
    }

    #[test]
    fn malformed_input() {
        let r = Trajectory::read_csv(std::io::Cursor::new("# seed = 1\nt,x\n"));
        assert!(matches!(r, Err(Error::Io(m)) if m.contains("line 2")));
    }
}
