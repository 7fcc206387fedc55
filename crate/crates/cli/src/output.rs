//! CSV tables: `#` metadata lines, a header with SI units in the column
//! names, then rows in `{:e}` (shortest round-trip) notation.

use std::io::Write;

use crate::{CliError, TOOL_VERSION};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<(), CliError> {
        if row.len() != self.columns.len() {
            return Err(CliError::runtime(format!(
                "row has {} cells for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut w: W, config_hash: &str, meta: &[(&str, String)]) -> Result<(), CliError> {
        writeln!(w, "# radtherm {TOOL_VERSION}")?;
        writeln!(w, "# config_hash = {config_hash}")?;
        for (k, v) in meta {
            writeln!(w, "# {k} = {v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(j) = row.iter().position(|c| !c.is_finite()) {
                return Err(CliError::runtime(format!(
                    "non-finite value in column `{}` of row {}",
                    self.columns[j],
                    i + 1
                )));
            }
            let cells: Vec<String> = row.iter().map(|c| format!("{c:e}")).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_metadata_header_and_round_trip_values() {
        let mut t = Table::new(vec!["blackbody_temperature_K".into(), "damping_time_2pi_z_s".into()]);
        t.push(vec![300.0, 1.0 / 3.0]).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf, "abcd", &[("command", "sweep".into())]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# radtherm "));
        assert_eq!(lines[1], "# config_hash = abcd");
        assert_eq!(lines[3], "blackbody_temperature_K,damping_time_2pi_z_s");
        let v: f64 = lines[4].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(v, 1.0 / 3.0);
    }

    #[test]
    fn non_finite_is_an_error() {
        let mut t = Table::new(vec!["a".into()]);
        t.push(vec![f64::NAN]).unwrap();
        assert!(t.write_csv(Vec::new(), "x", &[]).is_err());
        assert!(t.push(vec![1.0, 2.0]).is_err());
    }
}
