//! Output formats and sinks.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;

/// Default directory for relative `--output` paths.
pub const OUTPUT_DIR_VAR: &str = "SYMCURVE_OUTPUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A CSV table; cells are preformatted strings.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self) -> io::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// 12 significant digits, `.` as decimal separator.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

pub fn csv(table: &Table) -> io::Result<String> {
    table.render()
}

/// Where rendered output goes.
pub struct Sink {
    path: Option<PathBuf>,
}

impl Sink {
    /// Relative paths are resolved against `$SYMCURVE_OUTPUT_DIR` when set.
    pub fn new(path: Option<&Path>) -> Self {
        let path = path.map(|p| match std::env::var_os(OUTPUT_DIR_VAR) {
            Some(dir) if p.is_relative() => Path::new(&dir).join(p),
            _ => p.to_path_buf(),
        });
        Sink { path }
    }

    pub fn write(&self, content: &str) -> io::Result<()> {
        match &self.path {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(dir)?;
                }
                fs::write(p, content)
            }
            None => io::stdout().lock().write_all(content.as_bytes()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(num(2.0 * std::f64::consts::PI / 3.0), "2.09439510239");
        assert_eq!(num(140.0), "140.000000000");
        assert_eq!(num(1.5e-7), "1.50000000000e-7");
        assert_eq!(num(0.0), "0");
    }
}
