//! CSV emission. All numeric fields go through one fixed scientific
//! formatter so identical configurations produce byte-identical files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use morsepack::phasespace::PhaseSpaceField;

use crate::CliError;

/// Formats numbers at a fixed precision and writes CSV files under one
/// output directory.
pub struct OutputWriter {
    dir: PathBuf,
    precision: usize,
}

impl OutputWriter {
    pub fn new(dir: &Path, precision: usize) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| {
            CliError::Io(format!("cannot create output directory {}: {e}", dir.display()))
        })?;
        Ok(Self {
            dir: dir.to_path_buf(),
            precision,
        })
    }

    pub fn fmt(&self, v: f64) -> String {
        format!("{:.*e}", self.precision, v)
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn write_text(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.path(name);
        fs::write(&path, contents)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }

    /// Plain table: one header line, then rows of formatted numbers.
    pub fn write_table(
        &self,
        name: &str,
        header: &str,
        rows: impl Iterator<Item = Vec<f64>>,
    ) -> Result<PathBuf, CliError> {
        let path = self.path(name);
        let mut out = String::new();
        out.push_str(header);
        out.push('\n');
        for row in rows {
            let cells: Vec<String> = row.iter().map(|&v| self.fmt(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        fs::write(&path, out)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }

    /// Matrix layout: header row of p values (corner cell `x`), then one row
    /// per x value with W(x, p_j) across the columns.
    pub fn write_matrix(&self, name: &str, field: &PhaseSpaceField) -> Result<PathBuf, CliError> {
        let path = self.path(name);
        let file = fs::File::create(&path)
            .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
        let mut w = std::io::BufWriter::new(file);
        let io_err = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));

        let header: Vec<String> = std::iter::once("x".to_string())
            .chain(field.p_axis().points().map(|p| self.fmt(p)))
            .collect();
        writeln!(w, "{}", header.join(",")).map_err(io_err)?;
        for (ix, x) in field.x_axis().points().enumerate() {
            let cells: Vec<String> = std::iter::once(self.fmt(x))
                .chain(field.row(ix).iter().map(|&v| self.fmt(v)))
                .collect();
            writeln!(w, "{}", cells.join(",")).map_err(io_err)?;
        }
        w.flush().map_err(io_err)?;
        Ok(path)
    }
}

/// Compact literal for an alpha value in file names (`1.4` -> "1.4").
pub fn alpha_label(alpha: f64) -> String {
    format!("{alpha}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_scientific_formatting() {
        let dir = std::env::temp_dir().join("morsepack-fmt-test");
        let w = OutputWriter::new(&dir, 6).unwrap();
        assert_eq!(w.fmt(0.1125), "1.125000e-1");
        assert_eq!(w.fmt(-48937.02), "-4.893702e4");
        assert_eq!(w.fmt(0.0), "0.000000e0");
    }

    #[test]
    fn alpha_labels_are_minimal() {
        assert_eq!(alpha_label(1.4), "1.4");
        assert_eq!(alpha_label(2.5), "2.5");
        assert_eq!(alpha_label(0.5), "0.5");
    }
}
