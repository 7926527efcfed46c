//! CSV and manifest emission. All floating-point fields are printed with
//! twelve significant digits in scientific notation, which round-trips
//! losslessly at that precision; files use LF line endings and UTF-8.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Twelve significant digits, scientific notation.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

pub struct CsvWriter {
    writer: BufWriter<File>,
}

impl CsvWriter {
    pub fn create(path: &Path, header: &str) -> std::io::Result<Self> {
        let mut writer = BufWriter::new(File::create(path)?);
        writeln!(writer, "{header}")?;
        Ok(Self { writer })
    }

    pub fn row(&mut self, fields: &[String]) -> std::io::Result<()> {
        writeln!(self.writer, "{}", fields.join(","))
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.writer.flush()
    }
}

/// Collects the provenance of one run and writes the `<out>.manifest`
/// sidecar. Every data file a run emits is listed in exactly one manifest.
pub struct Manifest {
    entries: Vec<(String, String)>,
    started: Instant,
}

impl Manifest {
    pub fn begin() -> Self {
        let command = std::env::args().collect::<Vec<_>>().join(" ");
        Self {
            entries: vec![
                ("command".into(), command),
                ("version".into(), env!("CARGO_PKG_VERSION").into()),
            ],
            started: Instant::now(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl std::fmt::Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn push_spec(&mut self, spec: &bellsim::quadrature::QuadratureSpec) {
        self.push("radial_nodes", spec.n_radial);
        self.push("azimuthal_nodes", spec.n_azimuthal);
        self.push("r_max_in_widths", spec.r_max_in_widths);
        self.push("target_tol", fmt12(spec.target_tol));
    }

    /// Writes the sidecar next to `out` (as `<out>.manifest`).
    pub fn write(mut self, out: &Path) -> std::io::Result<()> {
        self.push(
            "wall_clock_seconds",
            format!("{:.3}", self.started.elapsed().as_secs_f64()),
        );
        let path = manifest_path(out);
        let mut writer = BufWriter::new(File::create(path)?);
        for (key, value) in &self.entries {
            writeln!(writer, "{key}={value}")?;
        }
        writer.flush()
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(".manifest");
    PathBuf::from(name)
}
