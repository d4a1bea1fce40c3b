//! Artifact writing: number formatting, atomic files, run manifests.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Number of significant digits in default output.
pub const SIGNIFICANT_DIGITS: usize = 6;

#[derive(Debug, Clone, Copy)]
pub struct NumberFormat {
    pub full_precision: bool,
}

impl NumberFormat {
    pub fn format(&self, x: f64) -> String {
        if self.full_precision {
            format!("{x}")
        } else {
            significant(x, SIGNIFICANT_DIGITS)
        }
    }
}

/// `x` rounded to `digits` significant digits, in positional notation when
/// the magnitude is moderate and scientific notation otherwise.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    // exponent after rounding, so 9.999995 → 10.0000 is handled
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        sci
    }
}

/// Write `path` through a temporary sibling and rename it into place.
pub fn write_atomic(path: &Path, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("artifact");
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    let result = (|| {
        let file = fs::File::create(&tmp)?;
        let mut w = BufWriter::new(file);
        body(&mut w)?;
        w.flush()?;
        w.into_inner().map_err(|e| e.into_error())?.sync_all()
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

pub fn file_digest(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Resolved job description recorded next to every set of artifacts.
#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub subcommand: String,
    pub settings: Vec<(String, String)>,
    pub inputs: Vec<(PathBuf, String)>,
}

impl Manifest {
    pub fn new(subcommand: &str) -> Self {
        Manifest { subcommand: subcommand.into(), settings: Vec::new(), inputs: Vec::new() }
    }

    pub fn setting(&mut self, key: impl Into<String>, value: impl ToString) {
        self.settings.push((key.into(), value.to_string()));
    }

    pub fn input(&mut self, path: &Path) -> Result<()> {
        let digest = file_digest(path)?;
        self.inputs.push((path.to_path_buf(), digest));
        Ok(())
    }

    pub fn render(&self) -> String {
        let mut s = format!("subcommand={}\n", self.subcommand);
        for (k, v) in &self.settings {
            s.push_str(&format!("{k}={v}\n"));
        }
        for (p, d) in &self.inputs {
            s.push_str(&format!("input.sha256={d} {}\n", p.display()));
        }
        s
    }

    /// Write the manifest, warning on stderr when an existing manifest at
    /// the same place describes a different job.
    pub fn write(&self, path: &Path) -> Result<()> {
        let text = self.render();
        if let Ok(previous) = fs::read_to_string(path) {
            if previous != text {
                eprintln!(
                    "warning: {} describes a different job (config or input digests changed); overwriting",
                    path.display()
                );
            }
        }
        write_atomic(path, |w| w.write_all(text.as_bytes()))
    }
}
