//! File input and output helpers shared by the CLI and the experiments.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// First line of every CSV the tool writes.
pub const CSV_VERSION: &str = "# torus-equidist v1";

/// Twelve significant digits, exponent form.
pub fn num(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))
}

/// A polynomial file: one `d: c_0 ... c_d` line, '#' comments allowed.
pub fn read_polynomial(path: &Path) -> Result<IntPolynomial> {
    read_text(path)?.parse()
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    if text.trim().is_empty() {
        return Err(Error::InvalidConfig(format!("{} is empty", path.display())));
    }
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Writes to `out` when given, else to stdout.
pub fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(p) => Ok(fs::write(p, content)?),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
