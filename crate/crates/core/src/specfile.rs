//! JSON spec files: the Fourier data for `R` and `g` plus optional grid and
//! tolerance overrides.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "r": { "a0": 0.9, "cos": [0.2], "sin": [0.0] },
//!   "g": { "cos": [0.0], "sin": [0.05] },
//!   "grid_n": 4096,
//!   "tolerances": { "delta_strict": 1e-9 }
//! }
//! ```
//!
//! A missing `r.a0` is solved from the closure identity; a missing `g.const`
//! is chosen so that `g(0) = 0`. Floats round-trip bit for bit.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fourier::TruncatedFourierSeries;
use crate::tolerances::{min_grid, Tolerances};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_HARMONICS: usize = 256;
pub const MAX_GRID_N: usize = 1 << 22;

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed spec file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid spec file: {0}")]
    Schema(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightCoefficients {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a0: Option<f64>,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShearCoefficients {
    #[serde(rename = "const", default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_strict: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_eq: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bisection_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_det: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub schema_version: u32,
    pub r: WeightCoefficients,
    pub g: ShearCoefficients,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

fn schema(msg: impl Into<String>) -> SpecFileError {
    SpecFileError::Schema(msg.into())
}

fn check_coefficients(name: &str, cos: &[f64], sin: &[f64], extra: Option<f64>) -> Result<(), SpecFileError> {
    if cos.len() != sin.len() {
        return Err(schema(format!(
            "{name}.cos has {} entries but {name}.sin has {}",
            cos.len(),
            sin.len()
        )));
    }
    if cos.len() > MAX_HARMONICS {
        return Err(schema(format!("{name} has more than {MAX_HARMONICS} harmonics")));
    }
    if !cos.iter().chain(sin).chain(extra.iter()).all(|x| x.is_finite()) {
        return Err(schema(format!("{name} contains a non-finite coefficient")));
    }
    Ok(())
}

impl SpecFile {
    pub fn parse(bytes: &[u8]) -> Result<Self, SpecFileError> {
        let spec: SpecFile = serde_json::from_slice(bytes)?;
        spec.check()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, SpecFileError> {
        let bytes = fs::read(path).map_err(|source| SpecFileError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&bytes)
    }

    pub fn save(&self, path: &Path) -> Result<(), SpecFileError> {
        fs::write(path, self.to_json()).map_err(|source| SpecFileError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec file serializes");
        s.push('\n');
        s
    }

    /// Schema checks that do not need any numerics.
    pub fn check(&self) -> Result<(), SpecFileError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(schema(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        check_coefficients("r", &self.r.cos, &self.r.sin, self.r.a0)?;
        check_coefficients("g", &self.g.cos, &self.g.sin, self.g.constant)?;
        if let Some(n) = self.grid_n {
            let min = min_grid(self.r.cos.len().max(self.g.cos.len()));
            if n < min || n > MAX_GRID_N {
                return Err(schema(format!("grid_n = {n} is outside [{min}, {MAX_GRID_N}]")));
            }
        }
        if let Some(t) = &self.tolerances {
            for (name, v) in [
                ("delta_strict", t.delta_strict),
                ("tol_eq", t.tol_eq),
                ("bisection_tol", t.bisection_tol),
                ("tol_det", t.tol_det),
            ] {
                if let Some(v) = v {
                    if !(v.is_finite() && v > 0.0) {
                        return Err(schema(format!("tolerances.{name} must be positive and finite")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn weight(&self) -> Result<TruncatedFourierSeries, SpecFileError> {
        let (cos, sin) = (self.r.cos.clone(), self.r.sin.clone());
        match self.r.a0 {
            Some(a0) => TruncatedFourierSeries::new(a0, cos, sin),
            None => TruncatedFourierSeries::with_solved_a0(cos, sin),
        }
        .map_err(|e| schema(e.to_string()))
    }

    pub fn shear(&self) -> Result<TruncatedFourierSeries, SpecFileError> {
        let (cos, sin) = (self.g.cos.clone(), self.g.sin.clone());
        match self.g.constant {
            Some(c) => TruncatedFourierSeries::new(c, cos, sin),
            None => TruncatedFourierSeries::anchored_at_zero(cos, sin),
        }
        .map_err(|e| schema(e.to_string()))
    }

    /// Defaults, then the file's overrides.
    pub fn tolerances(&self) -> Tolerances {
        let mut tol = Tolerances::default();
        if let Some(n) = self.grid_n {
            tol.grid_n = n;
        }
        if let Some(o) = &self.tolerances {
            tol.delta_strict = o.delta_strict.unwrap_or(tol.delta_strict);
            tol.tol_eq = o.tol_eq.unwrap_or(tol.tol_eq);
            tol.bisection_tol = o.bisection_tol.unwrap_or(tol.bisection_tol);
            tol.tol_det = o.tol_det.unwrap_or(tol.tol_det);
        }
        tol
    }

    pub fn from_series(r: &TruncatedFourierSeries, g: &TruncatedFourierSeries) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            r: WeightCoefficients {
                a0: Some(r.a0()),
                cos: r.cos_coeffs().to_vec(),
                sin: r.sin_coeffs().to_vec(),
            },
            g: ShearCoefficients {
                constant: Some(g.a0()),
                cos: g.cos_coeffs().to_vec(),
                sin: g.sin_coeffs().to_vec(),
            },
            grid_n: None,
            tolerances: None,
        }
    }
}
