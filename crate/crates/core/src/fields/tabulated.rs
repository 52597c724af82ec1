//! One-dimensional fields sampled on a uniform grid and interpolated by a
//! natural cubic spline.
//!
//! Tables are read from a CSV file (`coordinate,value`, header row required)
//! and a JSON sidecar with the same stem:
//!
//! ```json
//! { "support_radius": 2.0, "smoothness_order": 3, "extension": "zero" }
//! ```
//!
//! `extension` is `"zero"` (the field vanishes outside the table) or
//! `"none"` (queries outside the table are errors). Extrapolation is never
//! performed.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extension {
    Zero,
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub support_radius: f64,
    pub smoothness_order: u32,
    pub extension: Extension,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TabulatedField {
    pub start: f64,
    pub step: f64,
    pub values: Vec<f64>,
    /// Spline second derivatives at the nodes.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    curvature: Vec<f64>,
    pub meta: TableMeta,
}

impl TabulatedField {
    pub fn new(coords: &[f64], values: &[f64], meta: TableMeta) -> Result<Self> {
        if coords.len() != values.len() || coords.len() < 4 {
            return Err(Error::Table(
                "need at least 4 (coordinate, value) rows".into(),
            ));
        }
        let step = (coords[coords.len() - 1] - coords[0]) / (coords.len() - 1) as f64;
        if !(step > 0.0) {
            return Err(Error::Table("coordinates must be increasing".into()));
        }
        for (i, c) in coords.iter().enumerate() {
            let expected = coords[0] + step * i as f64;
            if (c - expected).abs() > 1e-9 * step.max(expected.abs()) {
                return Err(Error::Table(format!(
                    "grid is not uniform at row {i}: {c} vs {expected}"
                )));
            }
        }
        if meta.smoothness_order < 3 {
            return Err(Error::Table(format!(
                "tabulated fields must declare smoothness_order >= 3, got {}",
                meta.smoothness_order
            )));
        }
        if !(meta.support_radius > 0.0) {
            return Err(Error::Table("support_radius must be positive".into()));
        }
        if meta.extension == Extension::Zero {
            let reach = coords[0].abs().max(coords[coords.len() - 1].abs());
            if reach > meta.support_radius * (1.0 + 1e-12) {
                return Err(Error::Table(format!(
                    "table reaches |x| = {reach}, beyond the declared support radius {}",
                    meta.support_radius
                )));
            }
        }
        let mut field = Self {
            start: coords[0],
            step,
            values: values.to_vec(),
            curvature: Vec::new(),
            meta,
        };
        field.curvature = natural_spline(&field.values, step);
        Ok(field)
    }

    /// Reads `path` and its `.json` sidecar.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let sidecar: PathBuf = path.with_extension("json");
        let meta: TableMeta =
            serde_json::from_str(&std::fs::read_to_string(&sidecar).map_err(|e| {
                Error::Table(format!("cannot read sidecar {}: {e}", sidecar.display()))
            })?)?;
        let mut reader = csv::Reader::from_path(path)?;
        let width = reader.headers()?.len();
        if width != 2 {
            return Err(Error::Table(format!(
                "expected 2 columns (coordinate, value), found {width}; only 1D tables are supported"
            )));
        }
        let mut coords = Vec::new();
        let mut values = Vec::new();
        for row in reader.records() {
            let row = row?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Table(format!("bad number '{s}': {e}")))
            };
            coords.push(parse(&row[0])?);
            values.push(parse(&row[1])?);
        }
        Self::new(&coords, &values, meta)
    }

    pub fn end(&self) -> f64 {
        self.start + self.step * (self.values.len() - 1) as f64
    }

    pub fn in_table(&self, x: f64) -> bool {
        x >= self.start && x <= self.end()
    }

    pub(crate) fn eval_t<T: Real>(&self, x: T) -> T {
        let xv = x.re();
        if !self.in_table(xv) {
            return match self.meta.extension {
                Extension::Zero => T::cst(0.0),
                Extension::None => T::cst(f64::NAN),
            };
        }
        let last = self.values.len() - 2;
        let i = (((xv - self.start) / self.step).floor() as usize).min(last);
        let h = self.step;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (m0, m1) = (self.curvature[i], self.curvature[i + 1]);
        let b = (y1 - y0) / h - h * (2.0 * m0 + m1) / 6.0;
        let c = 0.5 * m0;
        let d = (m1 - m0) / (6.0 * h);
        let t = x - T::cst(self.start + h * i as f64);
        T::cst(y0) + t * (T::cst(b) + t * (T::cst(c) + t.scale(d)))
    }
}

/// Second derivatives of the natural cubic spline through equally spaced values.
fn natural_spline(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    let mut m = vec![0.0; n];
    if n < 3 {
        return m;
    }
    // Thomas algorithm on the interior system: m[i-1] + 4 m[i] + m[i+1] = rhs
    let k = n - 2;
    let mut diag = vec![4.0; k];
    let mut rhs: Vec<f64> = (1..n - 1)
        .map(|i| 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h))
        .collect();
    for i in 1..k {
        let w = 1.0 / diag[i - 1];
        diag[i] -= w;
        rhs[i] -= w * rhs[i - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for i in (0..k - 1).rev() {
        m[i + 1] = (rhs[i] - m[i + 2]) / diag[i];
    }
    m
}
