//! JSON records for matrices and density-matrix files.
//!
//! A density-matrix file looks like
//!
//! ```json
//! { "dim": 2, "re": [[0.5, 0.0], [0.0, 0.5]], "im": [[0.0, 0.0], [0.0, 0.0]] }
//! ```
//!
//! The writer prints every number with 17 significant digits so files
//! round-trip exactly.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Real and imaginary parts as nested row arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixRecord {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let rows = |f: fn(C64) -> f64| {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| f(m.get(i, j))).collect())
                .collect()
        };
        Self {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let rows = self.re.len();
        if rows == 0 || self.im.len() != rows {
            return Err(Error::Format(format!(
                "re has {} rows, im has {}",
                rows,
                self.im.len()
            )));
        }
        let cols = self.re[0].len();
        let mut entries = Vec::with_capacity(rows * cols);
        for (i, (re_row, im_row)) in self.re.iter().zip(&self.im).enumerate() {
            if re_row.len() != cols || im_row.len() != cols {
                return Err(Error::Format(format!("row {i} is ragged")));
            }
            entries.extend(re_row.iter().zip(im_row).map(|(&a, &b)| C64::new(a, b)));
        }
        ComplexMatrix::from_row_major(rows, cols, entries)
    }
}

/// On-disk density-matrix file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityFile {
    pub dim: usize,
    #[serde(flatten)]
    pub matrix: MatrixRecord,
}

fn push_rows(out: &mut String, rows: &[Vec<f64>]) {
    out.push('[');
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            out.push_str(",\n    ");
        }
        out.push('[');
        for (j, x) in row.iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "{x:.16e}");
        }
        out.push(']');
    }
    out.push(']');
}

impl DensityFile {
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{{\n  \"dim\": {},\n  \"re\": ", self.dim);
        push_rows(&mut out, &self.matrix.re);
        out.push_str(",\n  \"im\": ");
        push_rows(&mut out, &self.matrix.im);
        out.push_str("\n}\n");
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
