//! JSON operator files.
//!
//! ```json
//! {"d": 2, "name": "cnot", "matrix": [[[1, 0], [0, 0], ...], ...]}
//! ```
//!
//! `matrix` holds `d²` rows of `d²` `[re, im]` pairs, row-major. Writers emit
//! 17 significant digits so a parse/serialize cycle is lossless.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::densemat::{ComplexMatrix, C64};
use crate::rearrange::BipartiteOperator;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("local dimension must be at least 2, got {0}")]
    LocalDimension(usize),
    #[error("matrix has {found} rows, expected d² = {expected}")]
    RowCount { expected: usize, found: usize },
    #[error("matrix row {row} has {found} entries, expected d² = {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
}

impl OperatorFile {
    pub fn from_operator(op: &BipartiteOperator, name: Option<&str>) -> Self {
        let m = op.matrix();
        Self {
            d: op.local_dim(),
            name: name.map(str::to_owned),
            matrix: (0..m.rows())
                .map(|r| m.row(r).iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    pub fn to_operator(&self) -> Result<BipartiteOperator, FormatError> {
        let d = self.d;
        if d < 2 {
            return Err(FormatError::LocalDimension(d));
        }
        let n = d * d;
        if self.matrix.len() != n {
            return Err(FormatError::RowCount {
                expected: n,
                found: self.matrix.len(),
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for (row, entries) in self.matrix.iter().enumerate() {
            if entries.len() != n {
                return Err(FormatError::RowLength {
                    row,
                    expected: n,
                    found: entries.len(),
                });
            }
            for (col, [re, im]) in entries.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(FormatError::NonFinite { row, col });
                }
                data.push(C64::new(*re, *im));
            }
        }
        let mat = ComplexMatrix::new(n, n, data).expect("shape and finiteness checked above");
        Ok(BipartiteOperator::new(d, mat).expect("shape checked above"))
    }
}

/// Parses an operator file, returning the operator and its optional label.
pub fn parse_operator_file(
    content: &[u8],
) -> Result<(BipartiteOperator, Option<String>), FormatError> {
    let file: OperatorFile = serde_json::from_slice(content).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let op = file.to_operator()?;
    Ok((op, file.name))
}

fn fmt_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the operator in the canonical layout: one matrix row per line.
pub fn serialize_operator(op: &BipartiteOperator, name: Option<&str>) -> String {
    let m = op.matrix();
    let mut out = format!("{{\n  \"d\": {},\n", op.local_dim());
    if let Some(name) = name {
        let quoted = serde_json::to_string(name).expect("strings always serialize");
        out.push_str(&format!("  \"name\": {quoted},\n"));
    }
    out.push_str("  \"matrix\": [\n");
    for r in 0..m.rows() {
        let row: Vec<String> = m
            .row(r)
            .iter()
            .map(|z| format!("[{}, {}]", fmt_number(z.re), fmt_number(z.im)))
            .collect();
        let sep = if r + 1 == m.rows() { "" } else { "," };
        out.push_str(&format!("    [{}]{sep}\n", row.join(", ")));
    }
    out.push_str("  ]\n}\n");
    out
}
