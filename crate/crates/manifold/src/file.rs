use std::path::Path;

use pdc_algebra::IntMatrix;
use pdc_wedge::Pi7Wedge;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ManifoldPresentation;

/// On-disk form: `{"k": 2, "G": [[0,1],[1,0]], "l": [0,0]}` with an optional
/// `"whitehead_override"` (full symmetric k×k matrix whose off-diagonal
/// entries replace those of `G` as Whitehead coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub k: usize,
    #[serde(rename = "G")]
    pub g: Vec<Vec<i64>>,
    pub l: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub whitehead_override: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field \"{field}\": {message}")]
    Field { field: &'static str, message: String },
}

fn field(field: &'static str, message: impl Into<String>) -> PresentationError {
    PresentationError::Field { field, message: message.into() }
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        serde_json::from_str(text).map_err(|e| PresentationError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<ManifoldPresentation, PresentationError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| PresentationError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)?.build()
    }

    pub fn build(&self) -> Result<ManifoldPresentation, PresentationError> {
        let k = self.k;
        if k == 0 {
            return Err(field("k", "must be positive"));
        }
        let square = |m: &Vec<Vec<i64>>| m.len() == k && m.iter().all(|r| r.len() == k);
        if !square(&self.g) {
            return Err(field("G", format!("expected a {k}×{k} integer array")));
        }
        if self.l.len() != k {
            return Err(field("l", format!("expected {k} integers, found {}", self.l.len())));
        }
        let g = IntMatrix::from_rows(&self.g).map_err(|e| field("G", e.to_string()))?;
        if !g.is_symmetric() {
            return Err(field("G", "matrix is not symmetric"));
        }
        let mut l = Pi7Wedge::from_gram(&g, &self.l).map_err(|e| field("G", e.to_string()))?;
        if let Some(w) = &self.whitehead_override {
            if !square(w) {
                return Err(field("whitehead_override", format!("expected a {k}×{k} integer array")));
            }
            for i in 0..k {
                if w[i][i] != self.g[i][i] {
                    return Err(field(
                        "whitehead_override",
                        format!("diagonal entry {} differs from G", i + 1),
                    ));
                }
                for j in i + 1..k {
                    if w[i][j] != w[j][i] {
                        return Err(field(
                            "whitehead_override",
                            format!("entries ({},{}) and ({},{}) differ", i + 1, j + 1, j + 1, i + 1),
                        ));
                    }
                    l.set_w(i, j, w[i][j]);
                }
            }
        }
        let field_name = if self.whitehead_override.is_some() { "whitehead_override" } else { "G" };
        ManifoldPresentation::new(l).map_err(|e| field(field_name, e.to_string()))
    }

    pub fn from_presentation(m: &ManifoldPresentation) -> Self {
        Self { k: m.k(), g: m.gram().to_rows(), l: m.l(), whitehead_override: None }
    }
}
