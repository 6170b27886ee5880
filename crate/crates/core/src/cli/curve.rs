//! Curve files.
//!
//! JSON or TOML with two keys:
//!
//! ```toml
//! # vine with three nodes
//! vertices = [{ name = "C1", genus = 1 }, { name = "C2", genus = 0 }]
//! edges = [["C1", "C2"], ["C1", "C2"], ["C1", "C2"]]
//! ```
//!
//! Vertex order and edge order are kept as written.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::graph::{DualGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub name: String,
    pub genus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub vertices: Vec<VertexSpec>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("vertex `{name}` has negative genus {genus}")]
    NegativeGenus { name: String, genus: i64 },
    #[error("vertex `{name}` has genus {genus}, which is too large")]
    GenusTooLarge { name: String, genus: i64 },
    #[error(transparent)]
    Graph(#[from] Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Toml,
}

impl Format {
    /// By extension, else by the first non-blank character.
    pub fn detect(path: Option<&Path>, text: &str) -> Format {
        match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            Some("toml") => Format::Toml,
            _ if text.trim_start().starts_with('{') => Format::Json,
            _ => Format::Toml,
        }
    }
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub fn parse_curve_file(text: &str, format: Format) -> Result<CurveFile, CurveError> {
    match format {
        Format::Json => serde_json::from_str(text).map_err(|e| CurveError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }),
        Format::Toml => toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_column(text, s.start));
            CurveError::Parse { line, column, message: e.message().to_string() }
        }),
    }
}

impl CurveFile {
    pub fn to_graph(&self) -> Result<DualGraph, CurveError> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                if v.genus < 0 {
                    return Err(CurveError::NegativeGenus { name: v.name.clone(), genus: v.genus });
                }
                let genus = u32::try_from(v.genus)
                    .map_err(|_| CurveError::GenusTooLarge { name: v.name.clone(), genus: v.genus })?;
                Ok(Vertex::new(v.name.clone(), genus))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        Ok(DualGraph::from_names(vertices, &edges)?)
    }

    pub fn from_graph(g: &DualGraph) -> Self {
        CurveFile {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexSpec { name: v.name.clone(), genus: i64::from(v.geometric_genus) })
                .collect(),
            edges: g.edges().iter().map(|e| [g.name(e.a).to_string(), g.name(e.b).to_string()]).collect(),
        }
    }
}

pub fn parse_curve_str(text: &str, format: Format) -> Result<DualGraph, CurveError> {
    parse_curve_file(text, format)?.to_graph()
}

/// Reads a curve from a file, or from stdin when `path` is `-`.
pub fn parse_curve(path: &str) -> Result<DualGraph, CurveError> {
    let io_err = |e: std::io::Error| CurveError::Io { path: path.to_string(), message: e.to_string() };
    let (text, p) = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        (s, None)
    } else {
        (std::fs::read_to_string(path).map_err(io_err)?, Some(Path::new(path)))
    };
    parse_curve_str(&text, Format::detect(p, &text))
}
