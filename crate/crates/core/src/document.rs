//! JSON document format for hypergraphs.
//!
//! ```json
//! {
//!   "hyperedges": [
//!     { "id": "h1", "inputs": ["v1", "v2"], "outputs": ["v3"] }
//!   ],
//!   "vertices": ["v1", "v2", "v3"]
//! }
//! ```
//!
//! The canonical form has keys sorted, lists in declaration order, two-space
//! indentation and a trailing newline. Member lists inside a hyperedge are
//! sets; canonicalization orders them by vertex declaration order.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ChemicalHypergraph, ModelError};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphDocument {
    pub hyperedges: Vec<HyperedgeDocument>,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperedgeDocument {
    pub id: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot read or write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid hypergraph: {0}")]
    Validation(#[from] ModelError),
}

impl HypergraphDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Canonical serialization.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serialization is infallible");
        s.push('\n');
        s
    }
}

/// Reads and validates a hypergraph file.
pub fn parse(path: impl AsRef<Path>) -> Result<ChemicalHypergraph, DocumentError> {
    let doc = read_document(path)?;
    Ok(ChemicalHypergraph::validate(&doc)?)
}

/// Reads a file that may contain hyperedges with one empty side, as
/// produced by the vertex flip.
pub fn parse_relaxed(path: impl AsRef<Path>) -> Result<ChemicalHypergraph, DocumentError> {
    let doc = read_document(path)?;
    Ok(ChemicalHypergraph::validate_relaxed(&doc)?)
}

pub fn read_document(path: impl AsRef<Path>) -> Result<HypergraphDocument, DocumentError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|source| DocumentError::Io { path: path.display().to_string(), source })?;
    HypergraphDocument::from_json(&text)
}

pub fn serialize(g: &ChemicalHypergraph, path: impl AsRef<Path>) -> Result<(), DocumentError> {
    let path = path.as_ref();
    fs::write(path, g.to_document().to_json())
        .map_err(|source| DocumentError::Io { path: path.display().to_string(), source })
}
