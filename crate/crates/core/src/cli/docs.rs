//! JSON documents read and written by the CLI.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domination::VertexSet;
use crate::graph::{KnodelGraph, Side};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] crate::Error),
    #[error("{field} indices must be strictly increasing")]
    Unsorted { field: &'static str },
    #[error("{field} index {index} out of range 1..={half}")]
    OutOfRange {
        field: &'static str,
        index: usize,
        half: usize,
    },
    #[error("document describes W({doc_delta},{doc_n}) but W({delta},{n}) was requested")]
    GraphMismatch {
        n: usize,
        delta: u32,
        doc_n: usize,
        doc_delta: u32,
    },
    #[error("adjacency of {vertex} does not match W({delta},{n})")]
    Adjacency {
        vertex: String,
        delta: u32,
        n: usize,
    },
    #[error("adjacency document lists {found} U-rows, expected {expected}")]
    RowCount { found: usize, expected: usize },
}

/// `{"n": int, "delta": int, "u": [int...], "v": [int...]}` with sorted,
/// deduplicated 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDocument {
    pub n: usize,
    pub delta: u32,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

impl SetDocument {
    pub fn from_set(g: &KnodelGraph, s: &VertexSet) -> Self {
        SetDocument {
            n: g.order(),
            delta: g.delta(),
            u: s.side_indices(Side::U),
            v: s.side_indices(Side::V),
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocError> {
        let doc: SetDocument = serde_json::from_str(text)?;
        let g = KnodelGraph::new(doc.delta, doc.n)?;
        for (field, idx) in [("u", &doc.u), ("v", &doc.v)] {
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(DocError::Unsorted { field });
            }
            if let Some(&index) = idx.iter().find(|&&i| i == 0 || i > g.half()) {
                return Err(DocError::OutOfRange {
                    field,
                    index,
                    half: g.half(),
                });
            }
        }
        Ok(doc)
    }

    pub fn graph(&self) -> Result<KnodelGraph, DocError> {
        Ok(KnodelGraph::new(self.delta, self.n)?)
    }

    pub fn to_set(&self) -> Result<(KnodelGraph, VertexSet), DocError> {
        let g = self.graph()?;
        let s = VertexSet::from_indices(&g, &self.u, &self.v)?;
        Ok((g, s))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

/// `{"n": int, "delta": int, "u_neighbors": [[int...], ...]}` where row `i`
/// lists the sorted V-indices adjacent to `u_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjacencyDocument {
    pub n: usize,
    pub delta: u32,
    pub u_neighbors: Vec<Vec<usize>>,
}

impl AdjacencyDocument {
    pub fn from_graph(g: &KnodelGraph) -> Self {
        let u_neighbors = (1..=g.half())
            .map(|i| {
                g.neighbors(crate::Vertex::u(i))
                    .expect("valid vertex")
                    .into_iter()
                    .map(|v| v.index)
                    .collect()
            })
            .collect();
        AdjacencyDocument {
            n: g.order(),
            delta: g.delta(),
            u_neighbors,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

/// Reads an adjacency document and checks that it is exactly `W(delta, n)`.
pub fn load_graph_document(text: &str) -> Result<KnodelGraph, DocError> {
    let doc: AdjacencyDocument = serde_json::from_str(text)?;
    let g = KnodelGraph::new(doc.delta, doc.n)?;
    let expected = AdjacencyDocument::from_graph(&g);
    if doc.u_neighbors.len() != expected.u_neighbors.len() {
        return Err(DocError::RowCount {
            found: doc.u_neighbors.len(),
            expected: expected.u_neighbors.len(),
        });
    }
    for (i, (got, want)) in doc
        .u_neighbors
        .iter()
        .zip(&expected.u_neighbors)
        .enumerate()
    {
        if got != want {
            return Err(DocError::Adjacency {
                vertex: format!("u{}", i + 1),
                delta: g.delta(),
                n: g.order(),
            });
        }
    }
    Ok(g)
}
