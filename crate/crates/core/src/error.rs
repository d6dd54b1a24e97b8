use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order n = {0} must be even")]
    OddOrder(usize),

    #[error("degree {delta} out of range for n = {n} (need 1 <= delta <= floor(log2 n))")]
    DegreeOutOfRange { delta: u32, n: usize },

    #[error("vertex {vertex} is not a vertex of a graph with n/2 = {half}")]
    InvalidVertex { vertex: Vertex, half: usize },

    #[error("vertices {0} and {1} lie on different sides")]
    MixedSides(Vertex, Vertex),

    #[error("expected two distinct vertices, got {0} twice")]
    EqualVertices(Vertex),

    #[error("expected a nonempty vertex set")]
    EmptySet,

    #[error("expected only U-side vertices, found {0}")]
    NotOnSideU(Vertex),

    #[error("M_delta needs delta >= 2, got {0}")]
    MDeltaTooSmall(u32),

    #[error("cyclic sequence gaps must be positive")]
    ZeroGap,

    #[error("cyclic sequence sums to {sum}, expected {half}")]
    GapSumMismatch { sum: usize, half: usize },

    #[error("the closed-form formula covers even n >= 16, got {0}")]
    OrderTooSmall(usize),

    #[error("construction for n = {n} leaves {} vertices undominated: {}", .undominated.len(), join_vertices(.undominated))]
    ConstructionFailed { n: usize, undominated: Vec<Vertex> },

    #[error("exact search supports n <= {max}, got n = {n}")]
    GraphTooLarge { n: usize, max: usize },

    #[error("vertex set has {found} slots but the graph has n = {expected}")]
    SetGraphMismatch { expected: usize, found: usize },
}

fn join_vertices(vs: &[Vertex]) -> String {
    vs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
