//! Domination in Knödel graphs.
//!
//! * [`graph`]: construction of `W(delta, n)`, index distances, cyclic gap
//!   sequences and the common-neighbour test.
//! * [`domination`]: vertex sets, dominating-set verification and degree bounds.
//! * [`gamma4`]: the closed-form value of `gamma(W(4, n))` and explicit
//!   minimum dominating sets.
//! * [`solver`]: exact branch and bound with a brute-force oracle.
//! * [`seq_enum`]: rotation classes of gap sequences.
//! * [`cli`]: the `knodel` command line.

pub mod cli;
pub mod domination;
pub mod error;
pub mod gamma4;
pub mod graph;
pub mod seq_enum;
pub mod solver;

pub use domination::VertexSet;
pub use error::{Error, Result};
pub use graph::{CyclicSequence, KnodelGraph, Side, Vertex};
