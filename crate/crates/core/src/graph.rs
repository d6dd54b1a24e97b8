//! Knödel graphs `W(delta, n)` under the `u_i` / `v_j` labelling.
//!
//! Vertices are labelled `u_1 … u_{n/2}` and `v_1 … v_{n/2}`, and
//! `u_i ~ v_j` iff `(j - 1) ≡ (i - 1) + 2^k - 1 (mod n/2)` for some
//! `0 <= k < delta`. Adjacency is evaluated from the congruence; no edge
//! list is stored.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }

    fn letter(self) -> char {
        match self {
            Side::U => 'u',
            Side::V => 'v',
        }
    }
}

/// A labelled vertex. `index` is 1-based.
///
/// Ordering is U before V, then by index, which is also the slot order used
/// by [`KnodelGraph::slot`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub const fn new(side: Side, index: usize) -> Self {
        Vertex { side, index }
    }

    pub const fn u(index: usize) -> Self {
        Vertex::new(Side::U, index)
    }

    pub const fn v(index: usize) -> Self {
        Vertex::new(Side::V, index)
    }

    /// The `(part, j)` label of the 0-based definition: `u_k -> (1, k-1)`,
    /// `v_k -> (2, k-1)`.
    pub fn original_label(self) -> (u8, usize) {
        let part = match self.side {
            Side::U => 1,
            Side::V => 2,
        };
        (part, self.index - 1)
    }

    /// Inverse of [`Vertex::original_label`]. Returns `None` for a part other
    /// than 1 or 2.
    pub fn from_original_label(part: u8, j: usize) -> Option<Self> {
        match part {
            1 => Some(Vertex::u(j + 1)),
            2 => Some(Vertex::v(j + 1)),
            _ => None,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.letter(), self.index)
    }
}

/// The Knödel graph `W(delta, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KnodelGraph {
    delta: u32,
    n: usize,
}

impl KnodelGraph {
    /// Builds `W(delta, n)`. Requires `n` even and `1 <= delta <= floor(log2 n)`.
    pub fn new(delta: u32, n: usize) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::OddOrder(n));
        }
        // n >= 2^delta  <=>  delta <= floor(log2 n)
        if delta == 0 || n == 0 || delta > n.ilog2() {
            return Err(Error::DegreeOutOfRange { delta, n });
        }
        Ok(KnodelGraph { delta, n })
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `n / 2`, the size of each side.
    pub fn half(&self) -> usize {
        self.n / 2
    }

    /// The offsets `2^k - 1` for `0 <= k < delta`, in increasing order.
    pub fn offsets(&self) -> impl Iterator<Item = usize> {
        (0..self.delta).map(|k| (1usize << k) - 1)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (1..=self.half()).contains(&v.index)
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                half: self.half(),
            })
        }
    }

    /// Dense slot of a vertex: `u_i -> i - 1`, `v_j -> n/2 + j - 1`.
    pub fn slot(&self, v: Vertex) -> usize {
        match v.side {
            Side::U => v.index - 1,
            Side::V => self.half() + v.index - 1,
        }
    }

    /// Inverse of [`KnodelGraph::slot`].
    pub fn vertex_at(&self, slot: usize) -> Vertex {
        let half = self.half();
        debug_assert!(slot < self.n);
        if slot < half {
            Vertex::u(slot + 1)
        } else {
            Vertex::v(slot - half + 1)
        }
    }

    /// All vertices in slot order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).map(move |s| self.vertex_at(s))
    }

    /// Neighbours in offset order (`k = 0, 1, …`), not sorted by index.
    pub(crate) fn neighbors_unchecked(&self, v: Vertex) -> impl Iterator<Item = Vertex> {
        let half = self.half();
        let i = v.index - 1;
        let side = v.side;
        self.offsets().map(move |off| {
            let off = off % half;
            match side {
                Side::U => Vertex::v((i + off) % half + 1),
                Side::V => Vertex::u((i + half - off) % half + 1),
            }
        })
    }

    /// Open neighbourhood `N(v)`, sorted.
    pub fn neighbors(&self, v: Vertex) -> Result<BTreeSet<Vertex>> {
        self.check(v)?;
        Ok(self.neighbors_unchecked(v).collect())
    }

    pub fn is_adjacent(&self, a: Vertex, b: Vertex) -> bool {
        if a.side == b.side || !self.contains(a) || !self.contains(b) {
            return false;
        }
        let (u, v) = if a.side == Side::U { (a, b) } else { (b, a) };
        let half = self.half();
        let diff = (v.index + half - u.index) % half;
        self.offsets().any(|off| off % half == diff)
    }

    /// Edges `(u_i, v_j)` ordered by `i`, then by offset.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (1..=self.half()).flat_map(move |i| {
            let u = Vertex::u(i);
            self.neighbors_unchecked(u).map(move |v| (u, v))
        })
    }

    /// Circular distance `min(|i - j|, n/2 - |i - j|)` between two distinct
    /// same-side vertices.
    pub fn index_distance(&self, a: Vertex, b: Vertex) -> Result<usize> {
        self.check_pair(a, b)?;
        let d = a.index.abs_diff(b.index);
        Ok(d.min(self.half() - d))
    }

    /// Gap sequence of a set of U-vertices, listed in increasing index order
    /// with the wrap-around gap last.
    pub fn cyclic_sequence(&self, set: &[Vertex]) -> Result<CyclicSequence> {
        let indices = self.u_indices(set)?;
        let half = self.half();
        let mut gaps: Vec<usize> = indices.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.push(half + indices[0] - indices[indices.len() - 1]);
        CyclicSequence::new(gaps, half)
    }

    /// Whether `N(a) ∩ N(b)` is nonempty, decided from the index distance and
    /// `M_delta` alone.
    pub fn shares_neighbor(&self, a: Vertex, b: Vertex) -> Result<bool> {
        let id = self.index_distance(a, b)?;
        if self.delta < 2 {
            // M_1 is empty and 1-regular graphs are perfect matchings.
            return Ok(false);
        }
        let m = m_delta(self.delta)?;
        Ok(m.contains(&id) || m.contains(&(self.half() - id)))
    }

    /// Exact intersection of the two open neighbourhoods.
    pub fn common_neighbors(&self, a: Vertex, b: Vertex) -> Result<BTreeSet<Vertex>> {
        self.check_pair(a, b)?;
        let na = self.neighbors(a)?;
        let nb = self.neighbors(b)?;
        Ok(na.intersection(&nb).copied().collect())
    }

    fn check_pair(&self, a: Vertex, b: Vertex) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a.side != b.side {
            return Err(Error::MixedSides(a, b));
        }
        if a == b {
            return Err(Error::EqualVertices(a));
        }
        Ok(())
    }

    /// Sorted, deduplicated indices of a nonempty U-only set.
    pub(crate) fn u_indices(&self, set: &[Vertex]) -> Result<Vec<usize>> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut indices = Vec::with_capacity(set.len());
        for &v in set {
            self.check(v)?;
            if v.side != Side::U {
                return Err(Error::NotOnSideU(v));
            }
            indices.push(v.index);
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(indices)
    }
}

impl fmt::Display for KnodelGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({},{})", self.delta, self.n)
    }
}

/// `M_delta = { 2^a - 2^b : 0 <= b < a < delta }`.
pub fn m_delta(delta: u32) -> Result<BTreeSet<usize>> {
    if delta < 2 {
        return Err(Error::MDeltaTooSmall(delta));
    }
    Ok((1..delta)
        .flat_map(|a| (0..a).map(move |b| (1usize << a) - (1usize << b)))
        .collect())
}

/// Circular gaps `n_1, …, n_k` between consecutive chosen indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicSequence {
    gaps: Vec<usize>,
    half: usize,
}

impl CyclicSequence {
    /// Validates that every gap is positive and the gaps sum to `half`.
    pub fn new(gaps: Vec<usize>, half: usize) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::EmptySet);
        }
        if gaps.contains(&0) {
            return Err(Error::ZeroGap);
        }
        let sum: usize = gaps.iter().sum();
        if sum != half {
            return Err(Error::GapSumMismatch { sum, half });
        }
        Ok(CyclicSequence { gaps, half })
    }

    /// A sequence whose `half` is its own sum.
    pub fn from_gaps(gaps: Vec<usize>) -> Result<Self> {
        let half = gaps.iter().sum();
        CyclicSequence::new(gaps, half)
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    pub fn half(&self) -> usize {
        self.half
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// The sequence rotated left by `by` places.
    pub fn rotated(&self, by: usize) -> CyclicSequence {
        let mut gaps = self.gaps.clone();
        gaps.rotate_left(by % self.gaps.len());
        CyclicSequence {
            gaps,
            half: self.half,
        }
    }

    pub fn is_rotation_of(&self, other: &CyclicSequence) -> bool {
        self.len() == other.len()
            && self.half == other.half
            && (0..self.len()).any(|r| self.rotated(r).gaps == other.gaps)
    }
}

impl fmt::Display for CyclicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gaps.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
