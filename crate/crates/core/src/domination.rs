//! Vertex sets, dominating-set verification and generic degree bounds.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{KnodelGraph, Side, Vertex};

/// A subset of the `n` vertices of a specific graph, stored as bit blocks in
/// slot order (`u_1 … u_{n/2}, v_1 … v_{n/2}`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    half: usize,
    blocks: Vec<u64>,
}

impl VertexSet {
    pub fn empty(g: &KnodelGraph) -> Self {
        Self::with_half(g.half())
    }

    pub fn full(g: &KnodelGraph) -> Self {
        let mut s = Self::empty(g);
        for slot in 0..g.order() {
            s.set_slot(slot);
        }
        s
    }

    fn with_half(half: usize) -> Self {
        VertexSet {
            half,
            blocks: vec![0; (2 * half).div_ceil(64)],
        }
    }

    /// Collects vertices into a set, rejecting any that are not vertices of `g`.
    pub fn from_vertices<I>(g: &KnodelGraph, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut s = Self::empty(g);
        for v in vertices {
            g.check(v)?;
            s.insert(v);
        }
        Ok(s)
    }

    /// Builds `{u_i : i in u} ∪ {v_j : j in v}`.
    pub fn from_indices(g: &KnodelGraph, u: &[usize], v: &[usize]) -> Result<Self> {
        let vs = u
            .iter()
            .map(|&i| Vertex::u(i))
            .chain(v.iter().map(|&j| Vertex::v(j)));
        Self::from_vertices(g, vs)
    }

    pub(crate) fn from_slots<I: IntoIterator<Item = usize>>(half: usize, slots: I) -> Self {
        let mut s = Self::with_half(half);
        for slot in slots {
            s.set_slot(slot);
        }
        s
    }

    pub fn half(&self) -> usize {
        self.half
    }

    /// Number of vertex slots, `n`.
    pub fn capacity(&self) -> usize {
        2 * self.half
    }

    fn slot(&self, v: Vertex) -> Option<usize> {
        if v.index == 0 || v.index > self.half {
            return None;
        }
        Some(match v.side {
            Side::U => v.index - 1,
            Side::V => self.half + v.index - 1,
        })
    }

    fn vertex_at(&self, slot: usize) -> Vertex {
        if slot < self.half {
            Vertex::u(slot + 1)
        } else {
            Vertex::v(slot - self.half + 1)
        }
    }

    fn set_slot(&mut self, slot: usize) {
        self.blocks[slot / 64] |= 1 << (slot % 64);
    }

    pub(crate) fn has_slot(&self, slot: usize) -> bool {
        self.blocks[slot / 64] >> (slot % 64) & 1 == 1
    }

    /// Inserts `v`; returns `false` if it was already present.
    ///
    /// Panics if `v` is out of range for this set's graph.
    pub fn insert(&mut self, v: Vertex) -> bool {
        let slot = self
            .slot(v)
            .unwrap_or_else(|| panic!("{v} out of range for n/2 = {}", self.half));
        let fresh = !self.has_slot(slot);
        self.set_slot(slot);
        fresh
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        match self.slot(v) {
            Some(slot) if self.has_slot(slot) => {
                self.blocks[slot / 64] &= !(1 << (slot % 64));
                true
            }
            _ => false,
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.slot(v).is_some_and(|s| self.has_slot(s))
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// `|S ∩ U|` or `|S ∩ V|`.
    pub fn count_side(&self, side: Side) -> usize {
        self.iter().filter(|v| v.side == side).count()
    }

    /// Members in slot order (U before V, then by index).
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.capacity())
            .filter(|&s| self.has_slot(s))
            .map(|s| self.vertex_at(s))
    }

    /// Sorted indices of the members on one side.
    pub fn side_indices(&self, side: Side) -> Vec<usize> {
        self.iter()
            .filter(|v| v.side == side)
            .map(|v| v.index)
            .collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.half, other.half, "vertex sets of different graphs");
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.half == other.half
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a & !b == 0)
    }

    /// Complement within the graph's vertex set.
    pub fn complement(&self) -> VertexSet {
        let n = self.capacity();
        VertexSet::from_slots(self.half, (0..n).filter(|&s| !self.has_slot(s)))
    }

    pub(crate) fn check_bound(&self, g: &KnodelGraph) -> Result<()> {
        if self.half != g.half() {
            return Err(Error::SetGraphMismatch {
                expected: g.order(),
                found: self.capacity(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

fn assert_bound(g: &KnodelGraph, s: &VertexSet) {
    if let Err(e) = s.check_bound(g) {
        panic!("{e}");
    }
}

/// `N[S]`, the union of the closed neighbourhoods of the members of `s`.
pub fn closed_neighborhood(g: &KnodelGraph, s: &VertexSet) -> VertexSet {
    assert_bound(g, s);
    let mut out = s.clone();
    for v in s.iter() {
        for w in g.neighbors_unchecked(v) {
            out.insert(w);
        }
    }
    out
}

pub fn is_dominating(g: &KnodelGraph, s: &VertexSet) -> bool {
    undominated(g, s).is_empty()
}

/// Vertices outside `N[s]`.
pub fn undominated(g: &KnodelGraph, s: &VertexSet) -> VertexSet {
    closed_neighborhood(g, s).complement()
}

/// Degree bounds `ceil(n / (1 + delta)) <= gamma <= n - delta`.
pub fn gamma_bounds(g: &KnodelGraph) -> (usize, usize) {
    let n = g.order();
    let d = g.delta() as usize;
    (n.div_ceil(d + 1), n - d)
}

/// Greedy dominating set: repeatedly add the vertex that dominates the most
/// undominated vertices. Ties go to the earliest slot (U first, then index).
pub fn greedy_upper_bound(g: &KnodelGraph) -> VertexSet {
    let mut chosen = VertexSet::empty(g);
    let mut open = VertexSet::full(g);
    while !open.is_empty() {
        let mut best: Option<(usize, Vertex)> = None;
        for v in g.vertices() {
            let gain = std::iter::once(v)
                .chain(g.neighbors_unchecked(v))
                .filter(|w| open.contains(*w))
                .count();
            if best.is_none_or(|(b, _)| gain > b) {
                best = Some((gain, v));
            }
        }
        let (_, v) = best.expect("graph has vertices");
        chosen.insert(v);
        open.remove(v);
        for w in g.neighbors_unchecked(v) {
            open.remove(w);
        }
    }
    chosen
}
