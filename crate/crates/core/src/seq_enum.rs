//! Rotation classes of cyclic gap sequences under `M_4` constraints.
//!
//! Only rotations are identified; a sequence and its reversal are different
//! classes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{m_delta, CyclicSequence, KnodelGraph, Vertex};

const DELTA: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceClass {
    pub canonical: CyclicSequence,
    /// Parts that lie in `M_4`.
    pub parts_in_m: usize,
    /// Cyclically adjacent pair sums `n_i + n_{i+1}` that lie in `M_4`.
    pub adjacent_sums_in_m: usize,
    /// Colliding pairs of the reconstructed U-set in `W(4, 2 * total)`, when
    /// that graph exists.
    pub colliding_pairs: Option<usize>,
}

impl SequenceClass {
    fn from_canonical(canonical: CyclicSequence, m: &BTreeSet<usize>) -> Self {
        let colliding_pairs = KnodelGraph::new(DELTA, 2 * canonical.half()).ok().map(|g| {
            let s = reconstruct_positions(&g, &canonical).expect("sum matches half");
            colliding_pairs(&g, &s).expect("U-side set")
        });
        SequenceClass {
            parts_in_m: parts_in(canonical.gaps(), m),
            adjacent_sums_in_m: adjacent_sums_in(canonical.gaps(), m),
            colliding_pairs,
            canonical,
        }
    }
}

fn parts_in(gaps: &[usize], m: &BTreeSet<usize>) -> usize {
    gaps.iter().filter(|g| m.contains(g)).count()
}

/// For `k >= 2`, the `k` cyclic sums `n_i + n_{(i+1) mod k}`; none for `k = 1`.
fn adjacent_sums_in(gaps: &[usize], m: &BTreeSet<usize>) -> usize {
    let k = gaps.len();
    if k < 2 {
        return 0;
    }
    (0..k)
        .filter(|&i| m.contains(&(gaps[i] + gaps[(i + 1) % k])))
        .count()
}

/// Lexicographically smallest rotation.
pub fn canonical_rotation(seq: &CyclicSequence) -> CyclicSequence {
    (0..seq.len())
        .map(|r| seq.rotated(r))
        .min()
        .expect("sequence is nonempty")
}

fn is_canonical(gaps: &[usize]) -> bool {
    let k = gaps.len();
    (1..k).all(|r| {
        let rotated = gaps[r..].iter().chain(&gaps[..r]);
        gaps.iter().le(rotated)
    })
}

/// The U-set `{u_1, u_{1+n_1}, u_{1+n_1+n_2}, …}` with the given gaps.
pub fn reconstruct_positions(g: &KnodelGraph, seq: &CyclicSequence) -> Result<Vec<Vertex>> {
    let sum: usize = seq.gaps().iter().sum();
    if sum != g.half() {
        return Err(Error::GapSumMismatch {
            sum,
            half: g.half(),
        });
    }
    let mut index = 1;
    let mut out = Vec::with_capacity(seq.len());
    for &gap in seq.gaps() {
        out.push(Vertex::u(index));
        index += gap;
    }
    Ok(out)
}

/// Unordered pairs of `s` with a common neighbour.
pub fn colliding_pairs(g: &KnodelGraph, s: &[Vertex]) -> Result<usize> {
    let indices = g.u_indices(s)?;
    let mut count = 0;
    for (i, &a) in indices.iter().enumerate() {
        for &b in &indices[i + 1..] {
            if g.shares_neighbor(Vertex::u(a), Vertex::u(b))? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// All rotation classes of `k` positive parts summing to `total` with exactly
/// `parts_in_m_exact` parts in `M_4` and at most `adjacent_sums_in_m_max`
/// adjacent sums in `M_4`, sorted by canonical form.
pub fn enumerate_sequences(
    k: usize,
    total: usize,
    parts_in_m_exact: usize,
    adjacent_sums_in_m_max: usize,
) -> Vec<SequenceClass> {
    if k == 0 || total < k {
        return Vec::new();
    }
    let m = m_delta(DELTA).expect("delta >= 2");
    let mut out = Vec::new();
    let mut gaps = Vec::with_capacity(k);
    compose(k, total, &mut gaps, &mut |gaps| {
        if is_canonical(gaps)
            && parts_in(gaps, &m) == parts_in_m_exact
            && adjacent_sums_in(gaps, &m) <= adjacent_sums_in_m_max
        {
            let seq = CyclicSequence::new(gaps.to_vec(), total).expect("composition of total");
            out.push(SequenceClass::from_canonical(seq, &m));
        }
    });
    out.sort_by(|a, b| a.canonical.gaps().cmp(b.canonical.gaps()));
    out
}

/// Calls `emit` on every composition of `rest` into `parts` positive parts
/// appended to `gaps`, in lexicographic order.
fn compose(parts: usize, rest: usize, gaps: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if parts == 1 {
        gaps.push(rest);
        emit(gaps);
        gaps.pop();
        return;
    }
    // A canonical sequence starts with its smallest part, so every later part
    // is at least the first one.
    let floor = gaps.first().copied();
    for part in floor.unwrap_or(1)..=rest {
        let min_after = (parts - 1) * floor.unwrap_or(part);
        if part + min_after > rest {
            break;
        }
        gaps.push(part);
        compose(parts - 1, rest - part, gaps, emit);
        gaps.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(gaps: &[usize]) -> CyclicSequence {
        CyclicSequence::from_gaps(gaps.to_vec()).unwrap()
    }

    fn canon_list(classes: &[SequenceClass]) -> Vec<Vec<usize>> {
        classes
            .iter()
            .map(|c| c.canonical.gaps().to_vec())
            .collect()
    }

    #[test]
    fn canonical_rotations() {
        assert_eq!(canonical_rotation(&seq(&[5, 5, 8, 1])), seq(&[1, 5, 5, 8]));
        assert_eq!(canonical_rotation(&seq(&[4, 4, 5])), seq(&[4, 4, 5]));
        assert_eq!(
            canonical_rotation(&seq(&[8, 1, 4, 5, 5])),
            seq(&[1, 4, 5, 5, 8])
        );
        let c = canonical_rotation(&seq(&[3, 1, 2, 1]));
        assert_eq!(canonical_rotation(&c), c);
    }

    #[test]
    fn reconstruct() {
        let g = KnodelGraph::new(4, 26).unwrap();
        assert_eq!(
            reconstruct_positions(&g, &seq(&[3, 5, 5])).unwrap(),
            vec![Vertex::u(1), Vertex::u(4), Vertex::u(9)]
        );
        assert_eq!(
            reconstruct_positions(&g, &seq(&[13])).unwrap(),
            vec![Vertex::u(1)]
        );
        let g = KnodelGraph::new(4, 38).unwrap();
        assert_eq!(
            reconstruct_positions(&g, &seq(&[8, 1, 5, 5])).unwrap(),
            vec![Vertex::u(1), Vertex::u(9), Vertex::u(10), Vertex::u(15)]
        );
        assert_eq!(
            reconstruct_positions(&g, &seq(&[3, 5, 5])),
            Err(Error::GapSumMismatch { sum: 13, half: 19 })
        );
    }

    #[test]
    fn collisions() {
        let g = KnodelGraph::new(4, 38).unwrap();
        assert_eq!(
            colliding_pairs(&g, &[Vertex::u(1), Vertex::u(2), Vertex::u(7)]),
            Ok(2)
        );
        let g = KnodelGraph::new(4, 26).unwrap();
        assert_eq!(
            colliding_pairs(&g, &[Vertex::u(1), Vertex::u(4), Vertex::u(9)]),
            Ok(1)
        );
        assert_eq!(colliding_pairs(&g, &[Vertex::u(5)]), Ok(0));
        assert!(colliding_pairs(&g, &[Vertex::u(1), Vertex::v(4)]).is_err());
    }

    #[test]
    fn table_counts() {
        let t2 = enumerate_sequences(3, 13, 2, 0);
        assert_eq!(
            canon_list(&t2),
            vec![
                vec![1, 4, 8],
                vec![1, 8, 4],
                vec![2, 3, 8],
                vec![2, 8, 3],
                vec![4, 4, 5]
            ]
        );
        let t3 = enumerate_sequences(4, 19, 1, 1);
        assert_eq!(
            canon_list(&t3),
            vec![vec![1, 5, 5, 8], vec![1, 8, 5, 5], vec![4, 5, 5, 5]]
        );
        assert_eq!(enumerate_sequences(4, 19, 2, 0).len(), 10);
    }

    #[test]
    fn class_statistics() {
        for c in enumerate_sequences(3, 13, 2, 0) {
            assert_eq!(c.parts_in_m, 2);
            assert_eq!(c.adjacent_sums_in_m, 0);
            assert!(c.colliding_pairs.unwrap() >= 2);
        }
        // W(4, 8) does not exist
        let small = enumerate_sequences(2, 4, 2, 2);
        assert!(small.iter().all(|c| c.colliding_pairs.is_none()));
    }

    #[test]
    fn infeasible_parameters_yield_nothing() {
        assert!(enumerate_sequences(0, 5, 0, 0).is_empty());
        assert!(enumerate_sequences(6, 5, 0, 0).is_empty());
        assert!(enumerate_sequences(3, 13, 4, 0).is_empty());
    }

    #[test]
    fn single_part() {
        let one = enumerate_sequences(1, 7, 1, 0);
        assert_eq!(canon_list(&one), vec![vec![7]]);
        assert_eq!(one[0].adjacent_sums_in_m, 0);
    }
}
