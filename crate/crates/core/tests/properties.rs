use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;

use knodel::domination::{closed_neighborhood, is_dominating, undominated, VertexSet};
use knodel::graph::m_delta;
use knodel::seq_enum::{
    canonical_rotation, colliding_pairs, enumerate_sequences, reconstruct_positions,
};
use knodel::{CyclicSequence, KnodelGraph, Side, Vertex};

fn valid_graphs(max_n: usize) -> impl Iterator<Item = KnodelGraph> {
    (2..=max_n)
        .step_by(2)
        .flat_map(|n| (1..=n.ilog2()).map(move |d| KnodelGraph::new(d, n).unwrap()))
}

#[test]
fn regular_and_bipartite() {
    for g in valid_graphs(64) {
        for x in g.vertices() {
            let nbrs = g.neighbors(x).unwrap();
            assert_eq!(nbrs.len(), g.delta() as usize, "{g} {x}");
            assert!(nbrs.iter().all(|y| y.side == x.side.opposite()));
        }
        assert_eq!(g.edges().count(), g.delta() as usize * g.half());
    }
}

#[test]
fn adjacency_is_symmetric() {
    for g in valid_graphs(64) {
        for x in g.vertices() {
            for y in g.neighbors(x).unwrap() {
                assert!(g.neighbors(y).unwrap().contains(&x), "{g}: {x} -> {y}");
            }
        }
    }
}

#[test]
fn u_adjacency_follows_the_zero_based_rule() {
    // (1, j) ~ (2, (j + 2^k - 1) mod n/2) on the original labels.
    for g in valid_graphs(40) {
        for (u, v) in g.edges() {
            let (pu, j) = u.original_label();
            let (pv, j2) = v.original_label();
            assert_eq!((pu, pv), (1, 2));
            assert!((0..g.delta()).any(|k| (j + (1 << k) - 1) % g.half() == j2));
        }
    }
}

#[test]
fn m_delta_sizes() {
    for d in 2..=10u32 {
        let d_us = d as usize;
        assert_eq!(m_delta(d).unwrap().len(), d_us * (d_us - 1) / 2);
    }
}

/// Sums of runs of consecutive gaps (cyclically), with lengths 1..k-1.
fn run_sums(gaps: &[usize]) -> BTreeSet<usize> {
    let k = gaps.len();
    let mut out = BTreeSet::new();
    for start in 0..k {
        let mut s = 0;
        for len in 1..k {
            s += gaps[(start + len - 1) % k];
            out.insert(s);
        }
    }
    out
}

fn u_subset(half: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::btree_set(1..=half, 1..=half.min(8)).prop_map(|s| s.into_iter().collect())
}

fn graph_and_u_subset() -> impl Strategy<Value = (KnodelGraph, Vec<Vertex>)> {
    (8usize..=32).prop_flat_map(|half| {
        let g = KnodelGraph::new(4, 2 * half).unwrap();
        u_subset(half).prop_map(move |idx| (g, idx.into_iter().map(Vertex::u).collect()))
    })
}

proptest! {
    #[test]
    fn gap_sum_is_half((g, s) in graph_and_u_subset()) {
        let seq = g.cyclic_sequence(&s).unwrap();
        prop_assert_eq!(seq.gaps().iter().sum::<usize>(), g.half());
        prop_assert!(seq.gaps().iter().all(|&x| x >= 1));
    }

    #[test]
    fn index_distance_is_a_run_sum((g, s) in graph_and_u_subset()) {
        prop_assume!(s.len() >= 2);
        let seq = g.cyclic_sequence(&s).unwrap();
        let sums = run_sums(seq.gaps());
        for (a, b) in s.iter().tuple_combinations() {
            let id = g.index_distance(*a, *b).unwrap();
            prop_assert_eq!(id, g.index_distance(*b, *a).unwrap());
            prop_assert!(id >= 1 && id <= g.half() / 2);
            prop_assert!(sums.contains(&id) || sums.contains(&(g.half() - id)));
            prop_assert!(sums.contains(&id) && sums.contains(&(g.half() - id)));
        }
    }

    #[test]
    fn reconstruct_inverts_cyclic_sequence(gaps in proptest::collection::vec(1usize..12, 1..10)) {
        let half: usize = gaps.iter().sum();
        prop_assume!(2 * half >= 16);
        let g = KnodelGraph::new(4, 2 * half).unwrap();
        let seq = CyclicSequence::new(gaps, half).unwrap();
        let u_set = reconstruct_positions(&g, &seq).unwrap();
        let back = g.cyclic_sequence(&u_set).unwrap();
        prop_assert!(back.is_rotation_of(&seq));
        prop_assert_eq!(canonical_rotation(&back), canonical_rotation(&seq));
    }

    #[test]
    fn canonical_rotation_is_minimal_and_idempotent(gaps in proptest::collection::vec(1usize..9, 1..9)) {
        let seq = CyclicSequence::from_gaps(gaps).unwrap();
        let c = canonical_rotation(&seq);
        prop_assert!(c.is_rotation_of(&seq));
        for r in 0..seq.len() {
            prop_assert!(c.gaps() <= seq.rotated(r).gaps());
        }
        prop_assert_eq!(canonical_rotation(&c), c);
    }
}

fn random_set(half: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (
        u_subset(half),
        proptest::collection::btree_set(1..=half, 0..=half.min(8)),
    )
        .prop_map(|(u, v)| (u, v.into_iter().collect()))
}

fn graph_and_set(max_half: usize) -> impl Strategy<Value = (KnodelGraph, VertexSet)> {
    (8usize..=max_half).prop_flat_map(|half| {
        let g = KnodelGraph::new(4, 2 * half).unwrap();
        random_set(half).prop_map(move |(u, v)| (g, VertexSet::from_indices(&g, &u, &v).unwrap()))
    })
}

proptest! {
    #[test]
    fn dominating_iff_nothing_undominated((g, s) in graph_and_set(32)) {
        prop_assert_eq!(is_dominating(&g, &s), undominated(&g, &s).is_empty());
        let cover = closed_neighborhood(&g, &s);
        prop_assert!(s.is_subset(&cover));
        prop_assert_eq!(cover.len() + undominated(&g, &s).len(), g.order());
    }

    #[test]
    fn closed_neighborhood_is_monotone((g, s) in graph_and_set(32), extra in proptest::collection::vec(0usize..64, 0..6)) {
        let mut bigger = s.clone();
        for x in extra {
            bigger.insert(g.vertices().nth(x % g.order()).unwrap());
        }
        prop_assert!(closed_neighborhood(&g, &s).is_subset(&closed_neighborhood(&g, &bigger)));
    }

    #[test]
    fn v_coverage_counting_bound((g, s) in graph_and_set(24)) {
        let covered_v = closed_neighborhood(&g, &s).count_side(Side::V);
        prop_assert!(covered_v <= 4 * s.count_side(Side::U) + s.count_side(Side::V));
        prop_assert_eq!(s.len(), s.count_side(Side::U) + s.count_side(Side::V));
    }

    #[test]
    fn collisions_match_neighbour_intersections((g, s) in graph_and_u_subset()) {
        let brute = s
            .iter()
            .tuple_combinations()
            .filter(|(a, b)| !g.common_neighbors(**a, **b).unwrap().is_empty())
            .count();
        prop_assert_eq!(colliding_pairs(&g, &s).unwrap(), brute);
    }
}

/// Every composition of `total` into `k` positive parts, unfiltered.
fn all_compositions(k: usize, total: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![total]];
    }
    (1..=total.saturating_sub(k - 1))
        .flat_map(|first| {
            all_compositions(k - 1, total - first)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// Brute force: filter every composition, then take the minimum rotation.
fn brute_classes(k: usize, total: usize, exact: usize, adj_max: usize) -> BTreeSet<Vec<usize>> {
    let m = m_delta(4).unwrap();
    all_compositions(k, total)
        .into_iter()
        .filter(|c| c.iter().filter(|x| m.contains(x)).count() == exact)
        .filter(|c| {
            let adj = if k < 2 {
                0
            } else {
                (0..k)
                    .filter(|&i| m.contains(&(c[i] + c[(i + 1) % k])))
                    .count()
            };
            adj <= adj_max
        })
        .map(|c| (0..k).map(|r| [&c[r..], &c[..r]].concat()).min().unwrap())
        .collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for &(k, total, exact, adj) in &[
        (3, 13, 2, 0),
        (4, 19, 1, 1),
        (4, 19, 2, 0),
        (4, 14, 1, 0),
        (5, 23, 2, 0),
        (3, 14, 1, 0),
        (2, 9, 1, 2),
        (1, 6, 1, 0),
    ] {
        let got: Vec<Vec<usize>> = enumerate_sequences(k, total, exact, adj)
            .iter()
            .map(|c| c.canonical.gaps().to_vec())
            .collect();
        let want: Vec<Vec<usize>> = brute_classes(k, total, exact, adj).into_iter().collect();
        assert_eq!(got, want, "k={k} total={total} exact={exact} adj={adj}");
    }
}

#[test]
fn residue_six_family_for_t_five() {
    // 6 parts summing to 28: brute force gives 7 rotation classes.
    let brute = brute_classes(6, 28, 2, 0);
    assert_eq!(brute.len(), 7);
    let classes = enumerate_sequences(6, 28, 2, 0);
    let got: BTreeSet<Vec<usize>> = classes
        .iter()
        .map(|c| c.canonical.gaps().to_vec())
        .collect();
    assert_eq!(got, brute);
    // Four fixed prefixes padded with 5s, plus the two-4s family.
    for pattern in [
        vec![8, 1, 4, 5, 5, 5],
        vec![4, 1, 8, 5, 5, 5],
        vec![3, 2, 8, 5, 5, 5],
        vec![8, 2, 3, 5, 5, 5],
        vec![4, 4, 5, 5, 5, 5],
        vec![4, 5, 4, 5, 5, 5],
        vec![4, 5, 5, 4, 5, 5],
    ] {
        let c = canonical_rotation(&CyclicSequence::from_gaps(pattern.clone()).unwrap());
        assert!(got.contains(c.gaps()), "{pattern:?}");
    }
}

#[test]
fn emitted_classes_are_consistent() {
    let m = m_delta(4).unwrap();
    for &(k, total, exact, adj) in &[(3, 13, 2, 0), (4, 19, 1, 1), (4, 19, 2, 0), (6, 28, 2, 0)] {
        let classes = enumerate_sequences(k, total, exact, adj);
        for c in &classes {
            let gaps = c.canonical.gaps();
            assert_eq!(gaps.len(), k);
            assert_eq!(gaps.iter().sum::<usize>(), total);
            assert_eq!(gaps.iter().filter(|x| m.contains(x)).count(), exact);
            let adj_count = (0..k)
                .filter(|&i| m.contains(&(gaps[i] + gaps[(i + 1) % k])))
                .count();
            assert!(adj_count <= adj);
            assert_eq!(c.parts_in_m, exact);
            assert_eq!(c.adjacent_sums_in_m, adj_count);
            assert_eq!(&canonical_rotation(&c.canonical), &c.canonical);
            assert!(c.colliding_pairs.unwrap() >= exact);
        }
        for (a, b) in classes.iter().tuple_combinations() {
            assert!(!a.canonical.is_rotation_of(&b.canonical));
        }
    }
}
