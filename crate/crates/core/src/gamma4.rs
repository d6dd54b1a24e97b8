//! Closed-form domination number of `W(4, n)` and explicit minimum
//! dominating sets for every even `n >= 16`.

use crate::domination::{is_dominating, undominated, VertexSet};
use crate::error::{Error, Result};
use crate::graph::KnodelGraph;

pub const DELTA: u32 = 4;

/// Smallest order for which `W(4, n)` exists.
pub const MIN_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaFormulaResult {
    pub n: usize,
    /// `floor(n / 10)`
    pub t: usize,
    pub residue: usize,
    pub addend: usize,
    pub value: usize,
    pub exceptional: bool,
}

/// Orders whose value or construction does not follow the residue class.
pub const EXCEPTIONAL_ORDERS: [usize; 6] = [16, 18, 26, 28, 36, 38];

/// Hardcoded minimum dominating sets for the exceptional orders, as
/// `(n, u-indices, v-indices)`.
///
/// For n = 28 the commonly quoted set `{u1,u6,u11,u13,v3,v5,v9}` misses
/// `u7` and `v10`; `u6 -> u7` is the only single-vertex substitution that
/// dominates, so the table carries that set.
pub const EXCEPTIONAL_SETS: [(usize, &[usize], &[usize]); 6] = [
    (16, &[1, 2], &[6, 7]),
    (18, &[1, 2], &[6, 7]),
    (26, &[1, 4, 9, 10], &[1, 2, 6]),
    (28, &[1, 7, 11, 13], &[3, 5, 9]),
    (36, &[1, 2, 10, 11], &[6, 7, 15, 16]),
    (38, &[1, 6, 11, 16, 18], &[3, 5, 10, 13, 15]),
];

fn check_order(n: usize) -> Result<()> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddOrder(n));
    }
    if n < MIN_ORDER {
        return Err(Error::OrderTooSmall(n));
    }
    Ok(())
}

fn exceptional_addend(n: usize) -> Option<usize> {
    match n {
        16 | 18 | 36 => Some(2),
        26 | 28 => Some(3),
        38 => Some(4),
        _ => None,
    }
}

/// `gamma(W(4, n)) = 2 floor(n/10) + addend`.
pub fn gamma_formula(n: usize) -> Result<GammaFormulaResult> {
    check_order(n)?;
    let t = n / 10;
    let residue = n % 10;
    let exceptional = EXCEPTIONAL_ORDERS.contains(&n);
    let addend = match exceptional_addend(n) {
        Some(a) => a,
        None => match residue {
            0 => 0,
            2 | 4 => 2,
            6 => 3,
            8 => 4,
            _ => unreachable!("n is even"),
        },
    };
    Ok(GammaFormulaResult {
        n,
        t,
        residue,
        addend,
        value: 2 * t + addend,
        exceptional,
    })
}

/// `first, first + 5, …, last`.
fn stride5(first: usize, last: usize) -> impl Iterator<Item = usize> {
    (first..=last).step_by(5)
}

/// Index lists `(u, v)` of the residue-class construction, without verification.
pub fn construction_indices(n: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    check_order(n)?;
    if let Some(&(_, u, v)) = EXCEPTIONAL_SETS.iter().find(|(m, _, _)| *m == n) {
        return Ok((u.to_vec(), v.to_vec()));
    }
    let t = n / 10;
    let mut v: Vec<usize> = stride5(5, 5 * t).collect();
    let u: Vec<usize> = match n % 10 {
        0 => stride5(1, 5 * t - 4).collect(),
        _ => stride5(1, 5 * t + 1).collect(),
    };
    match n % 10 {
        0 => {}
        2 => v.push(5 * t + 1),
        4 => v.push(3),
        6 => v.extend([2, 3]),
        8 => v.extend([3, 5 * t - 2, 5 * t + 3]),
        _ => unreachable!("n is even"),
    }
    v.sort_unstable();
    Ok((u, v))
}

/// A minimum dominating set of `W(4, n)`, re-verified before it is returned.
///
/// Fails with the undominated vertices if the construction does not dominate.
pub fn construct_dominating_set(n: usize) -> Result<VertexSet> {
    let (u, v) = construction_indices(n)?;
    let g = KnodelGraph::new(DELTA, n)?;
    let d = VertexSet::from_indices(&g, &u, &v)?;
    if !is_dominating(&g, &d) {
        return Err(Error::ConstructionFailed {
            n,
            undominated: undominated(&g, &d).iter().collect(),
        });
    }
    Ok(d)
}
