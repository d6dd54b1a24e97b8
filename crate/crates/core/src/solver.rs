//! Exact domination number by branch and bound, plus a brute-force oracle.
//!
//! The search keeps a pool of still-allowed candidates, picks an undominated
//! vertex `x` whose closed neighbourhood has the fewest allowed candidates,
//! and branches on which of them joins the set. After a branch is exhausted
//! its candidate leaves the pool, so every subset is visited at most once.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use crate::domination::{gamma_bounds, greedy_upper_bound, is_dominating, VertexSet};
use crate::error::{Error, Result};
use crate::graph::KnodelGraph;

const WORDS: usize = 4;

/// Largest order the bit-block search handles.
pub const MAX_ORDER: usize = 64 * WORDS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Mask([u64; WORDS]);

impl Mask {
    fn with(mut self, slot: usize) -> Mask {
        self.0[slot / 64] |= 1 << (slot % 64);
        self
    }

    fn without(mut self, slot: usize) -> Mask {
        self.0[slot / 64] &= !(1 << (slot % 64));
        self
    }

    fn and(self, o: Mask) -> Mask {
        Mask(std::array::from_fn(|i| self.0[i] & o.0[i]))
    }

    fn or(self, o: Mask) -> Mask {
        Mask(std::array::from_fn(|i| self.0[i] | o.0[i]))
    }

    fn and_not(self, o: Mask) -> Mask {
        Mask(std::array::from_fn(|i| self.0[i] & !o.0[i]))
    }

    fn count(self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Set bits in increasing order.
    fn ones(self) -> impl Iterator<Item = usize> {
        self.0.into_iter().enumerate().flat_map(|(i, mut w)| {
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    fn from_slots<I: IntoIterator<Item = usize>>(slots: I) -> Mask {
        slots.into_iter().fold(Mask::default(), Mask::with)
    }
}

/// Precomputed closed-neighbourhood masks of one graph.
struct Instance {
    graph: KnodelGraph,
    delta: usize,
    closed: Vec<Mask>,
    all: Mask,
    side_u: Mask,
}

impl Instance {
    fn new(g: &KnodelGraph) -> Result<Self> {
        let n = g.order();
        if n > MAX_ORDER {
            return Err(Error::GraphTooLarge { n, max: MAX_ORDER });
        }
        let closed = g
            .vertices()
            .map(|v| {
                let nbrs = g.neighbors_unchecked(v).map(|w| g.slot(w));
                Mask::from_slots(std::iter::once(g.slot(v)).chain(nbrs))
            })
            .collect();
        Ok(Instance {
            graph: *g,
            delta: g.delta() as usize,
            closed,
            all: Mask::from_slots(0..n),
            side_u: Mask::from_slots(0..g.half()),
        })
    }

    fn cover(&self, slots: &[usize]) -> Mask {
        slots
            .iter()
            .fold(Mask::default(), |m, &s| m.or(self.closed[s]))
    }

    fn to_set(&self, slots: &[usize]) -> VertexSet {
        VertexSet::from_slots(self.graph.half(), slots.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub certificate: VertexSet,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Bounds known when the time budget ran out. `best` is a dominating set of
/// size `upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unresolved {
    pub lower: usize,
    pub upper: usize,
    pub best: VertexSet,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(SolveResult),
    Unknown(Unresolved),
}

impl SolveOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            SolveOutcome::Solved(r) => Some(r.value),
            SolveOutcome::Unknown(_) => None,
        }
    }

    pub fn solved(self) -> Option<SolveResult> {
        match self {
            SolveOutcome::Solved(r) => Some(r),
            SolveOutcome::Unknown(_) => None,
        }
    }

    pub fn elapsed(&self) -> Duration {
        match self {
            SolveOutcome::Solved(r) => r.elapsed,
            SolveOutcome::Unknown(u) => u.elapsed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Worker count; 1 is the deterministic reference mode.
    pub threads: usize,
    pub time_budget: Option<Duration>,
    /// Replace the certificate by the lexicographically smallest optimal set
    /// (in slot order).
    pub canonical: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            threads: 1,
            time_budget: None,
            canonical: false,
        }
    }
}

/// Shared search state: incumbent bound, its certificate and the abort flags.
struct Shared {
    best: AtomicUsize,
    certificate: Mutex<Option<Vec<usize>>>,
    nodes: AtomicU64,
    deadline: Option<Instant>,
    timed_out: AtomicBool,
    /// Stop at the first set that beats `best` (decision mode).
    first_only: bool,
    found: AtomicBool,
}

impl Shared {
    fn new(
        best: usize,
        certificate: Option<Vec<usize>>,
        deadline: Option<Instant>,
        first_only: bool,
    ) -> Self {
        Shared {
            best: AtomicUsize::new(best),
            certificate: Mutex::new(certificate),
            nodes: AtomicU64::new(0),
            deadline,
            timed_out: AtomicBool::new(false),
            first_only,
            found: AtomicBool::new(false),
        }
    }

    fn offer(&self, slots: &[usize]) {
        let mut cert = self.certificate.lock().expect("incumbent lock poisoned");
        if slots.len() < self.best.load(Ordering::SeqCst) {
            self.best.store(slots.len(), Ordering::SeqCst);
            *cert = Some(slots.to_vec());
            if self.first_only {
                self.found.store(true, Ordering::SeqCst);
            }
        }
    }
}

struct Worker<'a> {
    inst: &'a Instance,
    shared: &'a Shared,
    stack: Vec<usize>,
    nodes: u64,
}

impl<'a> Worker<'a> {
    fn new(inst: &'a Instance, shared: &'a Shared, prefix: &[usize]) -> Self {
        Worker {
            inst,
            shared,
            stack: prefix.to_vec(),
            nodes: 0,
        }
    }

    fn stopped(&self) -> bool {
        if self.shared.timed_out.load(Ordering::Relaxed)
            || self.shared.found.load(Ordering::Relaxed)
        {
            return true;
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(deadline) = self.shared.deadline {
                if Instant::now() >= deadline {
                    self.shared.timed_out.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    /// Picks allowed beyond the current size that can still beat the
    /// incumbent, or `None` when the node is pruned by a counting bound.
    fn budget(&self, undominated: Mask, pool: Mask) -> Option<usize> {
        let size = self.stack.len();
        let best = self.shared.best.load(Ordering::Relaxed);
        if size + 1 >= best {
            return None;
        }
        let remaining = best - 1 - size;
        let open = undominated.count();
        let delta = self.inst.delta;

        // Each pick dominates at most delta + 1 vertices.
        if open.div_ceil(delta + 1) > remaining {
            return None;
        }

        // A U-pick dominates at most delta V-vertices and one U-vertex, and
        // symmetrically for V-picks. With r_u + r_v <= remaining:
        //   open_v <= delta * r_u + r_v  and  open_u <= delta * r_v + r_u.
        if delta > 1 {
            let open_u = undominated.and(self.inst.side_u).count();
            let open_v = open - open_u;
            let need_u = open_v.saturating_sub(remaining).div_ceil(delta - 1);
            let need_v = open_u.saturating_sub(remaining).div_ceil(delta - 1);
            if need_u + need_v > remaining {
                return None;
            }
        }

        // Same counting bound with the best gain still available in the pool.
        let max_gain = pool
            .ones()
            .map(|c| self.inst.closed[c].and(undominated).count())
            .max()
            .unwrap_or(0);
        if max_gain == 0 || open.div_ceil(max_gain) > remaining {
            return None;
        }
        Some(remaining)
    }

    fn branch_vertex(&self, undominated: Mask, pool: Mask) -> Option<Mask> {
        let mut choice: Option<Mask> = None;
        let mut fewest = usize::MAX;
        for x in undominated.ones() {
            let options = self.inst.closed[x].and(pool);
            let k = options.count();
            if k == 0 {
                return None;
            }
            if k < fewest {
                fewest = k;
                choice = Some(options);
                if k == 1 {
                    break;
                }
            }
        }
        choice
    }

    fn dfs(&mut self, dominated: Mask, pool: Mask) {
        if self.stopped() {
            return;
        }
        self.nodes += 1;
        let undominated = self.inst.all.and_not(dominated);
        if undominated.is_empty() {
            self.shared.offer(&self.stack);
            return;
        }
        if self.budget(undominated, pool).is_none() {
            return;
        }
        let Some(options) = self.branch_vertex(undominated, pool) else {
            return;
        };
        let mut pool = pool;
        for c in options.ones() {
            self.stack.push(c);
            self.dfs(dominated.or(self.inst.closed[c]), pool.without(c));
            self.stack.pop();
            pool = pool.without(c);
        }
    }
}

/// A search subproblem: picks made so far and the candidates still allowed.
struct Task {
    prefix: Vec<usize>,
    dominated: Mask,
    pool: Mask,
}

/// Expands the top of the search tree breadth-first into independent tasks,
/// in the same order the sequential search would visit them.
fn split_tasks(inst: &Instance, root: Task, target: usize) -> Vec<Task> {
    let mut tasks = vec![root];
    for _ in 0..8 {
        if tasks.len() >= target {
            break;
        }
        let mut next = Vec::new();
        for task in tasks {
            let undominated = inst.all.and_not(task.dominated);
            if undominated.is_empty() {
                next.push(task);
                continue;
            }
            // Same rule as the sequential search, without incumbent pruning.
            let mut options: Option<Mask> = None;
            let mut fewest = usize::MAX;
            let mut dead = false;
            for x in undominated.ones() {
                let o = inst.closed[x].and(task.pool);
                let k = o.count();
                if k == 0 {
                    dead = true;
                    break;
                }
                if k < fewest {
                    fewest = k;
                    options = Some(o);
                }
            }
            if dead {
                continue;
            }
            let mut pool = task.pool;
            for c in options.expect("undominated vertex exists").ones() {
                let mut prefix = task.prefix.clone();
                prefix.push(c);
                next.push(Task {
                    prefix,
                    dominated: task.dominated.or(inst.closed[c]),
                    pool: pool.without(c),
                });
                pool = pool.without(c);
            }
        }
        tasks = next;
    }
    tasks
}

fn run_search(inst: &Instance, shared: &Shared, root: Task, threads: usize) {
    if threads <= 1 {
        let mut w = Worker::new(inst, shared, &root.prefix);
        w.dfs(root.dominated, root.pool);
        shared.nodes.fetch_add(w.nodes, Ordering::Relaxed);
        return;
    }
    let tasks = split_tasks(inst, root, threads * 16);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("failed to build worker pool");
    pool.install(|| {
        tasks.par_iter().for_each(|t| {
            let mut w = Worker::new(inst, shared, &t.prefix);
            w.dfs(t.dominated, t.pool);
            shared.nodes.fetch_add(w.nodes, Ordering::Relaxed);
        });
    });
}

/// Exact domination number in single-threaded reference mode.
pub fn solve_exact(g: &KnodelGraph, time_budget: Option<Duration>) -> Result<SolveOutcome> {
    solve_with(
        g,
        &SolverConfig {
            time_budget,
            ..SolverConfig::default()
        },
    )
}

pub fn solve_with(g: &KnodelGraph, config: &SolverConfig) -> Result<SolveOutcome> {
    let start = Instant::now();
    let inst = Instance::new(g)?;
    let deadline = config.time_budget.map(|b| start + b);
    let (lower, _) = gamma_bounds(g);

    let greedy = greedy_upper_bound(g);
    let greedy_slots: Vec<usize> = greedy.iter().map(|v| g.slot(v)).collect();

    if config.time_budget == Some(Duration::ZERO) {
        return Ok(SolveOutcome::Unknown(Unresolved {
            lower,
            upper: greedy.len(),
            best: greedy,
            nodes_explored: 0,
            elapsed: start.elapsed(),
        }));
    }

    let shared = Shared::new(greedy_slots.len(), Some(greedy_slots), deadline, false);
    let root = Task {
        prefix: Vec::new(),
        dominated: Mask::default(),
        pool: inst.all,
    };
    run_search(&inst, &shared, root, config.threads.max(1));

    let value = shared.best.load(Ordering::SeqCst);
    let slots = shared
        .certificate
        .into_inner()
        .expect("incumbent lock poisoned")
        .expect("greedy seeds the incumbent");
    let nodes_explored = shared.nodes.load(Ordering::SeqCst);

    if shared.timed_out.load(Ordering::SeqCst) {
        return Ok(SolveOutcome::Unknown(Unresolved {
            lower: lower.min(value),
            upper: value,
            best: inst.to_set(&slots),
            nodes_explored,
            elapsed: start.elapsed(),
        }));
    }

    let certificate = if config.canonical {
        match lexicographic_certificate(&inst, value, deadline) {
            Some(c) => inst.to_set(&c),
            None => {
                return Ok(SolveOutcome::Unknown(Unresolved {
                    lower: value,
                    upper: value,
                    best: inst.to_set(&slots),
                    nodes_explored,
                    elapsed: start.elapsed(),
                }))
            }
        }
    } else {
        inst.to_set(&slots)
    };
    debug_assert!(is_dominating(g, &certificate));

    Ok(SolveOutcome::Solved(SolveResult {
        value,
        certificate,
        nodes_explored,
        elapsed: start.elapsed(),
    }))
}

/// Whether `prefix` extends to a dominating set of size `size` using only
/// slots above the last prefix slot. `None` on timeout.
fn extends(
    inst: &Instance,
    prefix: &[usize],
    size: usize,
    deadline: Option<Instant>,
) -> Option<bool> {
    let last = *prefix.last().expect("nonempty prefix");
    let dominated = inst.cover(prefix);
    let pool = Mask::from_slots(last + 1..inst.graph.order());
    let shared = Shared::new(size + 1, None, deadline, true);
    let root = Task {
        prefix: prefix.to_vec(),
        dominated,
        pool,
    };
    run_search(inst, &shared, root, 1);
    if shared.found.load(Ordering::SeqCst) {
        Some(true)
    } else if shared.timed_out.load(Ordering::SeqCst) {
        None
    } else {
        Some(false)
    }
}

/// Lexicographically smallest dominating set of size `value`, fixing one
/// slot at a time.
fn lexicographic_certificate(
    inst: &Instance,
    value: usize,
    deadline: Option<Instant>,
) -> Option<Vec<usize>> {
    let n = inst.graph.order();
    let mut prefix: Vec<usize> = Vec::with_capacity(value);
    while prefix.len() < value {
        let from = prefix.last().map_or(0, |&s| s + 1);
        let mut fixed = false;
        for c in from..n {
            prefix.push(c);
            if extends(inst, &prefix, value, deadline)? {
                fixed = true;
                break;
            }
            prefix.pop();
        }
        assert!(fixed, "a dominating set of size {value} exists");
    }
    Some(prefix)
}

/// Exhaustive oracle: tries every vertex subset of size `1..=max_size` in
/// lexicographic slot order and returns the first dominating one, or `None`
/// if no dominating set of size at most `max_size` exists.
pub fn brute_force_min(g: &KnodelGraph, max_size: usize) -> Option<SolveResult> {
    let start = Instant::now();
    let mut nodes = 0u64;
    for k in 1..=max_size.min(g.order()) {
        for combo in (0..g.order()).combinations(k) {
            nodes += 1;
            let set = VertexSet::from_slots(g.half(), combo);
            if is_dominating(g, &set) {
                return Some(SolveResult {
                    value: k,
                    certificate: set,
                    nodes_explored: nodes,
                    elapsed: start.elapsed(),
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn graph(n: usize) -> KnodelGraph {
        KnodelGraph::new(4, n).unwrap()
    }

    fn exact(n: usize) -> SolveResult {
        solve_exact(&graph(n), None).unwrap().solved().unwrap()
    }

    #[test]
    fn mask_ones_in_order() {
        let m = Mask::from_slots([0, 3, 63, 64, 200]);
        assert_eq!(m.ones().collect::<Vec<_>>(), vec![0, 3, 63, 64, 200]);
        assert_eq!(m.count(), 5);
        assert!(m
            .without(0)
            .without(3)
            .without(63)
            .without(64)
            .without(200)
            .is_empty());
    }

    #[test]
    fn small_exact_values() {
        assert_eq!(exact(16).value, 4);
        assert_eq!(exact(26).value, 7);
    }

    #[test]
    fn certificates_are_dominating() {
        for n in [16, 18, 20, 28, 30] {
            let r = exact(n);
            assert!(is_dominating(&graph(n), &r.certificate));
            assert_eq!(r.certificate.len(), r.value);
        }
    }

    #[test]
    fn brute_force_values() {
        assert_eq!(brute_force_min(&graph(16), 4).unwrap().value, 4);
        assert_eq!(brute_force_min(&graph(18), 4).unwrap().value, 4);
        assert!(brute_force_min(&graph(16), 3).is_none());
    }

    #[test]
    fn brute_force_returns_first_lexicographic_set() {
        let g = graph(16);
        let r = brute_force_min(&g, 4).unwrap();
        let canonical = solve_with(
            &g,
            &SolverConfig {
                canonical: true,
                ..SolverConfig::default()
            },
        )
        .unwrap()
        .solved()
        .unwrap();
        assert_eq!(r.certificate, canonical.certificate);
        assert!(r.certificate.contains(Vertex::u(1)));
    }

    #[test]
    fn zero_budget_reports_bounds() {
        let g = graph(50);
        match solve_exact(&g, Some(Duration::ZERO)).unwrap() {
            SolveOutcome::Unknown(u) => {
                assert_eq!(u.lower, 10);
                assert!(u.upper >= u.lower);
                assert!(is_dominating(&g, &u.best));
                assert_eq!(u.best.len(), u.upper);
            }
            SolveOutcome::Solved(_) => panic!("zero budget must skip the search"),
        }
    }

    #[test]
    fn parallel_value_matches_sequential() {
        for n in [22, 26, 32] {
            let g = graph(n);
            let par = solve_with(
                &g,
                &SolverConfig {
                    threads: 4,
                    ..SolverConfig::default()
                },
            )
            .unwrap()
            .solved()
            .unwrap();
            assert_eq!(par.value, exact(n).value);
            assert!(is_dominating(&g, &par.certificate));
        }
    }

    #[test]
    fn other_degrees() {
        // W(2, n) is the cycle C_n, gamma = ceil(n / 3).
        for n in (4..=30).step_by(2) {
            let g = KnodelGraph::new(2, n).unwrap();
            let r = solve_exact(&g, None).unwrap().solved().unwrap();
            assert_eq!(r.value, n.div_ceil(3), "n = {n}");
        }
        // W(1, n) is a perfect matching.
        let g = KnodelGraph::new(1, 10).unwrap();
        assert_eq!(solve_exact(&g, None).unwrap().value(), Some(5));
    }

    #[test]
    fn rejects_oversized_graphs() {
        let g = KnodelGraph::new(4, 300).unwrap();
        assert!(matches!(
            solve_exact(&g, None),
            Err(Error::GraphTooLarge { .. })
        ));
    }
}
