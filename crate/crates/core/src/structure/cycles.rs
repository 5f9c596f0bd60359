//! Exact longest-cycle search.
//!
//! Cycles are grown as paths from their smallest vertex. A branch is cut when
//! the vertices still reachable from the path end (after discarding those
//! with fewer than two usable neighbours) cannot lift the cycle above the
//! current goal. Every search is bounded by a node budget; running out is an
//! error, never an approximate answer.

use std::collections::HashMap;

use crate::error::{Result, TuranError};
use crate::graph::{bits, low_mask, SmallGraph};
use crate::structure::blocks::block_decomposition;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug)]
pub struct NodeBudget {
    pub used: u64,
    pub limit: u64,
}

impl NodeBudget {
    pub fn new(limit: u64) -> Self {
        NodeBudget { used: 0, limit }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(TuranError::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for NodeBudget {
    fn default() -> Self {
        Self::new(DEFAULT_NODE_BUDGET)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Find cycles longer than `best`; stop once `best >= stop_at`.
    Maximize { stop_at: usize },
    /// Record every cycle of exactly this length, once per direction pair.
    Exactly(usize),
}

struct PathSearch<'a, 'b> {
    g: &'a SmallGraph,
    start: usize,
    allowed: u64,
    mode: Mode,
    path: Vec<usize>,
    best: usize,
    best_path: Vec<usize>,
    found: Vec<Vec<usize>>,
    budget: &'b mut NodeBudget,
}

impl PathSearch<'_, '_> {
    fn goal(&self) -> usize {
        match self.mode {
            Mode::Maximize { .. } => self.best + 1,
            Mode::Exactly(c) => c,
        }
    }

    /// Returns `true` when the search should stop entirely.
    fn extend(&mut self, end: usize, used: u64) -> Result<bool> {
        self.budget.tick()?;
        let len = self.path.len();
        let s = self.start;
        if len >= 3 && self.g.neighbors(end) >> s & 1 == 1 {
            match self.mode {
                Mode::Maximize { stop_at } => {
                    if len > self.best {
                        self.best = len;
                        self.best_path = self.path.clone();
                        if self.best >= stop_at {
                            return Ok(true);
                        }
                    }
                }
                Mode::Exactly(c) => {
                    if len == c && self.path[1] < self.path[len - 1] {
                        self.found.push(self.path.clone());
                    }
                }
            }
        }
        if let Mode::Exactly(c) = self.mode {
            if len >= c {
                return Ok(false);
            }
        }
        let avail = self.allowed & !used;
        let mut r = self.g.reach(end, avail | 1 << end) & avail;
        let anchors = 1u64 << end | 1 << s;
        loop {
            let mut keep = r;
            for x in bits(r) {
                if (self.g.neighbors(x) & (r | anchors)).count_ones() < 2 {
                    keep &= !(1 << x);
                }
            }
            if keep == r {
                break;
            }
            r = keep;
        }
        if r & self.g.neighbors(s) == 0 || len + (r.count_ones() as usize) < self.goal() {
            return Ok(false);
        }
        for w in bits(self.g.neighbors(end) & r) {
            self.path.push(w);
            let stop = self.extend(w, used | 1 << w)?;
            self.path.pop();
            if stop {
                return Ok(true);
            }
            if len + (r.count_ones() as usize) < self.goal() {
                break;
            }
        }
        Ok(false)
    }
}

/// Drop members of false-twin classes beyond `keep(|N|)` per class.
///
/// Pairwise non-adjacent vertices with the same neighbourhood `N` inside
/// `within` are interchangeable, and a cycle visits at most `|N|` of them.
pub(crate) fn reduce_false_twins(
    g: &SmallGraph,
    within: u64,
    keep: impl Fn(usize) -> usize,
) -> u64 {
    let mut classes: HashMap<u64, Vec<usize>> = HashMap::new();
    for v in bits(within) {
        classes.entry(g.neighbors(v) & within).or_default().push(v);
    }
    let mut out = within;
    for (nbrs, members) in classes {
        let k = keep(nbrs.count_ones() as usize);
        for &v in members.iter().skip(k) {
            out &= !(1 << v);
        }
    }
    out
}

/// Longest cycle inside `mask` with cycles not required to be found if
/// shorter than `floor + 1`; returns (length, witness) with length 0 if none
/// longer than `floor` exists.
fn maximize_in(
    g: &SmallGraph,
    mask: u64,
    floor: usize,
    stop_at: usize,
    budget: &mut NodeBudget,
) -> Result<(usize, Vec<usize>)> {
    let mut best = floor;
    let mut best_path = Vec::new();
    for s in bits(mask) {
        let allowed = mask & !low_mask(s + 1);
        if (allowed.count_ones() as usize) < best {
            break;
        }
        let mut search = PathSearch {
            g,
            start: s,
            allowed,
            mode: Mode::Maximize { stop_at },
            path: vec![s],
            best,
            best_path: Vec::new(),
            found: Vec::new(),
            budget,
        };
        let stop = search.extend(s, 1 << s)?;
        if search.best > best {
            best = search.best;
            best_path = search.best_path;
        }
        if stop || best >= stop_at {
            break;
        }
    }
    Ok((best, best_path))
}

/// Cycle-bearing blocks, twin-reduced, largest first.
fn reduced_blocks(g: &SmallGraph) -> Vec<u64> {
    let mut blocks: Vec<u64> = block_decomposition(g)
        .blocks
        .into_iter()
        .filter(|b| b.count_ones() >= 3)
        .map(|b| reduce_false_twins(g, b, |k| k))
        .collect();
    blocks.sort_by_key(|b| std::cmp::Reverse(b.count_ones()));
    blocks
}

pub fn circumference(g: &SmallGraph) -> Result<usize> {
    circumference_with_budget(g, &mut NodeBudget::default())
}

/// Length of a longest cycle, 0 for forests.
pub fn circumference_with_budget(g: &SmallGraph, budget: &mut NodeBudget) -> Result<usize> {
    Ok(longest_cycle_with_budget(g, budget)?.map_or(0, |c| c.len()))
}

/// One longest cycle as a vertex sequence, or `None` for forests.
pub fn longest_cycle_with_budget(
    g: &SmallGraph,
    budget: &mut NodeBudget,
) -> Result<Option<Vec<usize>>> {
    let mut best = 0;
    let mut best_path = Vec::new();
    for block in reduced_blocks(g) {
        let size = block.count_ones() as usize;
        if size <= best {
            break;
        }
        let (len, path) = maximize_in(g, block, best, size, budget)?;
        if len > best {
            best = len;
            best_path = path;
        }
    }
    Ok(if best == 0 { None } else { Some(best_path) })
}

pub fn has_cycle_geq(g: &SmallGraph, k: usize) -> Result<bool> {
    has_cycle_geq_with_budget(g, k, &mut NodeBudget::default())
}

pub fn has_cycle_geq_with_budget(g: &SmallGraph, k: usize, budget: &mut NodeBudget) -> Result<bool> {
    if k < 3 {
        return Err(TuranError::InvalidArgument(format!("cycle threshold {k} < 3")));
    }
    for block in reduced_blocks(g) {
        if (block.count_ones() as usize) < k {
            break;
        }
        let (len, _) = maximize_in(g, block, k - 1, k, budget)?;
        if len >= k {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether some cycle of length at least `k` passes through `v`.
pub(crate) fn has_cycle_through_geq(
    g: &SmallGraph,
    v: usize,
    k: usize,
    budget: &mut NodeBudget,
) -> Result<bool> {
    if g.order() < k || g.degree(v) < 2 {
        return Ok(false);
    }
    let mut search = PathSearch {
        g,
        start: v,
        allowed: g.vertex_mask() & !(1 << v),
        mode: Mode::Maximize { stop_at: k },
        path: vec![v],
        best: k - 1,
        best_path: Vec::new(),
        found: Vec::new(),
        budget,
    };
    search.extend(v, 1 << v)?;
    Ok(search.best >= k)
}

pub fn longest_cycles(g: &SmallGraph) -> Result<Vec<Vec<usize>>> {
    longest_cycles_with_budget(g, &mut NodeBudget::default())
}

/// Every longest cycle once, up to rotation and reflection. Each cycle
/// starts at its smallest vertex and its second vertex is smaller than its
/// last.
pub fn longest_cycles_with_budget(g: &SmallGraph, budget: &mut NodeBudget) -> Result<Vec<Vec<usize>>> {
    let c = circumference_with_budget(g, budget)?;
    if c == 0 {
        return Ok(Vec::new());
    }
    cycles_of_length_in(g, g.vertex_mask(), c, budget)
}

/// All cycles of exactly length `c` inside `mask`.
pub(crate) fn cycles_of_length_in(
    g: &SmallGraph,
    mask: u64,
    c: usize,
    budget: &mut NodeBudget,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for s in bits(mask) {
        let allowed = mask & !low_mask(s + 1);
        if 1 + (allowed.count_ones() as usize) < c {
            break;
        }
        let mut search = PathSearch {
            g,
            start: s,
            allowed,
            mode: Mode::Exactly(c),
            path: vec![s],
            best: 0,
            best_path: Vec::new(),
            found: Vec::new(),
            budget,
        };
        search.extend(s, 1 << s)?;
        out.append(&mut search.found);
    }
    out.sort();
    Ok(out)
}

/// Longest cycles of `g` with false twins collapsed: one representative per
/// class of cycles that differ only by swapping interchangeable vertices.
pub fn longest_cycle_representatives(g: &SmallGraph, budget: &mut NodeBudget) -> Result<Vec<Vec<usize>>> {
    let c = circumference_with_budget(g, budget)?;
    if c == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for block in reduced_blocks(g) {
        if (block.count_ones() as usize) < c {
            continue;
        }
        out.extend(cycles_of_length_in(g, block, c, budget)?);
    }
    out.sort();
    Ok(out)
}

/// Quantities on the exterior of a cycle `C`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CycleExteriorStats {
    pub c: usize,
    /// e(G − C)
    pub e_out: usize,
    /// e(G − C, C)
    pub e_cross: usize,
    /// e(G[C])
    pub e_inside: usize,
    /// Exterior vertices with exactly ⌊c/2⌋ neighbours on C.
    pub a_set: u64,
    /// max d_C(u) over exterior u, 0 when C is spanning.
    pub max_out_deg: usize,
}

impl CycleExteriorStats {
    pub fn a_size(&self) -> usize {
        self.a_set.count_ones() as usize
    }
}

pub fn validate_cycle(g: &SmallGraph, cycle: &[usize]) -> Result<u64> {
    let c = cycle.len();
    if c < 3 {
        return Err(TuranError::NotACycle(format!("length {c} < 3")));
    }
    let mut mask = 0u64;
    for (i, &v) in cycle.iter().enumerate() {
        if v >= g.order() {
            return Err(TuranError::VertexOutOfRange {
                vertex: v,
                order: g.order(),
            });
        }
        if mask >> v & 1 == 1 {
            return Err(TuranError::NotACycle(format!("vertex {v} repeated")));
        }
        mask |= 1 << v;
        let w = cycle[(i + 1) % c];
        if !g.has_edge(v, w) {
            return Err(TuranError::NotACycle(format!("{v}-{w} is not an edge")));
        }
    }
    Ok(mask)
}

pub fn cycle_exterior_stats(g: &SmallGraph, cycle: &[usize]) -> Result<CycleExteriorStats> {
    let on = validate_cycle(g, cycle)?;
    let off = g.vertex_mask() & !on;
    let c = cycle.len();
    let half = c / 2;
    let mut a_set = 0u64;
    let mut max_out_deg = 0;
    for u in bits(off) {
        let d = (g.neighbors(u) & on).count_ones() as usize;
        max_out_deg = max_out_deg.max(d);
        if d == half {
            a_set |= 1 << u;
        }
    }
    Ok(CycleExteriorStats {
        c,
        e_out: g.edges_within(off),
        e_cross: g.edges_between(off, on),
        e_inside: g.edges_within(on),
        a_set,
        max_out_deg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::friendship_graph;

    /// Exhaustive simple-cycle enumeration over all vertex orderings; only
    /// for tiny graphs.
    fn brute_circumference(g: &SmallGraph) -> usize {
        fn rec(g: &SmallGraph, path: &mut Vec<usize>, used: u64, best: &mut usize) {
            let end = *path.last().unwrap();
            if path.len() >= 3 && g.has_edge(end, path[0]) {
                *best = (*best).max(path.len());
            }
            for w in bits(g.neighbors(end) & !used) {
                if w > path[0] {
                    path.push(w);
                    rec(g, path, used | 1 << w, best);
                    path.pop();
                }
            }
        }
        let mut best = 0;
        for s in 0..g.order() {
            rec(g, &mut vec![s], 1 << s, &mut best);
        }
        best
    }

    #[test]
    fn circumference_examples() {
        assert_eq!(circumference(&SmallGraph::cycle(5).unwrap()).unwrap(), 5);
        assert_eq!(circumference(&SmallGraph::path(6).unwrap()).unwrap(), 0);
        assert_eq!(circumference(&SmallGraph::complete_bipartite(1, 5).unwrap()).unwrap(), 0);
        let petersen = SmallGraph::petersen();
        assert_eq!(brute_circumference(&petersen), 9);
        assert_eq!(circumference(&petersen).unwrap(), 9);
    }

    #[test]
    fn has_cycle_geq_examples() {
        let c5 = SmallGraph::cycle(5).unwrap();
        assert!(has_cycle_geq(&c5, 5).unwrap());
        assert!(!has_cycle_geq(&c5, 6).unwrap());
        assert!(!has_cycle_geq(&friendship_graph(2).unwrap(), 4).unwrap());
        assert!(has_cycle_geq(&c5, 2).is_err());
    }

    #[test]
    fn longest_cycles_examples() {
        assert_eq!(longest_cycles(&SmallGraph::cycle(4).unwrap()).unwrap().len(), 1);
        let bowtie = longest_cycles(&friendship_graph(2).unwrap()).unwrap();
        assert_eq!(bowtie.len(), 2);
        assert!(bowtie.iter().all(|c| c.len() == 3));
        let k4 = longest_cycles(&SmallGraph::complete(4).unwrap()).unwrap();
        assert_eq!(k4.len(), 3);
        assert!(k4.iter().all(|c| c.len() == 4));
    }

    #[test]
    fn budget_is_an_error() {
        let g = SmallGraph::complete(12).unwrap();
        let mut tiny = NodeBudget::new(3);
        let r = longest_cycles_with_budget(&g, &mut tiny);
        assert!(matches!(r, Err(TuranError::BudgetExceeded { budget: 3 })));
    }

    #[test]
    fn twins_collapse_in_large_joins() {
        // K_3 ∨ I_40: only three independent vertices fit on a cycle.
        let g = SmallGraph::complete(3)
            .unwrap()
            .join(&SmallGraph::empty(40).unwrap())
            .unwrap();
        assert_eq!(circumference(&g).unwrap(), 6);
        let c = longest_cycle_with_budget(&g, &mut NodeBudget::default()).unwrap().unwrap();
        validate_cycle(&g, &c).unwrap();
    }

    #[test]
    fn exterior_stats_examples() {
        let bowtie = friendship_graph(2).unwrap();
        // triangle 0-1-2, the other triangle is 0-3-4
        let s = cycle_exterior_stats(&bowtie, &[0, 1, 2]).unwrap();
        assert_eq!((s.e_out, s.e_cross, s.a_size(), s.max_out_deg), (1, 2, 2, 1));

        let c4_pendant = SmallGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let s = cycle_exterior_stats(&c4_pendant, &[0, 1, 2, 3]).unwrap();
        assert_eq!((s.e_out, s.e_cross, s.a_size()), (0, 1, 0));

        let k5 = SmallGraph::complete(5).unwrap();
        let s = cycle_exterior_stats(&k5, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!((s.e_out, s.e_cross, s.e_inside), (0, 0, 10));

        assert!(matches!(
            cycle_exterior_stats(&c4_pendant, &[0, 1, 2, 4]),
            Err(TuranError::NotACycle(_))
        ));
    }

    #[test]
    fn brute_agrees_on_small_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(3..9);
            let mut edges = Vec::new();
            for j in 1..n {
                for i in 0..j {
                    if rng.gen_bool(0.45) {
                        edges.push((i, j));
                    }
                }
            }
            let g = SmallGraph::from_edges(n, &edges).unwrap();
            let c = brute_circumference(&g);
            assert_eq!(circumference(&g).unwrap(), c, "{g:?}");
            for k in 3..=n {
                assert_eq!(has_cycle_geq(&g, k).unwrap(), c >= k);
            }
            for v in 0..n {
                let mut b = NodeBudget::default();
                let through = (3..=n).rev().find(|&k| has_cycle_through_geq(&g, v, k, &mut b).unwrap());
                if let Some(k) = through {
                    assert!(k <= c);
                }
            }
        }
    }
}
