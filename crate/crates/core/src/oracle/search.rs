//! Isomorph-free generation by canonical vertex augmentation.
//!
//! A graph on `j + 1` vertices is produced from its parent on `j` vertices
//! by adding a vertex of minimum degree. The child is kept only when the
//! parent is, up to isomorphism, the child minus its canonical deletion
//! vertex: the minimum-degree vertex with the largest neighbour-degree sum,
//! ties broken by the largest canonical label. Isomorphic children of one
//! parent are merged by canonical form, so every class appears once.
//!
//! Deleting a minimum-degree vertex from a graph with `e` edges on `m`
//! vertices leaves at least `e − ⌊2e/m⌋` edges, which turns a target edge
//! count at the top level into a lower bound at every level. Minimum
//! degree grows by at most one per added vertex, which bounds from above
//! what any subtree can still reach.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicI64, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::canon::canonical_form;
use crate::error::{Result, TuranError};
use crate::families::GraphFamily;
use crate::graph::{bits, SmallGraph};
use crate::structure::cycles::has_cycle_through_geq;
use crate::structure::{is_two_connected, NodeBudget, Pattern};

use super::Connectivity;

/// Levels below this depth fan their children out to the thread pool.
const PARALLEL_DEPTH: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    /// Only the maximum edge count.
    Value,
    /// Maximum edge count and every graph attaining it.
    Extremal { cap: usize },
    /// Every graph with at least `min_edges` edges.
    All { min_edges: usize },
}

pub(crate) struct Harvest {
    pub best: Option<usize>,
    /// Number of graphs attaining `best` (every graph in `All` mode).
    pub count: u64,
    /// Canonical graphs keyed by canonical bytes, smallest keys kept.
    pub graphs: BTreeMap<Vec<u8>, SmallGraph>,
}

impl Harvest {
    fn empty() -> Self {
        Harvest {
            best: None,
            count: 0,
            graphs: BTreeMap::new(),
        }
    }
}

pub(crate) struct Engine {
    n: usize,
    patterns: Vec<Pattern>,
    cycle_k: Option<usize>,
    connectivity: Connectivity,
    goal: Goal,
    /// No graph in the search space can exceed this many edges.
    cap: usize,
    best: AtomicI64,
    nodes: AtomicU64,
    node_limit: u64,
    stop: AtomicBool,
}

impl Engine {
    pub fn new(n: usize, fam: &GraphFamily, connectivity: Connectivity, goal: Goal, node_limit: u64) -> Self {
        let mut cap = n * n.saturating_sub(1) / 2;
        if let Some(k) = fam.cycle_threshold() {
            cap = cap.min((k - 1) * n.saturating_sub(1) / 2);
        }
        Engine {
            n,
            patterns: fam.members().iter().map(Pattern::new).collect(),
            cycle_k: fam.cycle_threshold(),
            connectivity,
            goal,
            cap,
            best: AtomicI64::new(-1),
            nodes: AtomicU64::new(0),
            node_limit,
            stop: AtomicBool::new(false),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn run(&self) -> Result<Harvest> {
        if self.n == 0 {
            return self.leaf(&SmallGraph::empty(0)?, vec![0]);
        }
        if self.patterns.iter().any(|p| p.graph().order() <= 1) {
            // K1 or the null graph is in every host
            return Ok(Harvest::empty());
        }
        let root = SmallGraph::empty(1)?;
        let bytes = canonical_form(&root).bytes;
        self.expand(&root, &bytes)
    }

    /// Smallest final edge count still worth reaching.
    fn threshold(&self) -> i64 {
        let best = self.best.load(Ordering::Relaxed);
        match self.goal {
            Goal::Value => best + 1,
            Goal::Extremal { .. } => best.max(0),
            Goal::All { min_edges } => min_edges as i64,
        }
    }

    /// Fewest edges a graph on `j` vertices needs to have a descendant on
    /// `n` vertices with at least `t` edges.
    fn need(&self, j: usize, t: i64) -> i64 {
        let mut l = t.max(0);
        for m in (j + 1..=self.n).rev() {
            l -= 2 * l / m as i64;
        }
        l
    }

    /// Most edges any descendant of `g` on `n` vertices can have.
    fn reach(&self, g: &SmallGraph) -> i64 {
        let j = g.order();
        let delta = g.min_degree().unwrap_or(0);
        let mut e = g.edge_count();
        for i in j + 1..=self.n {
            e += (i - 1).min(delta + i - j);
        }
        e.min(self.cap) as i64
    }

    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.node_limit {
            return Err(TuranError::BudgetExceeded {
                budget: self.node_limit,
            });
        }
        Ok(())
    }

    fn expand(&self, g: &SmallGraph, bytes: &[u8]) -> Result<Harvest> {
        if self.stop.load(Ordering::Relaxed) {
            return Ok(Harvest::empty());
        }
        let j = g.order();
        let t = self.threshold();
        if (g.edge_count() as i64) < self.need(j, t) || self.reach(g) < t {
            return Ok(Harvest::empty());
        }
        if j == self.n {
            return self.leaf(g, bytes.to_vec());
        }
        let kids = self.children(g, bytes)?;
        if j < PARALLEL_DEPTH {
            kids.into_par_iter()
                .map(|(c, b)| self.expand(&c, &b))
                .try_reduce(Harvest::empty, |a, b| Ok(self.merge(a, b)))
        } else {
            let mut acc = Harvest::empty();
            for (c, b) in kids {
                let h = self.expand(&c, &b)?;
                acc = self.merge(acc, h);
            }
            Ok(acc)
        }
    }

    fn leaf(&self, g: &SmallGraph, bytes: Vec<u8>) -> Result<Harvest> {
        let ok = match self.connectivity {
            Connectivity::Any => true,
            Connectivity::Connected => g.is_connected(),
            Connectivity::TwoConnected => is_two_connected(g),
        };
        if !ok {
            return Ok(Harvest::empty());
        }
        let e = g.edge_count();
        self.best.fetch_max(e as i64, Ordering::Relaxed);
        if self.goal == Goal::Value && e >= self.cap {
            self.stop.store(true, Ordering::Relaxed);
        }
        let mut graphs = BTreeMap::new();
        if self.goal != Goal::Value {
            graphs.insert(bytes, g.clone());
        }
        Ok(Harvest {
            best: Some(e),
            count: 1,
            graphs,
        })
    }

    fn merge(&self, a: Harvest, b: Harvest) -> Harvest {
        let (mut a, b) = match self.goal {
            Goal::All { .. } => (a, b),
            _ => match a.best.cmp(&b.best) {
                std::cmp::Ordering::Greater => return a,
                std::cmp::Ordering::Less => return b,
                std::cmp::Ordering::Equal => (a, b),
            },
        };
        a.best = a.best.max(b.best);
        a.count += b.count;
        a.graphs.extend(b.graphs);
        if let Goal::Extremal { cap } = self.goal {
            while a.graphs.len() > cap {
                a.graphs.pop_last();
            }
        }
        a
    }

    /// Accepted children of the canonical graph `g`, most edges first.
    fn children(&self, g: &SmallGraph, bytes: &[u8]) -> Result<Vec<(SmallGraph, Vec<u8>)>> {
        let j = g.order();
        let e = g.edge_count() as i64;
        let deg: Vec<usize> = (0..j).map(|v| g.degree(v)).collect();
        let delta = deg.iter().copied().min().unwrap_or(0);
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let top = j.min(delta + 1);
        let mut s = top as i64;
        while s >= 0 && s >= self.need(j + 1, self.threshold()) - e {
            let size = s as usize;
            // the new vertex must keep minimum degree, so every old vertex
            // of degree size − 1 has to be its neighbour
            let forced = (0..j).filter(|&v| deg[v] + 1 == size).fold(0u64, |m, v| m | 1 << v);
            let free = g.vertex_mask() & !forced;
            let extra = size as i64 - forced.count_ones() as i64;
            if extra >= 0 {
                let mut failure = None;
                for_each_subset(free, extra as usize, &mut |sub| {
                    if failure.is_some() {
                        return;
                    }
                    match self.try_child(g, bytes, forced | sub, &deg, &mut seen) {
                        Ok(Some(kid)) => out.push(kid),
                        Ok(None) => {}
                        Err(err) => failure = Some(err),
                    }
                });
                if let Some(err) = failure {
                    return Err(err);
                }
            }
            s -= 1;
        }
        Ok(out)
    }

    fn try_child(
        &self,
        g: &SmallGraph,
        parent_bytes: &[u8],
        nbrs: u64,
        deg: &[usize],
        seen: &mut HashSet<Vec<u8>>,
    ) -> Result<Option<(SmallGraph, Vec<u8>)>> {
        self.tick()?;
        let v = g.order();
        let child = g.extended(nbrs);
        let d = nbrs.count_ones() as usize;
        let child_deg = |u: usize| if u == v { d } else { deg[u] + (nbrs >> u & 1) as usize };
        let minimal = (0..=v).filter(|&u| child_deg(u) == d).fold(0u64, |m, u| m | 1 << u);
        let weight = |u: usize| bits(child.neighbors(u)).map(child_deg).sum::<usize>();
        let top = bits(minimal).map(weight).max().unwrap_or(0);
        let candidates = bits(minimal).filter(|&u| weight(u) == top).fold(0u64, |m, u| m | 1 << u);
        if candidates >> v & 1 == 0 {
            return Ok(None);
        }
        if !self.free_through(&child, v)? {
            return Ok(None);
        }
        let cf = canonical_form(&child);
        if !seen.insert(cf.bytes.clone()) {
            return Ok(None);
        }
        if candidates.count_ones() > 1 {
            let w = bits(candidates).max_by_key(|&u| cf.perm[u]).unwrap_or(v);
            if w != v && canonical_form(&child.remove_vertex(w)).bytes != parent_bytes {
                return Ok(None);
            }
        }
        let canon = cf.apply(&child);
        Ok(Some((canon, cf.bytes)))
    }

    /// The parent is free, so only structures through the new vertex matter.
    fn free_through(&self, child: &SmallGraph, v: usize) -> Result<bool> {
        if self.patterns.iter().any(|p| p.found_through(child, v)) {
            return Ok(false);
        }
        if let Some(k) = self.cycle_k {
            if has_cycle_through_geq(child, v, k, &mut NodeBudget::default())? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Calls `f` on every subset of `mask` with exactly `k` elements, in
/// decreasing order of the subset's highest differing element.
fn for_each_subset(mask: u64, k: usize, f: &mut impl FnMut(u64)) {
    fn rec(rest: u64, k: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if k == 0 {
            f(acc);
            return;
        }
        if (rest.count_ones() as usize) < k {
            return;
        }
        let top = 63 - rest.leading_zeros() as usize;
        let below = rest & !(1 << top);
        rec(below, k - 1, acc | 1 << top, f);
        rec(below, k, acc, f);
    }
    rec(mask, k, 0, f);
}
