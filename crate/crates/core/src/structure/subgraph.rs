//! Ordinary (not induced) subgraph containment by backtracking.

use crate::graph::{bits, SmallGraph};
use crate::structure::cycles::reduce_false_twins;

/// Pattern preprocessed for repeated embedding attempts.
#[derive(Clone, Debug)]
pub struct Pattern {
    graph: SmallGraph,
    /// Non-isolated vertices in search order.
    order: Vec<usize>,
    /// For each position, the earlier positions adjacent to it.
    back: Vec<Vec<usize>>,
    isolated: usize,
    /// One search variant per pattern vertex, used for anchored embedding.
    anchored: Vec<Anchor>,
}

#[derive(Clone, Debug)]
enum Anchor {
    /// Pattern vertex maps onto the anchor and is searched first.
    First(Pattern),
    /// Isolated pattern vertex maps onto the anchor; the rest must avoid it.
    Isolated(Pattern),
}

impl Pattern {
    pub fn new(graph: &SmallGraph) -> Self {
        let mut pat = Self::with_first(graph, None);
        pat.anchored = (0..graph.order())
            .map(|p| {
                if graph.degree(p) == 0 {
                    Anchor::Isolated(Self::with_first(&graph.remove_vertex(p), None))
                } else {
                    Anchor::First(Self::with_first(graph, Some(p)))
                }
            })
            .collect();
        pat
    }

    fn with_first(graph: &SmallGraph, first: Option<usize>) -> Self {
        let n = graph.order();
        let mut left: u64 = (0..n).filter(|&v| graph.degree(v) > 0).fold(0, |m, v| m | 1 << v);
        let isolated = n - left.count_ones() as usize;
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        if let Some(f) = first {
            if left >> f & 1 == 1 {
                order.push(f);
                placed |= 1 << f;
                left &= !(1 << f);
            }
        }
        while left != 0 {
            // most already-placed neighbours, then highest degree, then lowest label
            let v = bits(left)
                .max_by_key(|&v| {
                    (
                        (graph.neighbors(v) & placed).count_ones(),
                        graph.degree(v),
                        std::cmp::Reverse(v),
                    )
                })
                .unwrap();
            order.push(v);
            placed |= 1 << v;
            left &= !(1 << v);
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| (0..i).filter(|&j| graph.has_edge(v, order[j])).collect())
            .collect();
        Pattern {
            graph: graph.clone(),
            order,
            back,
            isolated,
            anchored: Vec::new(),
        }
    }

    pub fn graph(&self) -> &SmallGraph {
        &self.graph
    }

    /// Does `host` contain this pattern as a subgraph?
    pub fn found_in(&self, host: &SmallGraph) -> bool {
        if host.order() < self.graph.order() || host.edge_count() < self.graph.edge_count() {
            return false;
        }
        let keep = self.graph.order();
        let allowed = if host.order() > 2 * keep + 4 {
            reduce_false_twins(host, host.vertex_mask(), |_| keep)
        } else {
            host.vertex_mask()
        };
        let mut images = [0usize; 64];
        self.embed(host, allowed, 0, 0, &mut images)
    }

    /// Does `host` contain a copy of the pattern that uses vertex `v`?
    pub fn found_through(&self, host: &SmallGraph, v: usize) -> bool {
        if host.order() < self.graph.order() {
            return false;
        }
        let dv = host.degree(v);
        let all = host.vertex_mask();
        let mut images = [0usize; 64];
        for (p, anchor) in self.anchored.iter().enumerate() {
            if self.graph.degree(p) > dv {
                continue;
            }
            let hit = match anchor {
                Anchor::Isolated(rest) => rest.embed(host, all & !(1 << v), 0, 0, &mut images),
                Anchor::First(pat) => {
                    images[0] = v;
                    pat.embed(host, all, 1, 1 << v, &mut images)
                }
            };
            if hit {
                return true;
            }
        }
        false
    }

    fn embed(&self, host: &SmallGraph, allowed: u64, pos: usize, used: u64, images: &mut [usize]) -> bool {
        if pos == self.order.len() {
            return (allowed & !used).count_ones() as usize >= self.isolated;
        }
        let p = self.order[pos];
        let need = self.graph.degree(p);
        let mut cand = allowed & !used;
        for &j in &self.back[pos] {
            cand &= host.neighbors(images[j]);
        }
        for h in bits(cand) {
            if host.degree(h) < need {
                continue;
            }
            images[pos] = h;
            if self.embed(host, allowed, pos + 1, used | 1 << h, images) {
                return true;
            }
        }
        false
    }
}

pub fn contains_subgraph(host: &SmallGraph, pattern: &SmallGraph) -> bool {
    Pattern::new(pattern).found_in(host)
}
