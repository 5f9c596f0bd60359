//! Canonical labelling by individualisation and refinement.
//!
//! The partition is refined to an equitable one with a splitter queue; if it
//! is not discrete the first smallest non-singleton cell is branched on. Every
//! leaf yields a relabelling, and the lexicographically smallest upper
//! triangle (column order, as in graph6) wins. Automorphisms found at equal
//! leaves end the subtree they were found in and prune siblings in the same
//! orbit of the prefix stabiliser.

use crate::graph::{bits, SmallGraph};

const MAX_STORED_AUTOMORPHISMS: usize = 128;

/// A labelling-invariant identifier for an isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    /// Order byte followed by the upper triangle of the canonically
    /// relabelled graph, eight bits per byte, first bit most significant.
    pub bytes: Vec<u8>,
    /// `perm[v]` is the canonical label of vertex `v`.
    pub perm: Vec<usize>,
}

impl CanonicalForm {
    /// The source graph relabelled canonically.
    pub fn apply(&self, g: &SmallGraph) -> SmallGraph {
        g.permute(&self.perm)
    }
}

pub fn canonical_form(g: &SmallGraph) -> CanonicalForm {
    let n = g.order();
    if n == 0 {
        return CanonicalForm {
            bytes: vec![0],
            perm: Vec::new(),
        };
    }
    let mut search = Search {
        g,
        n,
        first_code: Vec::new(),
        first_lab: Vec::new(),
        first_path: Vec::new(),
        best_code: Vec::new(),
        best_lab: Vec::new(),
        best_path: Vec::new(),
        autos: Vec::new(),
    };
    let mut cells = vec![g.vertex_mask()];
    let queue = cells.clone();
    refine(g, &mut cells, queue);
    let mut prefix = Vec::with_capacity(n);
    search.descend(cells, &mut prefix);

    let mut perm = vec![0; n];
    for (i, &v) in search.best_lab.iter().enumerate() {
        perm[v] = i;
    }
    let bytes = pack_code(n, &search.best_code);
    CanonicalForm { bytes, perm }
}

pub fn canonical_graph(g: &SmallGraph) -> SmallGraph {
    canonical_form(g).apply(g)
}

pub fn is_isomorphic(g: &SmallGraph, h: &SmallGraph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && canonical_form(g).bytes == canonical_form(h).bytes
}

struct Search<'a> {
    g: &'a SmallGraph,
    n: usize,
    first_code: Vec<u64>,
    first_lab: Vec<usize>,
    first_path: Vec<usize>,
    best_code: Vec<u64>,
    best_lab: Vec<usize>,
    best_path: Vec<usize>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns the depth to jump back to when an automorphism shows the
    /// rest of the current subtree mirrors one already explored.
    fn descend(&mut self, cells: Vec<u64>, prefix: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(&cells, prefix);
        }
        let (ti, target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, &c)| (i, c))
            .expect("non-discrete partition has a non-singleton cell");
        let mut explored = 0u64;
        for v in bits(target) {
            if explored != 0 && self.orbit_of(v, prefix) & explored != 0 {
                continue;
            }
            explored |= 1 << v;
            let mut next = cells.clone();
            next[ti] = target & !(1 << v);
            next.insert(ti, 1 << v);
            refine(self.g, &mut next, vec![1 << v]);
            prefix.push(v);
            let jump = self.descend(next, prefix);
            prefix.pop();
            if let Some(d) = jump {
                if d < prefix.len() {
                    return Some(d);
                }
            }
        }
        None
    }

    /// Orbit of `v` under the group generated by stored automorphisms that
    /// fix every vertex of `prefix`.
    fn orbit_of(&self, v: usize, prefix: &[usize]) -> u64 {
        let gens: Vec<&Vec<usize>> = self
            .autos
            .iter()
            .filter(|a| prefix.iter().all(|&p| a[p] == p))
            .collect();
        let mut orbit = 1u64 << v;
        loop {
            let mut grown = orbit;
            for a in &gens {
                for u in bits(orbit) {
                    grown |= 1 << a[u];
                }
            }
            if grown == orbit {
                return orbit;
            }
            orbit = grown;
        }
    }

    fn leaf(&mut self, cells: &[u64], prefix: &[usize]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; 64];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let code: Vec<u64> = (0..self.n)
            .map(|j| {
                let mut row = 0u64;
                for u in bits(self.g.neighbors(lab[j])) {
                    if pos[u] < j {
                        row |= 1 << pos[u];
                    }
                }
                row.reverse_bits()
            })
            .collect();
        if self.first_code.is_empty() {
            self.first_code = code.clone();
            self.first_lab = lab.clone();
            self.first_path = prefix.to_vec();
            self.best_code = code;
            self.best_lab = lab;
            self.best_path = prefix.to_vec();
            return None;
        }
        if code == self.first_code {
            self.record(&self.first_lab.clone(), &lab);
            return Some(diverge(&self.first_path, prefix));
        }
        match code.cmp(&self.best_code) {
            std::cmp::Ordering::Less => {
                self.best_code = code;
                self.best_lab = lab;
                self.best_path = prefix.to_vec();
                None
            }
            std::cmp::Ordering::Greater => None,
            std::cmp::Ordering::Equal => {
                self.record(&self.best_lab.clone(), &lab);
                Some(diverge(&self.best_path, prefix))
            }
        }
    }

    /// Stores `from[i] -> to[i]`, an automorphism between equal leaves.
    fn record(&mut self, from: &[usize], to: &[usize]) {
        if self.autos.len() < MAX_STORED_AUTOMORPHISMS {
            let mut gamma = vec![0; self.n];
            for (&a, &b) in from.iter().zip(to) {
                gamma[a] = b;
            }
            self.autos.push(gamma);
        }
    }
}

fn diverge(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Refine `cells` until equitable, starting from the splitters in `queue`.
/// Fragments replace the split cell in place, ordered by neighbour count.
fn refine(g: &SmallGraph, cells: &mut Vec<u64>, mut queue: Vec<u64>) {
    let mut head = 0;
    while head < queue.len() && cells.len() < g.order() {
        let w = queue[head];
        head += 1;
        let mut i = 0;
        while i < cells.len() {
            let x = cells[i];
            if x & (x - 1) == 0 {
                i += 1;
                continue;
            }
            let mut counted: Vec<(u32, usize)> = bits(x)
                .map(|v| ((g.neighbors(v) & w).count_ones(), v))
                .collect();
            let first = counted[0].0;
            if counted.iter().all(|&(c, _)| c == first) {
                i += 1;
                continue;
            }
            counted.sort_unstable();
            let mut fragments: Vec<u64> = Vec::new();
            let mut last = u32::MAX;
            for (c, v) in counted {
                if c != last {
                    fragments.push(0);
                    last = c;
                }
                *fragments.last_mut().unwrap() |= 1 << v;
            }
            let k = fragments.len();
            queue.extend_from_slice(&fragments);
            cells.splice(i..=i, fragments);
            i += k;
        }
    }
}

fn pack_code(n: usize, code: &[u64]) -> Vec<u8> {
    let mut out = vec![n as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for (j, &col) in code.iter().enumerate().skip(1) {
        for i in 0..j {
            acc = (acc << 1) | (col >> (63 - i) & 1) as u8;
            filled += 1;
            if filled == 8 {
                out.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(acc << (8 - filled));
    }
    out
}
