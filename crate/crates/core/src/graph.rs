//! Small undirected simple graphs stored as per-vertex neighbour bit sets.
//!
//! Every graph in this crate has at most [`MAX_ORDER`] vertices so that one
//! `u64` holds a neighbourhood. Graphs are values: the composition operators
//! below never touch their inputs and always return a fresh graph.

use std::fmt;

use crate::error::{Result, TuranError};

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 64;

/// Bit mask with the lowest `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate the set bits of a mask in increasing order.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    n: usize,
    adj: [u64; MAX_ORDER],
}

impl SmallGraph {
    /// The edgeless graph `I_n`.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(SmallGraph {
            n,
            adj: [0; MAX_ORDER],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(TuranError::InvalidArgument(format!("loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Build from neighbour masks, rejecting asymmetric input, loops and
    /// bits beyond `n`.
    pub fn from_adjacency(adj: &[u64]) -> Result<Self> {
        let n = adj.len();
        let mut g = Self::empty(n)?;
        let valid = low_mask(n);
        for (u, &row) in adj.iter().enumerate() {
            if row & !valid != 0 {
                return Err(TuranError::InvalidArgument(format!(
                    "vertex {u} has neighbours beyond {n}"
                )));
            }
            if row >> u & 1 == 1 {
                return Err(TuranError::InvalidArgument(format!("loop at vertex {u}")));
            }
            for v in bits(row) {
                if adj[v] >> u & 1 == 0 {
                    return Err(TuranError::InvalidArgument(format!(
                        "asymmetric adjacency between {u} and {v}"
                    )));
                }
            }
            g.adj[u] = row;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            g.adj[u] = low_mask(n) & !(1 << u);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(TuranError::InvalidArgument(format!("C_{n} needs n >= 3")));
        }
        let mut g = Self::empty(n)?;
        for u in 0..n {
            g.set_edge(u, (u + 1) % n);
        }
        Ok(g)
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 1..n {
            g.set_edge(u - 1, u);
        }
        Ok(g)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        Self::empty(a)?.join(&Self::empty(b)?)
    }

    /// Wheel on `n` vertices: a hub joined to `C_{n-1}`.
    pub fn wheel(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(TuranError::InvalidArgument(format!("W_{n} needs n >= 4")));
        }
        Self::complete(1)?.join(&Self::cycle(n - 1)?)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, &edges).expect("petersen fits")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 0..self.n {
            for u in bits(self.adj[v] & low_mask(v)) {
                out.push((u, v));
            }
        }
        out.sort_unstable();
        out
    }

    /// Number of edges with both endpoints in `mask`.
    pub fn edges_within(&self, mask: u64) -> usize {
        bits(mask)
            .map(|v| (self.adj[v] & mask).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Number of edges with one endpoint in `a` and the other in `b`
    /// (`a` and `b` disjoint).
    pub fn edges_between(&self, a: u64, b: u64) -> usize {
        bits(a)
            .map(|v| (self.adj[v] & b).count_ones() as usize)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Vertices reachable from `start` inside `allowed` (which must contain `start`).
    pub fn reach(&self, start: usize, allowed: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            let c = self.reach(v, left);
            out.push(c);
            left &= !c;
        }
        out
    }

    /// `g ∨ h`: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &SmallGraph) -> Result<SmallGraph> {
        let mut g = self.disjoint_union(other)?;
        let left = low_mask(self.n);
        let right = low_mask(other.n) << self.n;
        for u in 0..self.n {
            g.adj[u] |= right;
        }
        for v in self.n..self.n + other.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &SmallGraph) -> Result<SmallGraph> {
        let total = self.n + other.n;
        check_capacity(total)?;
        let mut g = self.clone();
        g.n = total;
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(g)
    }

    /// One-point union identifying vertex `u` of `self` with vertex `v` of `other`.
    ///
    /// The identified vertex keeps label `u`; the remaining vertices of
    /// `other` follow those of `self` in their original order.
    pub fn amalgam(&self, u: usize, other: &SmallGraph, v: usize) -> Result<SmallGraph> {
        self.check_vertex(u)?;
        other.check_vertex(v)?;
        let total = self.n + other.n - 1;
        check_capacity(total)?;
        let map = |w: usize| -> usize {
            match w.cmp(&v) {
                std::cmp::Ordering::Equal => u,
                std::cmp::Ordering::Less => self.n + w,
                std::cmp::Ordering::Greater => self.n + w - 1,
            }
        };
        let mut g = self.clone();
        g.n = total;
        for (a, b) in other.edges() {
            g.set_edge(map(a), map(b));
        }
        Ok(g)
    }

    /// `G[S]` relabelled to `0..|S|` in increasing vertex order.
    pub fn induced_subgraph(&self, mask: u64) -> SmallGraph {
        let mask = mask & self.vertex_mask();
        let verts: Vec<usize> = bits(mask).collect();
        let mut g = SmallGraph {
            n: verts.len(),
            adj: [0; MAX_ORDER],
        };
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                if self.adj[a] >> b & 1 == 1 {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    pub fn remove_vertex(&self, v: usize) -> SmallGraph {
        self.induced_subgraph(self.vertex_mask() & !(1u64 << v))
    }

    /// Relabel so that vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> SmallGraph {
        assert_eq!(perm.len(), self.n, "permutation length must match order");
        let mut g = SmallGraph {
            n: self.n,
            adj: [0; MAX_ORDER],
        };
        for v in 0..self.n {
            let mut row = 0u64;
            for u in bits(self.adj[v]) {
                row |= 1 << perm[u];
            }
            g.adj[perm[v]] = row;
        }
        g
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<SmallGraph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(TuranError::InvalidArgument(format!("loop at vertex {u}")));
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<SmallGraph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        Ok(g)
    }

    /// Graph with one extra vertex adjacent to `nbrs`.
    pub(crate) fn extended(&self, nbrs: u64) -> SmallGraph {
        debug_assert!(self.n < MAX_ORDER);
        let mut g = self.clone();
        let v = self.n;
        g.n += 1;
        g.adj[v] = nbrs;
        for u in bits(nbrs) {
            g.adj[u] |= 1 << v;
        }
        g
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(TuranError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    /// Parse a graph given as `g6:<graph6>` or as a builtin name.
    ///
    /// Builtins: `K<n>`, `I<n>`, `C<n>`, `P<n>` (path on n vertices),
    /// `W<n>` (wheel on n vertices), `S<n>` (star `K_{1,n}`),
    /// `K<a>,<b>`, or `K<a><b>` with single digits `2 <= a <= b`
    /// (complete bipartite; so `K33` is `K_{3,3}` while `K12` is `K_12`),
    /// `T<n>,<r>` (Turán graph), `petersen`, `bowtie`.
    pub fn parse(spec: &str) -> Result<SmallGraph> {
        let spec = spec.trim();
        if let Some(g6) = spec.strip_prefix("g6:") {
            return crate::graph6::decode(g6);
        }
        let lower = spec.to_ascii_lowercase();
        match lower.as_str() {
            "petersen" => return Ok(Self::petersen()),
            "bowtie" => return crate::constructions::friendship_graph(2),
            _ => {}
        }
        let unknown = || TuranError::UnknownGraph(spec.to_string());
        let (head, rest) = spec.split_at(1);
        let nums: Vec<usize> = rest
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| unknown())?;
        match (head, nums.as_slice()) {
            ("K", [a, b]) => Self::complete_bipartite(*a, *b),
            ("K", [_]) if is_bipartite_shorthand(rest) => {
                let d: Vec<usize> = rest.bytes().map(|c| (c - b'0') as usize).collect();
                Self::complete_bipartite(d[0], d[1])
            }
            ("K", [n]) => Self::complete(*n),
            ("I", [n]) => Self::empty(*n),
            ("C", [n]) => Self::cycle(*n),
            ("P", [n]) => Self::path(*n),
            ("W", [n]) => Self::wheel(*n),
            ("S", [n]) => Self::complete_bipartite(1, *n),
            ("T", [n, r]) => crate::constructions::turan_graph(*n, *r),
            _ => Err(unknown()),
        }
    }
}

fn is_bipartite_shorthand(rest: &str) -> bool {
    let b = rest.as_bytes();
    b.len() == 2 && b[0] >= b'2' && b[0] <= b[1]
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(TuranError::CapacityExceeded {
            needed: n,
            capacity: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmallGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match crate::graph6::encode(self) {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "{self:?}"),
        }
    }
}

impl serde::Serialize for SmallGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let g6 = crate::graph6::encode(self).map_err(serde::ser::Error::custom)?;
        s.serialize_str(&g6)
    }
}

impl<'de> serde::Deserialize<'de> for SmallGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::graph6::decode(&s).map_err(serde::de::Error::custom)
    }
}
