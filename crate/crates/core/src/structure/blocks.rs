use crate::graph::{bits, SmallGraph};

/// Blocks (maximal 2-connected pieces, bridges, isolated vertices) and cut vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex masks, sorted by lowest vertex then by mask.
    pub blocks: Vec<u64>,
    pub cut_vertices: u64,
}

impl BlockDecomposition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn cut_vertex_count(&self) -> usize {
        self.cut_vertices.count_ones() as usize
    }
}

const UNSEEN: usize = usize::MAX;

struct Tarjan<'a> {
    g: &'a SmallGraph,
    disc: [usize; 64],
    low: [usize; 64],
    timer: usize,
    edge_stack: Vec<(usize, usize)>,
    blocks: Vec<u64>,
    cut: u64,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize, parent: usize) {
        self.disc[v] = self.timer;
        self.low[v] = self.timer;
        self.timer += 1;
        let mut children = 0;
        for w in bits(self.g.neighbors(v)) {
            if self.disc[w] == UNSEEN {
                children += 1;
                self.edge_stack.push((v, w));
                self.visit(w, v);
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    if parent != UNSEEN || children > 1 {
                        self.cut |= 1 << v;
                    }
                    let mut block = 0u64;
                    while let Some((a, b)) = self.edge_stack.pop() {
                        block |= 1 << a | 1 << b;
                        if (a, b) == (v, w) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if w != parent && self.disc[w] < self.disc[v] {
                self.edge_stack.push((v, w));
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
    }
}

pub fn block_decomposition(g: &SmallGraph) -> BlockDecomposition {
    let mut t = Tarjan {
        g,
        disc: [UNSEEN; 64],
        low: [0; 64],
        timer: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
        cut: 0,
    };
    for v in 0..g.order() {
        if t.disc[v] != UNSEEN {
            continue;
        }
        if g.degree(v) == 0 {
            t.disc[v] = t.timer;
            t.timer += 1;
            t.blocks.push(1 << v);
        } else {
            t.visit(v, UNSEEN);
        }
    }
    let mut blocks = t.blocks;
    blocks.sort_unstable_by_key(|&b| (b.trailing_zeros(), b));
    BlockDecomposition {
        blocks,
        cut_vertices: t.cut,
    }
}

/// Connected, at least three vertices, no cut vertex.
pub fn is_two_connected(g: &SmallGraph) -> bool {
    g.order() >= 3 && g.is_connected() && block_decomposition(g).cut_vertices == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::friendship_graph;

    #[test]
    fn examples() {
        let bowtie = friendship_graph(2).unwrap();
        let d = block_decomposition(&bowtie);
        assert_eq!((d.block_count(), d.cut_vertex_count()), (2, 1));
        let d = block_decomposition(&SmallGraph::path(4).unwrap());
        assert_eq!((d.block_count(), d.cut_vertex_count()), (3, 2));
        let d = block_decomposition(&SmallGraph::complete(4).unwrap());
        assert_eq!((d.block_count(), d.cut_vertex_count()), (1, 0));
    }

    #[test]
    fn isolated_vertices_are_blocks() {
        let g = SmallGraph::from_edges(4, &[(1, 2)]).unwrap();
        let d = block_decomposition(&g);
        assert_eq!(d.blocks, vec![0b0001, 0b0110, 0b1000]);
        assert_eq!(d.cut_vertices, 0);
    }

    #[test]
    fn two_connectivity() {
        assert!(is_two_connected(&SmallGraph::cycle(4).unwrap()));
        assert!(!is_two_connected(&SmallGraph::path(3).unwrap()));
        assert!(is_two_connected(&SmallGraph::complete(3).unwrap()));
        assert!(!is_two_connected(&SmallGraph::complete(2).unwrap()));
        assert!(!is_two_connected(&friendship_graph(2).unwrap()));
        let two_triangles = SmallGraph::complete(3)
            .unwrap()
            .disjoint_union(&SmallGraph::complete(3).unwrap())
            .unwrap();
        assert!(!is_two_connected(&two_triangles));
    }
}
