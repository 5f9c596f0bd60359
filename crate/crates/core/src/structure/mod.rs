//! Structural predicates: blocks, longest cycles, subgraph containment and
//! family-freeness.

pub mod blocks;
pub mod coloring;
pub mod cycles;
pub mod subgraph;

pub use blocks::{block_decomposition, is_two_connected, BlockDecomposition};
pub use coloring::{p_value, PValue};
pub use cycles::{
    circumference, circumference_with_budget, cycle_exterior_stats, has_cycle_geq, has_cycle_geq_with_budget,
    longest_cycle_representatives, longest_cycle_with_budget, longest_cycles, longest_cycles_with_budget,
    validate_cycle, CycleExteriorStats, NodeBudget, DEFAULT_NODE_BUDGET,
};
pub use subgraph::{contains_subgraph, Pattern};

use crate::error::Result;
use crate::families::GraphFamily;
use crate::graph::SmallGraph;

/// No member of `fam` is a subgraph of `g`, and if `fam` carries a cycle
/// threshold `k`, the circumference of `g` is at most `k − 1`.
pub fn is_family_free(g: &SmallGraph, fam: &GraphFamily) -> Result<bool> {
    is_family_free_with_budget(g, fam, &mut NodeBudget::default())
}

pub fn is_family_free_with_budget(g: &SmallGraph, fam: &GraphFamily, budget: &mut NodeBudget) -> Result<bool> {
    if fam.members().iter().any(|m| contains_subgraph(g, m)) {
        return Ok(false);
    }
    match fam.cycle_threshold() {
        Some(k) => Ok(!has_cycle_geq_with_budget(g, k, budget)?),
        None => Ok(true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{friendship_graph, turan_graph};

    #[test]
    fn family_free_examples() {
        let k4 = SmallGraph::complete(4).unwrap();
        let fam = GraphFamily::cycles_and(4, &k4).unwrap();
        assert!(is_family_free(&friendship_graph(2).unwrap(), &fam).unwrap());
        let only_k4 = GraphFamily::new([k4.clone()], None).unwrap();
        assert!(!is_family_free(&k4, &only_k4).unwrap());
        let c4 = GraphFamily::long_cycles(4).unwrap();
        assert!(!is_family_free(&turan_graph(5, 2).unwrap(), &c4).unwrap());
    }

    #[test]
    fn larger_patterns_are_vacuously_absent() {
        let fam = GraphFamily::new([SmallGraph::complete(5).unwrap()], None).unwrap();
        assert!(is_family_free(&SmallGraph::complete(4).unwrap(), &fam).unwrap());
    }

    #[test]
    fn edge_removal_never_creates_violations() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let fam = GraphFamily::cycles_and(5, &SmallGraph::complete(4).unwrap()).unwrap();
        for _ in 0..200 {
            let n = rng.gen_range(4..9);
            let mut g = SmallGraph::complete(n).unwrap();
            for (u, v) in g.edges() {
                if rng.gen_bool(0.4) {
                    g = g.without_edge(u, v).unwrap();
                }
            }
            if is_family_free(&g, &fam).unwrap() {
                for (u, v) in g.edges() {
                    assert!(is_family_free(&g.without_edge(u, v).unwrap(), &fam).unwrap());
                }
            }
        }
    }

    #[test]
    fn block_edges_partition() {
        for g in [
            friendship_graph(3).unwrap(),
            SmallGraph::petersen(),
            SmallGraph::path(6).unwrap(),
            SmallGraph::complete(3).unwrap().amalgam(0, &SmallGraph::cycle(5).unwrap(), 2).unwrap(),
        ] {
            let d = block_decomposition(&g);
            let sum: usize = d.blocks.iter().map(|&b| g.edges_within(b)).sum();
            assert_eq!(sum, g.edge_count());
            let comps = g.components().len();
            let s: usize = d.blocks.iter().map(|b| b.count_ones() as usize - 1).sum();
            assert_eq!(s, g.order() - comps);
        }
    }
}
