//! Exact Turán numbers and extremal graph sets by isomorph-free search.

mod cache;
mod search;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use cache::{ExCache, DEFAULT_CACHE_PATH};

use crate::error::{Result, TuranError};
use crate::families::GraphFamily;
use crate::graph::SmallGraph;
use search::{Engine, Goal};

pub const DEFAULT_SEARCH_BUDGET: u64 = 2_000_000_000;
pub const DEFAULT_WITNESS_CAP: usize = 1000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectivity {
    #[default]
    Any,
    Connected,
    TwoConnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConstraint {
    pub connectivity: Connectivity,
    pub want_witnesses: bool,
    /// Candidate children examined before giving up.
    pub node_budget: u64,
    pub witness_cap: usize,
}

impl Default for SearchConstraint {
    fn default() -> Self {
        SearchConstraint {
            connectivity: Connectivity::Any,
            want_witnesses: false,
            node_budget: DEFAULT_SEARCH_BUDGET,
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }
}

impl SearchConstraint {
    pub fn with_connectivity(connectivity: Connectivity) -> Self {
        SearchConstraint {
            connectivity,
            ..Default::default()
        }
    }

    pub fn witnesses(mut self) -> Self {
        self.want_witnesses = true;
        self
    }
}

/// The part of a constraint that changes the answer; budgets do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstraintKey {
    pub connectivity: Connectivity,
    pub witnesses: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExRecord {
    pub key: String,
    pub n: usize,
    /// Family members as graph6, in canonical order.
    pub family: Vec<String>,
    pub cycle_threshold: Option<usize>,
    pub constraint: ConstraintKey,
    /// `None` when no graph satisfies the constraint.
    pub value: Option<u64>,
    /// Extremal graphs up to isomorphism, canonically labelled, as graph6.
    pub witnesses: Vec<String>,
    pub truncated: bool,
    pub nodes: u64,
    pub ms: u64,
}

impl ExRecord {
    pub fn witness_graphs(&self) -> Result<Vec<SmallGraph>> {
        self.witnesses.iter().map(|s| crate::graph6::decode(s)).collect()
    }

    fn is_consistent(&self) -> bool {
        let max = (self.n * self.n.saturating_sub(1) / 2) as u64;
        self.value.is_none_or(|v| v <= max)
            && self.witness_graphs().is_ok_and(|ws| {
                ws.iter().all(|g| g.order() == self.n && Some(g.edge_count() as u64) == self.value)
            })
    }

    fn without_witnesses(mut self) -> Self {
        self.constraint.witnesses = false;
        self.witnesses.clear();
        self.truncated = false;
        self.key = key_string(self.n, &self.family, self.cycle_threshold, self.constraint);
        self
    }
}

fn key_string(n: usize, family: &[String], cycle_threshold: Option<usize>, c: ConstraintKey) -> String {
    let cyc = cycle_threshold.map_or("-".to_string(), |k| k.to_string());
    let conn = match c.connectivity {
        Connectivity::Any => "any",
        Connectivity::Connected => "connected",
        Connectivity::TwoConnected => "two_connected",
    };
    format!("n={n};cyc={cyc};members={};conn={conn};witnesses={}", family.join(","), c.witnesses)
}

/// Cache key: order, family fingerprint and the answer-relevant constraint.
pub fn query_key(n: usize, fam: &GraphFamily, constraint: &SearchConstraint) -> String {
    key_string(
        n,
        &fam.member_graph6(),
        fam.cycle_threshold(),
        ConstraintKey {
            connectivity: constraint.connectivity,
            witnesses: constraint.want_witnesses,
        },
    )
}

/// `ex(n, fam)` under `constraint`, with all extremal graphs if requested.
pub fn ex_exact(n: usize, fam: &GraphFamily, constraint: &SearchConstraint) -> Result<ExRecord> {
    if fam.is_empty() {
        return Err(TuranError::InvalidArgument("the forbidden family is empty".into()));
    }
    if n > crate::graph::MAX_ORDER {
        return Err(TuranError::CapacityExceeded {
            needed: n,
            capacity: crate::graph::MAX_ORDER,
        });
    }
    if constraint.node_budget == 0 {
        return Err(TuranError::InvalidArgument("node budget must be positive".into()));
    }
    let start = Instant::now();
    let goal = if constraint.want_witnesses {
        Goal::Extremal {
            cap: constraint.witness_cap,
        }
    } else {
        Goal::Value
    };
    let engine = Engine::new(n, fam, constraint.connectivity, goal, constraint.node_budget);
    let harvest = engine.run()?;
    let witnesses: Vec<String> = harvest.graphs.values().map(|g| g.to_string()).collect();
    Ok(ExRecord {
        key: query_key(n, fam, constraint),
        n,
        family: fam.member_graph6(),
        cycle_threshold: fam.cycle_threshold(),
        constraint: ConstraintKey {
            connectivity: constraint.connectivity,
            witnesses: constraint.want_witnesses,
        },
        value: harvest.best.map(|e| e as u64),
        truncated: constraint.want_witnesses && harvest.count > witnesses.len() as u64,
        witnesses,
        nodes: engine.nodes(),
        ms: start.elapsed().as_millis() as u64,
    })
}

/// EX(n, fam) up to isomorphism, canonically labelled.
pub fn extremal_graphs(n: usize, fam: &GraphFamily, constraint: &SearchConstraint) -> Result<Vec<SmallGraph>> {
    let rec = ex_exact(n, fam, &constraint.clone().witnesses())?;
    rec.witness_graphs()
}

/// Every `fam`-free graph on `n` vertices with at least `min_edges` edges
/// satisfying `connectivity`, one per isomorphism class, canonically
/// labelled and sorted by canonical form.
pub fn enumerate_free(
    n: usize,
    fam: &GraphFamily,
    connectivity: Connectivity,
    min_edges: usize,
    node_budget: u64,
) -> Result<Vec<SmallGraph>> {
    let engine = Engine::new(n, fam, connectivity, Goal::All { min_edges }, node_budget);
    Ok(engine.run()?.graphs.into_values().collect())
}

/// All graphs on `n` vertices up to isomorphism.
pub fn all_graphs(n: usize) -> Vec<SmallGraph> {
    let none = GraphFamily::new([], None).expect("empty family is valid");
    enumerate_free(n, &none, Connectivity::Any, 0, u64::MAX).expect("unbounded enumeration cannot fail")
}

/// All connected graphs on `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<SmallGraph> {
    let none = GraphFamily::new([], None).expect("empty family is valid");
    enumerate_free(n, &none, Connectivity::Connected, 0, u64::MAX).expect("unbounded enumeration cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_form, is_isomorphic};
    use crate::constructions::{friendship_graph, turan_edges};
    use crate::graph::low_mask;
    use crate::structure::is_family_free;

    /// Every labelled graph on `n` vertices, by edge subset.
    fn labelled(n: usize) -> impl Iterator<Item = SmallGraph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u64..1 << pairs.len()).map(move |m| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect();
            SmallGraph::from_edges(n, &edges).unwrap()
        })
    }

    fn naive_ex(n: usize, fam: &GraphFamily, conn: Connectivity) -> Option<u64> {
        labelled(n)
            .filter(|g| match conn {
                Connectivity::Any => true,
                Connectivity::Connected => g.is_connected(),
                Connectivity::TwoConnected => crate::structure::is_two_connected(g),
            })
            .filter(|g| is_family_free(g, fam).unwrap())
            .map(|g| g.edge_count() as u64)
            .max()
    }

    fn naive_extremal(n: usize, fam: &GraphFamily) -> Vec<Vec<u8>> {
        let Some(best) = naive_ex(n, fam, Connectivity::Any) else {
            return Vec::new();
        };
        let mut forms: Vec<_> = labelled(n)
            .filter(|g| g.edge_count() as u64 == best && is_family_free(g, fam).unwrap())
            .map(|g| canonical_form(&g).bytes)
            .collect();
        forms.sort();
        forms.dedup();
        forms
    }

    fn battery() -> Vec<GraphFamily> {
        let g = |s: &str| SmallGraph::parse(s).unwrap();
        vec![
            GraphFamily::new([g("K3")], None).unwrap(),
            GraphFamily::long_cycles(4).unwrap(),
            GraphFamily::cycles_and(5, &g("K4")).unwrap(),
            GraphFamily::new([g("C4")], None).unwrap(),
            GraphFamily::new([g("P3")], None).unwrap(),
            GraphFamily::new([g("I3")], None).unwrap(),
            GraphFamily::new([g("K2").disjoint_union(&g("K2")).unwrap()], None).unwrap(),
            GraphFamily::new([g("K3"), g("C4")], Some(6)).unwrap(),
        ]
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (0..=7).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn enumeration_has_no_duplicates_and_all_labelled_classes() {
        for n in 0..=5 {
            let mut forms: Vec<_> = labelled(n).map(|g| canonical_form(&g).bytes).collect();
            forms.sort();
            forms.dedup();
            let mut ours: Vec<_> = all_graphs(n).iter().map(|g| canonical_form(g).bytes).collect();
            ours.sort();
            assert_eq!(ours, forms);
        }
    }

    #[test]
    fn matches_naive_scan() {
        for fam in battery() {
            for n in 1..=6 {
                for conn in [Connectivity::Any, Connectivity::Connected, Connectivity::TwoConnected] {
                    let rec = ex_exact(n, &fam, &SearchConstraint::with_connectivity(conn)).unwrap();
                    assert_eq!(rec.value, naive_ex(n, &fam, conn), "n={n} {} {conn:?}", fam.fingerprint());
                }
            }
        }
    }

    #[test]
    fn extremal_sets_match_naive_scan() {
        for fam in battery() {
            for n in 1..=5 {
                let mut ours: Vec<_> = extremal_graphs(n, &fam, &SearchConstraint::default())
                    .unwrap()
                    .iter()
                    .map(|g| canonical_form(g).bytes)
                    .collect();
                ours.sort();
                assert_eq!(ours, naive_extremal(n, &fam), "n={n} {}", fam.fingerprint());
            }
        }
    }

    #[test]
    fn spec_examples() {
        let k3 = GraphFamily::new([SmallGraph::complete(3).unwrap()], None).unwrap();
        let rec = ex_exact(5, &k3, &SearchConstraint::default().witnesses()).unwrap();
        assert_eq!(rec.value, Some(6));
        let ws = rec.witness_graphs().unwrap();
        assert_eq!(ws.len(), 1);
        assert!(is_isomorphic(&ws[0], &SmallGraph::complete_bipartite(2, 3).unwrap()));

        let c4 = GraphFamily::long_cycles(4).unwrap();
        let ws = extremal_graphs(5, &c4, &SearchConstraint::default()).unwrap();
        assert_eq!(ws[0].edge_count(), 6);
        assert!(ws.iter().any(|g| is_isomorphic(g, &friendship_graph(2).unwrap())));

        let ws = extremal_graphs(3, &k3, &SearchConstraint::default()).unwrap();
        assert_eq!(ws.len(), 1);
        assert!(is_isomorphic(&ws[0], &SmallGraph::path(3).unwrap()));

        let i3 = GraphFamily::new([SmallGraph::empty(3).unwrap()], None).unwrap();
        let ws = extremal_graphs(2, &i3, &SearchConstraint::default()).unwrap();
        assert_eq!(ws, vec![SmallGraph::complete(2).unwrap()]);
    }

    #[test]
    fn turan_agreement() {
        for r in 3..=5 {
            let fam = GraphFamily::new([SmallGraph::complete(r).unwrap()], None).unwrap();
            for n in 1..=8 {
                let rec = ex_exact(n, &fam, &SearchConstraint::default()).unwrap();
                assert_eq!(rec.value, Some(turan_edges(n, r - 1)), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn infeasible_constraint_has_no_value() {
        let fam = GraphFamily::long_cycles(5).unwrap();
        let rec = ex_exact(2, &fam, &SearchConstraint::with_connectivity(Connectivity::TwoConnected)).unwrap();
        assert_eq!(rec.value, None);
        let k1 = GraphFamily::new([SmallGraph::complete(1).unwrap()], None).unwrap();
        assert_eq!(ex_exact(3, &k1, &SearchConstraint::default()).unwrap().value, None);
        assert!(ex_exact(3, &GraphFamily::new([], None).unwrap(), &SearchConstraint::default()).is_err());
    }

    #[test]
    fn monotone_in_n_family_and_constraint() {
        let k4 = SmallGraph::complete(4).unwrap();
        let small = GraphFamily::long_cycles(6).unwrap();
        let big = GraphFamily::cycles_and(6, &k4).unwrap();
        let mut prev = 0;
        for n in 3..=8 {
            let v = |fam: &GraphFamily, c: Connectivity| {
                ex_exact(n, fam, &SearchConstraint::with_connectivity(c)).unwrap().value.unwrap_or(0)
            };
            let any = v(&small, Connectivity::Any);
            assert!(any >= prev);
            prev = any;
            assert!(v(&big, Connectivity::Any) <= any);
            assert!(v(&small, Connectivity::TwoConnected) <= v(&small, Connectivity::Connected));
            assert!(v(&small, Connectivity::Connected) <= any);
        }
    }

    #[test]
    fn witnesses_satisfy_the_record_invariants() {
        let fam = GraphFamily::cycles_and(6, &SmallGraph::complete(4).unwrap()).unwrap();
        for conn in [Connectivity::Any, Connectivity::TwoConnected] {
            let rec = ex_exact(8, &fam, &SearchConstraint::with_connectivity(conn).witnesses()).unwrap();
            let v = rec.value.unwrap();
            assert!(v <= (5 * 7 / 2) as u64);
            for g in rec.witness_graphs().unwrap() {
                assert_eq!(g.edge_count() as u64, v);
                assert!(is_family_free(&g, &fam).unwrap());
                if conn == Connectivity::TwoConnected {
                    assert!(crate::structure::is_two_connected(&g));
                }
            }
        }
    }

    #[test]
    fn witness_cap_truncates() {
        let fam = GraphFamily::long_cycles(3).unwrap();
        // forests on 7 vertices with 6 edges: the 11 trees
        let full = ex_exact(7, &fam, &SearchConstraint::default().witnesses()).unwrap();
        assert_eq!(full.witnesses.len(), 11);
        assert!(!full.truncated);
        let c = SearchConstraint {
            witness_cap: 4,
            ..SearchConstraint::default().witnesses()
        };
        let cut = ex_exact(7, &fam, &c).unwrap();
        assert!(cut.truncated);
        assert_eq!(cut.witnesses, full.witnesses[..4].to_vec());
    }

    #[test]
    fn budget_is_enforced() {
        let fam = GraphFamily::long_cycles(7).unwrap();
        let c = SearchConstraint {
            node_budget: 50,
            ..Default::default()
        };
        assert!(matches!(ex_exact(9, &fam, &c), Err(TuranError::BudgetExceeded { budget: 50 })));
    }

    #[test]
    fn independent_of_worker_count() {
        let fam = GraphFamily::cycles_and(6, &SmallGraph::complete(4).unwrap()).unwrap();
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                let mut r = ex_exact(8, &fam, &SearchConstraint::default().witnesses()).unwrap();
                r.nodes = 0;
                r.ms = 0;
                r
            })
        };
        assert_eq!(run(1), run(8));
    }

    #[test]
    fn enumerate_respects_min_edges() {
        let none = GraphFamily::new([], None).unwrap();
        let dense = enumerate_free(5, &none, Connectivity::Any, 8, u64::MAX).unwrap();
        // complements of graphs with at most 2 edges on 5 vertices: 1 + 1 + 2
        assert_eq!(dense.len(), 4);
        assert!(dense.iter().all(|g| g.edge_count() >= 8 && g.vertex_mask() == low_mask(5)));
    }
}
