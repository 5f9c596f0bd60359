//! Forbidden families and the covering-derived families built from a graph `F`.
//!
//! For `F`, the covering family holds the induced subgraphs `F[S]` over all
//! vertex sets `S` whose complement is independent; the edge-deleted family
//! holds `F - {u, v}` over the edges `uv`.

use crate::canon::canonical_form;
use crate::error::{Result, TuranError};
use crate::graph::{bits, SmallGraph};
use crate::oracle::{extremal_graphs, SearchConstraint};
use crate::structure::subgraph::contains_subgraph;

pub const MAX_COVERING_ORDER: usize = 24;

/// Finite set of forbidden graphs, up to isomorphism, plus an optional
/// "every cycle of length at least k" member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphFamily {
    members: Vec<SmallGraph>,
    forms: Vec<Vec<u8>>,
    cycle_threshold: Option<usize>,
}

impl GraphFamily {
    pub fn new(members: impl IntoIterator<Item = SmallGraph>, cycle_threshold: Option<usize>) -> Result<Self> {
        if let Some(k) = cycle_threshold {
            if k < 3 {
                return Err(TuranError::InvalidArgument(format!("cycle threshold {k} < 3")));
            }
        }
        let mut keyed: Vec<(Vec<u8>, SmallGraph)> = members
            .into_iter()
            .map(|g| {
                let cf = canonical_form(&g);
                let canon = cf.apply(&g);
                (cf.bytes, canon)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        let (forms, members) = keyed.into_iter().unzip();
        Ok(GraphFamily {
            members,
            forms,
            cycle_threshold,
        })
    }

    /// `{C≥k}` alone.
    pub fn long_cycles(k: usize) -> Result<Self> {
        Self::new([], Some(k))
    }

    /// `{C≥k, F}`.
    pub fn cycles_and(k: usize, f: &SmallGraph) -> Result<Self> {
        Self::new([f.clone()], Some(k))
    }

    /// Members in canonical labelling, sorted by canonical form.
    pub fn members(&self) -> &[SmallGraph] {
        &self.members
    }

    pub fn canonical_forms(&self) -> &[Vec<u8>] {
        &self.forms
    }

    pub fn cycle_threshold(&self) -> Option<usize> {
        self.cycle_threshold
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty() && self.cycle_threshold.is_none()
    }

    pub fn min_member_order(&self) -> Option<usize> {
        self.members.iter().map(|g| g.order()).min()
    }

    pub fn with_cycle_threshold(&self, k: Option<usize>) -> Result<Self> {
        Self::new(self.members.iter().cloned(), k)
    }

    /// Members as graph6 strings, in canonical order.
    pub fn member_graph6(&self) -> Vec<String> {
        self.members.iter().map(|g| g.to_string()).collect()
    }

    /// Stable textual key: cycle threshold and sorted member forms.
    pub fn fingerprint(&self) -> String {
        let cyc = self.cycle_threshold.map_or("-".to_string(), |k| k.to_string());
        format!("cyc={cyc};members={}", self.member_graph6().join(","))
    }
}

/// Every vertex covering `S` of `f` (complement independent), as masks in
/// increasing order.
pub fn vertex_coverings(f: &SmallGraph) -> Result<Vec<u64>> {
    let all = f.vertex_mask();
    Ok(independent_sets(f)?.into_iter().map(|i| all & !i).collect::<std::collections::BTreeSet<_>>().into_iter().collect())
}

fn independent_sets(f: &SmallGraph) -> Result<Vec<u64>> {
    if f.order() > MAX_COVERING_ORDER {
        return Err(TuranError::TooLarge {
            order: f.order(),
            max: MAX_COVERING_ORDER,
        });
    }
    fn rec(f: &SmallGraph, next: usize, set: u64, blocked: u64, out: &mut Vec<u64>) {
        out.push(set);
        for v in next..f.order() {
            if blocked >> v & 1 == 0 {
                rec(f, v + 1, set | 1 << v, blocked | f.neighbors(v), out);
            }
        }
    }
    let mut out = Vec::new();
    rec(f, 0, 0, 0, &mut out);
    Ok(out)
}

/// Inclusion-minimal coverings: complements of maximal independent sets.
pub fn minimal_vertex_coverings(f: &SmallGraph) -> Result<Vec<u64>> {
    let all = f.vertex_mask();
    let mut out: Vec<u64> = independent_sets(f)?
        .into_iter()
        .filter(|&i| bits(all & !i).all(|v| f.neighbors(v) & i != 0))
        .map(|i| all & !i)
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// `{F[S] : S a vertex covering}`; with `minimal_only`, restricted to
/// minimal coverings and then to members containing no other member.
pub fn covering_family(f: &SmallGraph, minimal_only: bool) -> Result<GraphFamily> {
    if !minimal_only {
        let members = vertex_coverings(f)?.into_iter().map(|s| f.induced_subgraph(s));
        return GraphFamily::new(members, None);
    }
    let candidates = GraphFamily::new(
        minimal_vertex_coverings(f)?.into_iter().map(|s| f.induced_subgraph(s)),
        None,
    )?;
    let ms = candidates.members();
    let kept = ms.iter().enumerate().filter(|(i, a)| {
        !ms.iter()
            .enumerate()
            .any(|(j, b)| j != *i && contains_subgraph(a, b))
    });
    GraphFamily::new(kept.map(|(_, g)| g.clone()), None)
}

/// `{F − {u, v} : uv ∈ E(F)}`.
pub fn edge_deleted_family(f: &SmallGraph) -> Result<GraphFamily> {
    if f.order() < 3 {
        return Err(TuranError::InvalidArgument(format!(
            "edge-deleted family needs at least 3 vertices, got {}",
            f.order()
        )));
    }
    let edges = f.edges();
    if edges.is_empty() {
        return Err(TuranError::InvalidArgument("edge-deleted family needs an edge".into()));
    }
    let all = f.vertex_mask();
    GraphFamily::new(
        edges.into_iter().map(|(u, v)| f.induced_subgraph(all & !(1 << u) & !(1 << v))),
        None,
    )
}

/// Whether every graph in EX(t, h_fam) contains a member of `hprime_fam`.
pub fn extremal_contains_hprime(
    t: usize,
    h_fam: &GraphFamily,
    hprime_fam: &GraphFamily,
    constraint: &SearchConstraint,
) -> Result<bool> {
    let witnesses = extremal_graphs(t, h_fam, constraint)?;
    Ok(witnesses
        .iter()
        .all(|g| hprime_fam.members().iter().any(|h| contains_subgraph(g, h))))
}
