//! Exhaustive checks of the cycle-exterior inequalities.

use rayon::prelude::*;

use super::{violation, Check, Context, Relation, Tally, VerificationReport};
use crate::constructions::join_extremal;
use crate::error::{Result, TuranError};
use crate::families::{covering_family, edge_deleted_family, GraphFamily};
use crate::graph::{bits, SmallGraph};
use crate::oracle::{enumerate_free, Connectivity};
use crate::structure::{
    circumference, contains_subgraph, cycle_exterior_stats, is_two_connected, longest_cycle_representatives,
    longest_cycles, p_value, NodeBudget,
};

pub const MAX_EXHAUSTIVE_ORDER: usize = 8;

fn check_order(n_max: usize) -> Result<()> {
    if n_max > MAX_EXHAUSTIVE_ORDER {
        return Err(TuranError::TooLarge {
            order: n_max,
            max: MAX_EXHAUSTIVE_ORDER,
        });
    }
    Ok(())
}

/// Runs `per_graph` over every graph class on `1..=n_max` vertices that
/// satisfies `connectivity`, in parallel, merging in enumeration order.
fn exhaustive(
    n_max: usize,
    fam: &GraphFamily,
    connectivity: Connectivity,
    per_graph: impl Fn(&SmallGraph) -> Result<Tally> + Sync,
) -> Result<Tally> {
    let mut total = Tally::default();
    for n in 1..=n_max {
        let graphs = enumerate_free(n, fam, connectivity, 0, u64::MAX)?;
        total.count(&format!("graphs_n{n:02}"), graphs.len() as u64);
        let parts = graphs.par_iter().map(&per_graph).collect::<Result<Vec<_>>>()?;
        total = parts.into_iter().fold(total, Tally::merge);
    }
    Ok(total)
}

fn no_family() -> GraphFamily {
    GraphFamily::new([], None).expect("empty family is valid")
}

/// `d_C(u) <= ⌊c/2⌋` for every exterior vertex of every longest cycle of
/// every connected non-Hamiltonian graph.
pub fn verify_degree_fact(n_max: usize) -> Result<VerificationReport> {
    check_order(n_max)?;
    let mut report = VerificationReport::new("degree_fact");
    report.param("n_max", n_max);
    let tally = exhaustive(n_max, &no_family(), Connectivity::Connected, |g| {
        let mut t = Tally::default();
        let n = g.order();
        let c = circumference(g)?;
        if c == 0 {
            t.count("acyclic", 1);
            return Ok(t);
        }
        if c == n {
            t.count("hamiltonian", 1);
            t.skipped += 1;
            return Ok(t);
        }
        for cycle in longest_cycles(g)? {
            let st = cycle_exterior_stats(g, &cycle)?;
            t.instances += 1;
            t.count("exterior_vertices", (n - c) as u64);
            if st.max_out_deg > c / 2 {
                t.violations.push(violation(
                    Check::DegreeFact,
                    Relation::Le,
                    g,
                    &cycle,
                    st.max_out_deg as f64,
                    (c / 2) as f64,
                    None,
                    "exterior vertex with too many cycle neighbours",
                ));
            }
        }
        Ok(t)
    })?;
    report.absorb(tally);
    Ok(report.finish())
}

/// `e(G−C) + e(G−C, C) <= ⌊c/2⌋(n − c)` for every graph with a cycle and
/// every longest cycle. Violations are split by whether the graph is
/// 2-connected.
pub fn verify_bondy(n_max: usize) -> Result<VerificationReport> {
    check_order(n_max)?;
    let mut report = VerificationReport::new("bondy");
    report.param("n_max", n_max);
    let tally = exhaustive(n_max, &no_family(), Connectivity::Any, |g| {
        let mut t = Tally::default();
        let n = g.order();
        let c = circumference(g)?;
        if c == 0 {
            t.count("acyclic", 1);
            return Ok(t);
        }
        if c == n {
            // no exterior: 0 <= 0 for every choice of C
            t.count("hamiltonian", 1);
            t.instances += 1;
            return Ok(t);
        }
        for cycle in longest_cycles(g)? {
            let st = cycle_exterior_stats(g, &cycle)?;
            t.instances += 1;
            let lhs = st.e_out + st.e_cross;
            let rhs = c / 2 * (n - c);
            if lhs > rhs {
                let two = is_two_connected(g);
                t.count(if two { "violations_two_connected" } else { "violations_with_cut_vertex" }, 1);
                t.violations.push(violation(
                    Check::ExteriorEdges,
                    Relation::Le,
                    g,
                    &cycle,
                    lhs as f64,
                    rhs as f64,
                    None,
                    if two { "exterior edge count above the bound" } else { "exterior edge count above the bound; graph has a cut vertex" },
                ));
            }
        }
        Ok(t)
    })?;
    report.absorb(tally);
    Ok(report.finish())
}

/// The refined exterior bound for 2-connected graphs with `4 <= c <= n−1`,
/// together with the side fact that vertices of `A` have no neighbour off
/// the cycle.
pub fn verify_exterior_strengthened(n_max: usize) -> Result<VerificationReport> {
    check_order(n_max)?;
    let mut report = VerificationReport::new("exterior_strengthened");
    report.param("n_max", n_max);
    let tally = exhaustive(n_max, &no_family(), Connectivity::TwoConnected, |g| {
        let mut t = Tally::default();
        let n = g.order();
        let c = circumference(g)?;
        if c < 4 || c >= n {
            t.skipped += 1;
            t.count("outside_hypothesis", 1);
            return Ok(t);
        }
        let half = c / 2;
        for cycle in longest_cycles(g)? {
            let st = cycle_exterior_stats(g, &cycle)?;
            t.instances += 1;
            let a = st.a_size();
            let lhs = (st.e_out + st.e_cross) as f64;
            let rhs = (half * a) as f64 + (half as f64 - 0.5) * (n - c - a) as f64;
            if lhs > rhs {
                t.violations.push(violation(
                    Check::ExteriorEdges,
                    Relation::Le,
                    g,
                    &cycle,
                    lhs,
                    rhs,
                    None,
                    format!("|A| = {a}"),
                ));
            }
            let on: u64 = cycle.iter().fold(0, |m, &x| m | 1 << x);
            let offenders = bits(st.a_set).filter(|&u| g.neighbors(u) & !on != 0).count();
            t.count("a_vertices_checked", a as u64);
            if a > 0 {
                t.count("instances_with_nonempty_a", 1);
            }
            if offenders > 0 {
                t.violations.push(violation(
                    Check::ExteriorNeighbour,
                    Relation::Eq,
                    g,
                    &cycle,
                    offenders as f64,
                    0.0,
                    None,
                    "vertex of A with a neighbour off the cycle",
                ));
            }
        }
        Ok(t)
    })?;
    report.absorb(tally);
    Ok(report.finish())
}

struct CycleEdgeSetup {
    c: usize,
    bound: f64,
    relation: Relation,
    gate: usize,
}

/// `e(G[C])` against `ex(⌊c/2⌋, 𝓗)` plus the complete-bipartite part, on
/// constructed hosts `T ∨ I_m` (even `c`) or `T ∨ (K_2 ⊔ I_m)` (odd `c`)
/// over every 𝓗-free `T` on `⌊c/2⌋` vertices, and on every `F`-free graph
/// with at most `exhaustive_n` vertices that meets the size hypothesis on
/// `A`.
pub fn verify_cycle_edge_lemma(
    f: &SmallGraph,
    cs: &[usize],
    exhaustive_n: usize,
    ctx: &Context,
) -> Result<VerificationReport> {
    check_order(exhaustive_n)?;
    let mut report = VerificationReport::new("cycle_edge_lemma");
    report.param("F", f);
    report.param("c", cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
    report.param("exhaustive_n", exhaustive_n);
    let p = p_value(f);
    report.conclude("p(F)", p);
    let h = covering_family(f, true)?;
    let hp = edge_deleted_family(f).ok();
    let f_fam = GraphFamily::new([f.clone()], None)?;
    let mut setups = Vec::new();
    for &c in cs {
        if c < 3 {
            return Err(TuranError::InvalidArgument(format!("cycle length {c} < 3")));
        }
        let t = c / 2;
        if !p.exceeds(t) {
            report.count("c_outside_hypothesis", 1);
            report.notes.push(format!("c = {c}: p(F) = {p} < {}", t + 1));
            continue;
        }
        let rec = ctx.ex(t, &h, Connectivity::Any, true)?;
        let Some(ex_t) = rec.value else {
            report.notes.push(format!("c = {c}: no 𝓗-free graph on {t} vertices"));
            continue;
        };
        let strict = c % 2 == 1
            && c >= 5
            && hp.as_ref().is_some_and(|hp| {
                rec.witness_graphs()
                    .is_ok_and(|ws| ws.iter().all(|w| hp.members().iter().any(|m| contains_subgraph(w, m))))
            });
        let bound = if c % 2 == 0 {
            ex_t + (t * t) as u64
        } else {
            ex_t + (t * (t + 1)) as u64 + 1
        };
        let gate = if c % 2 == 0 { f.order() } else { c * f.order() };
        report.tables.push(super::TableRow {
            n: c,
            label: format!("c={c}"),
            oracle: Some(ex_t),
            formula: Some(bound as f64),
            gap: None,
            extra: [
                ("ex(t,H)".to_string(), ex_t.to_string()),
                ("strict".to_string(), strict.to_string()),
                ("A_gate".to_string(), gate.to_string()),
            ]
            .into_iter()
            .collect(),
        });
        setups.push(CycleEdgeSetup {
            c,
            bound: bound as f64,
            relation: if strict { Relation::Lt } else { Relation::Le },
            gate,
        });
    }
    if setups.is_empty() {
        return Err(TuranError::HypothesisViolated(format!(
            "p(F) = {p} is too small for every requested cycle length"
        )));
    }

    let check_host = |g: &SmallGraph, s: &CycleEdgeSetup, cycles: &[Vec<usize>], t: &mut Tally| -> Result<()> {
        for cycle in cycles {
            let st = cycle_exterior_stats(g, cycle)?;
            if st.a_size() < s.gate {
                t.skipped += 1;
                t.count("below_a_gate", 1);
                continue;
            }
            t.instances += 1;
            let lhs = st.e_inside as f64;
            t.count(&format!("max_e_inside_c{}", s.c), 0);
            let key = format!("max_e_inside_c{}", s.c);
            let cur = t.counters.get(&key).copied().unwrap_or(0);
            t.counters.insert(key, cur.max(st.e_inside as u64));
            if !s.relation.holds(lhs, s.bound) {
                t.violations.push(violation(
                    Check::CycleEdges,
                    s.relation,
                    g,
                    cycle,
                    lhs,
                    s.bound,
                    Some(&f_fam),
                    format!("c = {}", s.c),
                ));
            }
        }
        Ok(())
    };

    for s in &setups {
        let t = s.c / 2;
        let mut tally = Tally::default();
        let bases = enumerate_free(t, &h, Connectivity::Any, 0, u64::MAX)?;
        for base in &bases {
            let host = if s.c % 2 == 0 {
                join_extremal(base, t + t + f.order())
            } else {
                let side = SmallGraph::complete(2)?.disjoint_union(&SmallGraph::empty(t - 1 + s.gate)?)?;
                base.join(&side)
            };
            let host = match host {
                Ok(h) => h,
                Err(TuranError::CapacityExceeded { .. }) => {
                    tally.count("hosts_over_capacity", 1);
                    continue;
                }
                Err(e) => return Err(e),
            };
            tally.count("constructed_hosts", 1);
            if contains_subgraph(&host, f) {
                tally.count("constructed_hosts_containing_F", 1);
                continue;
            }
            let cycles = longest_cycle_representatives(&host, &mut NodeBudget::default())?;
            if cycles.first().map(|c| c.len()) != Some(s.c) {
                tally.count("constructed_hosts_other_circumference", 1);
                continue;
            }
            check_host(&host, s, &cycles, &mut tally)?;
        }
        let small = exhaustive(exhaustive_n, &f_fam, Connectivity::Any, |g| {
            let mut t = Tally::default();
            if g.order() <= s.c || g.order() < s.gate + s.c {
                return Ok(t);
            }
            if circumference(g)? != s.c {
                return Ok(t);
            }
            t.count("exhaustive_hosts", 1);
            check_host(g, s, &longest_cycles(g)?, &mut t)?;
            Ok(t)
        })?;
        // graph counts of the F-free enumeration are not per-c facts
        let small = Tally {
            counters: small.counters.into_iter().filter(|(k, _)| !k.starts_with("graphs_n")).collect(),
            ..small
        };
        report.absorb(tally.merge(small));
    }
    Ok(report.finish())
}
