//! Executable checks of the inequalities and closed forms, with reports that
//! carry their own counterexamples.

mod lemmas;
mod theorems;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use lemmas::{verify_bondy, verify_cycle_edge_lemma, verify_degree_fact, verify_exterior_strengthened};
pub use theorems::{verify_general, verify_kr_theorems, verify_two_connected, GeneralOptions, TwoConnectedOptions};

use crate::error::{Result, TuranError};
use crate::families::GraphFamily;
use crate::graph::SmallGraph;
use crate::oracle::{ex_exact, Connectivity, ExCache, ExRecord, SearchConstraint, DEFAULT_SEARCH_BUDGET};
use crate::structure::{
    circumference, cycle_exterior_stats, is_family_free, is_two_connected, validate_cycle,
};

/// The claimed relation between `lhs` and `rhs`; a violation is a case
/// where it fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Lt,
    Eq,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "==",
            Relation::Ge => ">=",
        }
    }
}

/// What a violation's `lhs` measures on its witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Largest number of cycle neighbours of an exterior vertex.
    DegreeFact,
    /// e(G − C) + e(G − C, C).
    ExteriorEdges,
    /// Number of vertices of A with a neighbour off the cycle.
    ExteriorNeighbour,
    /// e(G[C]).
    CycleEdges,
    /// e(G) of a free graph.
    EdgeCount,
    /// 1 if the witness contains a forbidden structure, else 0.
    Containment,
    /// e(G[B]) for the block given as `cycle` (a vertex list).
    BlockEdges,
    /// 1 if the witness is 2-connected, else 0.
    TwoConnected,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub check: Check,
    pub relation: Relation,
    /// graph6 of the counterexample.
    pub witness: String,
    /// The cycle (or block) the inequality was evaluated on.
    pub cycle: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
    /// Forbidden family the witness is claimed to avoid, if relevant.
    pub forbid: Vec<String>,
    pub cycle_threshold: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub label: String,
    pub oracle: Option<u64>,
    pub formula: Option<f64>,
    pub gap: Option<f64>,
    pub extra: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub target: String,
    pub parameters: BTreeMap<String, String>,
    pub instances_tested: u64,
    pub skipped: u64,
    pub counters: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
    pub tables: Vec<TableRow>,
    pub conclusions: BTreeMap<String, String>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(target: &str) -> Self {
        VerificationReport {
            target: target.to_string(),
            pass: true,
            ..Default::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn count(&mut self, key: &str, by: u64) {
        *self.counters.entry(key.to_string()).or_default() += by;
    }

    pub fn conclude(&mut self, key: &str, value: impl ToString) {
        self.conclusions.insert(key.to_string(), value.to_string());
    }

    fn absorb(&mut self, t: Tally) {
        self.instances_tested += t.instances;
        self.skipped += t.skipped;
        for (k, v) in t.counters {
            self.count(&k, v);
        }
        self.violations.extend(t.violations);
    }

    /// Re-derives every violation from its witness and sets `pass`.
    fn finish(mut self) -> Self {
        let mut confirmed = 0;
        for v in &self.violations {
            if recheck_violation(v).unwrap_or(false) {
                confirmed += 1;
            }
        }
        if !self.violations.is_empty() {
            self.count("violations_confirmed", confirmed);
            if confirmed < self.violations.len() as u64 {
                self.notes.push(format!(
                    "{} violation(s) could not be re-derived from the witness alone",
                    self.violations.len() as u64 - confirmed
                ));
            }
        }
        self.pass = self.violations.is_empty();
        self
    }
}

/// Per-cell partial result, merged in cell order.
#[derive(Default)]
struct Tally {
    instances: u64,
    skipped: u64,
    counters: BTreeMap<String, u64>,
    violations: Vec<Violation>,
}

impl Tally {
    fn count(&mut self, key: &str, by: u64) {
        *self.counters.entry(key.to_string()).or_default() += by;
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.skipped += other.skipped;
        for (k, v) in other.counters {
            *self.counters.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations);
        self
    }
}

/// Oracle access shared by the verifiers.
#[derive(Clone, Debug)]
pub struct Context {
    pub cache: Option<ExCache>,
    pub node_budget: u64,
}

impl Default for Context {
    fn default() -> Self {
        Context {
            cache: None,
            node_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

impl Context {
    pub fn ex(&self, n: usize, fam: &GraphFamily, connectivity: Connectivity, witnesses: bool) -> Result<ExRecord> {
        let c = SearchConstraint {
            connectivity,
            want_witnesses: witnesses,
            node_budget: self.node_budget,
            ..Default::default()
        };
        match &self.cache {
            Some(cache) => cache.ex(n, fam, &c),
            None => ex_exact(n, fam, &c),
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn violation(
    check: Check,
    relation: Relation,
    g: &SmallGraph,
    cycle: &[usize],
    lhs: f64,
    rhs: f64,
    fam: Option<&GraphFamily>,
    detail: impl Into<String>,
) -> Violation {
    Violation {
        check,
        relation,
        witness: g.to_string(),
        cycle: cycle.to_vec(),
        lhs,
        rhs,
        forbid: fam.map(|f| f.member_graph6()).unwrap_or_default(),
        cycle_threshold: fam.and_then(|f| f.cycle_threshold()),
        detail: detail.into(),
    }
}

/// Whether the violation reproduces from its own fields: the witness
/// decodes, the measured `lhs` matches, and the relation fails.
pub fn recheck_violation(v: &Violation) -> Result<bool> {
    let g = crate::graph6::decode(&v.witness)?;
    let members = v
        .forbid
        .iter()
        .map(|s| crate::graph6::decode(s))
        .collect::<Result<Vec<_>>>()?;
    let fam = GraphFamily::new(members, v.cycle_threshold)?;
    let lhs = match v.check {
        Check::DegreeFact | Check::ExteriorEdges | Check::ExteriorNeighbour | Check::CycleEdges => {
            validate_cycle(&g, &v.cycle)?;
            if circumference(&g)? != v.cycle.len() {
                return Ok(false);
            }
            let st = cycle_exterior_stats(&g, &v.cycle)?;
            match v.check {
                Check::DegreeFact => st.max_out_deg as f64,
                Check::ExteriorEdges => (st.e_out + st.e_cross) as f64,
                Check::ExteriorNeighbour => {
                    let on: u64 = v.cycle.iter().fold(0, |m, &x| m | 1 << x);
                    crate::graph::bits(st.a_set).filter(|&u| g.neighbors(u) & !on != 0).count() as f64
                }
                _ => st.e_inside as f64,
            }
        }
        Check::EdgeCount => {
            if !fam.is_empty() && !is_family_free(&g, &fam)? {
                return Ok(false);
            }
            g.edge_count() as f64
        }
        Check::Containment => f64::from(u8::from(!is_family_free(&g, &fam)?)),
        Check::TwoConnected => f64::from(u8::from(is_two_connected(&g))),
        Check::BlockEdges => {
            let mask = v.cycle.iter().fold(0u64, |m, &x| m | 1 << x);
            g.edges_within(mask) as f64
        }
    };
    Ok(lhs == v.lhs && !v.relation.holds(v.lhs, v.rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = TuranError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(TuranError::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

fn num(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

fn opt<T>(x: Option<T>, f: impl Fn(T) -> String) -> String {
    x.map_or_else(String::new, f)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn emit_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialise") + "\n",
        Format::Csv => {
            let mut out = String::from("n,label,oracle,formula,gap,extra\n");
            for r in &report.tables {
                let extra: Vec<String> = r.extra.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.n,
                    csv_field(&r.label),
                    opt(r.oracle, |v| v.to_string()),
                    opt(r.formula, num),
                    opt(r.gap, num),
                    csv_field(&extra.join(";"))
                );
            }
            out
        }
        Format::Markdown => markdown(report),
    }
}

fn markdown(r: &VerificationReport) -> String {
    let mut out = format!("# {}\n\n", r.target);
    let _ = writeln!(out, "**{}**: {} instances tested, {} skipped, {} violations\n", if r.pass { "PASS" } else { "FAIL" }, r.instances_tested, r.skipped, r.violations.len());
    if !r.parameters.is_empty() {
        out.push_str("| parameter | value |\n|---|---|\n");
        for (k, v) in &r.parameters {
            let _ = writeln!(out, "| {k} | {v} |");
        }
        out.push('\n');
    }
    if !r.counters.is_empty() {
        out.push_str("| counter | value |\n|---|---|\n");
        for (k, v) in &r.counters {
            let _ = writeln!(out, "| {k} | {v} |");
        }
        out.push('\n');
    }
    out.push_str("| n | label | oracle | formula | gap | extra |\n|---|---|---|---|---|---|\n");
    for t in &r.tables {
        let extra: Vec<String> = t.extra.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            t.n,
            t.label,
            opt(t.oracle, |v| v.to_string()),
            opt(t.formula, num),
            opt(t.gap, num),
            extra.join(", ")
        );
    }
    out.push('\n');
    if !r.violations.is_empty() {
        out.push_str("## Violations\n\n| check | witness | cycle | claim | detail |\n|---|---|---|---|---|\n");
        for v in &r.violations {
            let _ = writeln!(
                out,
                "| {:?} | `{}` | {:?} | {} {} {} | {} |",
                v.check,
                v.witness,
                v.cycle,
                num(v.lhs),
                v.relation.symbol(),
                num(v.rhs),
                v.detail
            );
        }
        out.push('\n');
    }
    if !r.conclusions.is_empty() {
        out.push_str("## Conclusions\n\n");
        for (k, v) in &r.conclusions {
            let _ = writeln!(out, "- {k}: {v}");
        }
        out.push('\n');
    }
    if !r.notes.is_empty() {
        out.push_str("## Notes\n\n");
        for n in &r.notes {
            let _ = writeln!(out, "- {n}");
        }
    }
    out
}

/// Whether `g` is free of `fam` and, if asked, 2-connected.
fn admissible(g: &SmallGraph, fam: &GraphFamily, two_connected: bool) -> Result<bool> {
    Ok((!two_connected || is_two_connected(g)) && is_family_free(g, fam)?)
}
