//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{rngs::StdRng, SeedableRng};

use turan_core::canon::canonical_form;
use turan_core::constructions::{chain_amalgam, f_nkr_value, turan_edges};
use turan_core::families::covering_family;
use turan_core::oracle::all_graphs;
use turan_core::structure::is_family_free;
use turan_core::verify::{
    emit_report, verify_bondy, verify_degree_fact, verify_exterior_strengthened, verify_general,
    verify_two_connected, Context, Format, GeneralOptions, TwoConnectedOptions, VerificationReport,
};
use turan_core::{ex_exact, graph6, is_isomorphic, GraphFamily, SearchConstraint, SmallGraph};

struct Outcome {
    pass: bool,
    summary: String,
    /// Deterministic transcript compared across worker counts.
    transcript: String,
}

fn value(n: usize, fam: &GraphFamily) -> Option<u64> {
    ex_exact(n, fam, &SearchConstraint::default()).unwrap().value
}

// ---------- naive oracle over labelled graphs ----------

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn adjacency(n: usize, mask: u32, pairs: &[(usize, usize)]) -> Vec<u8> {
    let mut adj = vec![0u8; n];
    for (b, &(i, j)) in pairs.iter().enumerate() {
        if mask >> b & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    adj
}

/// Injective edge-preserving map of the pattern into the host, by brute force.
fn naive_contains(host: &[u8], pattern: &[(usize, usize)], p: usize) -> bool {
    fn extend(host: &[u8], pattern: &[(usize, usize)], p: usize, map: &mut Vec<usize>) -> bool {
        if map.len() == p {
            return pattern.iter().all(|&(a, b)| host[map[a]] >> map[b] & 1 == 1);
        }
        for v in 0..host.len() {
            if !map.contains(&v) {
                map.push(v);
                if extend(host, pattern, p, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    p <= host.len() && extend(host, pattern, p, &mut Vec::new())
}

/// Some simple cycle of length at least `k`, by enumerating paths.
fn naive_long_cycle(host: &[u8], k: usize) -> bool {
    fn walk(host: &[u8], start: usize, v: usize, used: u8, len: usize, k: usize) -> bool {
        for w in 0..host.len() {
            if host[v] >> w & 1 == 0 {
                continue;
            }
            if w == start && len >= 3 && len >= k {
                return true;
            }
            if used >> w & 1 == 0 && w > start && walk(host, start, w, used | 1 << w, len + 1, k) {
                return true;
            }
        }
        false
    }
    (0..host.len()).any(|s| walk(host, s, s, 1 << s, 1, k))
}

struct NaiveFamily {
    name: &'static str,
    cycles: Option<usize>,
    patterns: Vec<(Vec<(usize, usize)>, usize)>,
}

fn criterion1() -> Outcome {
    let clique = |p: usize| (pairs(p), p);
    let square = (vec![(0, 1), (1, 2), (2, 3), (3, 0)], 4);
    let battery = vec![
        (NaiveFamily { name: "{K3}", cycles: None, patterns: vec![clique(3)] }, GraphFamily::new([SmallGraph::complete(3).unwrap()], None).unwrap()),
        (NaiveFamily { name: "{C>=4}", cycles: Some(4), patterns: vec![] }, GraphFamily::long_cycles(4).unwrap()),
        (
            NaiveFamily { name: "{C>=5,K4}", cycles: Some(5), patterns: vec![clique(4)] },
            GraphFamily::cycles_and(5, &SmallGraph::complete(4).unwrap()).unwrap(),
        ),
        (
            NaiveFamily { name: "{K2,2}", cycles: None, patterns: vec![square] },
            GraphFamily::new([SmallGraph::complete_bipartite(2, 2).unwrap()], None).unwrap(),
        ),
    ];
    let mut pass = true;
    let mut transcript = String::new();
    for (naive, fam) in &battery {
        for n in 1..=6 {
            let ps = pairs(n);
            let mut best = 0;
            for mask in 0u32..1 << ps.len() {
                let e = mask.count_ones();
                if e <= best {
                    continue;
                }
                let adj = adjacency(n, mask, &ps);
                let free = naive.cycles.is_none_or(|k| !naive_long_cycle(&adj, k))
                    && naive.patterns.iter().all(|(pe, p)| !naive_contains(&adj, pe, *p));
                if free {
                    best = e;
                }
            }
            let got = value(n, fam);
            pass &= got == Some(best as u64);
            let _ = writeln!(transcript, "{} n={n}: oracle {:?} naive {best}", naive.name, got);
        }
    }
    Outcome {
        pass,
        summary: "oracle equals the labelled naive scan for 4 families, n <= 6".into(),
        transcript,
    }
}

fn criterion2() -> Outcome {
    let mut pass = true;
    let mut transcript = String::new();
    for r in [3, 4, 5] {
        let fam = GraphFamily::new([SmallGraph::complete(r).unwrap()], None).unwrap();
        for n in 1..=9 {
            let got = value(n, &fam);
            let want = turan_edges(n, r - 1);
            pass &= got == Some(want);
            let _ = writeln!(transcript, "K{r} n={n}: {got:?} vs {want}");
        }
    }
    let rec = ex_exact(5, &GraphFamily::long_cycles(4).unwrap(), &SearchConstraint::default().witnesses()).unwrap();
    let bowtie = SmallGraph::parse("bowtie").unwrap();
    let has_bowtie = rec.witness_graphs().unwrap().iter().any(|w| is_isomorphic(w, &bowtie));
    pass &= rec.value == Some(6) && has_bowtie;
    let _ = writeln!(transcript, "C>=4 n=5: {:?} witnesses {:?}", rec.value, rec.witnesses);
    Outcome {
        pass,
        summary: format!("Turán values for n <= 9, r in 3..=5; ex(5,C>=4) = {:?}, bowtie witness {has_bowtie}", rec.value),
        transcript,
    }
}

fn criterion3() -> Outcome {
    let mut pass = true;
    let mut transcript = String::new();
    let mut equalities = 0;
    for k in 3..=9 {
        let fam = GraphFamily::long_cycles(k).unwrap();
        for n in k..=9 {
            let v = value(n, &fam).unwrap();
            let bound = (k - 1) as f64 * (n - 1) as f64 / 2.0;
            pass &= v as f64 <= bound;
            if (n - 1) % (k - 2) == 0 {
                let blocks = (n - 1) / (k - 2);
                let chain = chain_amalgam(&vec![SmallGraph::complete(k - 1).unwrap(); blocks]).unwrap();
                let witness_ok = chain.order() == n
                    && chain.edge_count() as f64 == bound
                    && is_family_free(&chain, &fam).unwrap();
                pass &= v as f64 == bound && witness_ok;
                equalities += 1;
            }
            let _ = writeln!(transcript, "k={k} n={n}: {v} <= {bound}");
        }
    }
    Outcome {
        pass,
        summary: format!("bound holds for 3 <= k <= n <= 9, equality in all {equalities} divisible cases"),
        transcript,
    }
}

fn lemma_line(r: &VerificationReport) -> String {
    format!("{} {} ({} violations)", r.target, if r.pass { "ok" } else { "FAILS" }, r.violations.len())
}

fn criterion4() -> Outcome {
    let mut pass = true;
    let mut transcript = String::new();
    let mut parts = Vec::new();
    for n in [7, 8] {
        for r in [verify_degree_fact(n), verify_bondy(n), verify_exterior_strengthened(n)] {
            let r = r.unwrap();
            pass &= r.pass;
            parts.push(format!("n<={n}: {}", lemma_line(&r)));
            transcript.push_str(&emit_report(&r, Format::Json));
        }
    }
    let bondy = verify_bondy(7).unwrap();
    let mut summary = parts.join("; ");
    if let Some(v) = bondy.violations.first() {
        let _ = write!(
            summary,
            "; smallest Bondy counterexample {} with cycle {:?}: {} > {}; violations in 2-connected graphs: {}",
            v.witness,
            v.cycle,
            v.lhs,
            v.rhs,
            bondy.counters.get("violations_two_connected").copied().unwrap_or(0)
        );
    }
    Outcome { pass, summary, transcript }
}

fn criterion5() -> Outcome {
    let fam = GraphFamily::cycles_and(6, &SmallGraph::complete(5).unwrap()).unwrap();
    let v = value(9, &fam);
    let f = f_nkr_value(9, 6, 5).unwrap();
    Outcome {
        pass: v == Some(18) && f == 18,
        summary: format!("ex(9,{{C>=6,K5}}) = {v:?}, f(9,6,5) = {f}"),
        transcript: format!("{v:?} {f}\n"),
    }
}

fn criterion6() -> Outcome {
    let k4 = SmallGraph::complete(4).unwrap();
    let ns: Vec<usize> = (7..=10).collect();
    let r = verify_two_connected(7, &k4, &ns, &TwoConnectedOptions::default(), &Context::default()).unwrap();
    let p3 = SmallGraph::path(3).unwrap();
    let ex_is_p3 = graph6::decode(&r.conclusions["EX(t,H)"]).is_ok_and(|t| is_isomorphic(&t, &p3));
    let certified = r.counters.get("constructions_certified").copied().unwrap_or(0);
    let gaps: Vec<String> = r.tables.iter().map(|t| format!("{}:{}", t.n, t.gap.unwrap_or(f64::NAN))).collect();
    let pass = r.pass
        && ex_is_p3
        && certified == 12 - 5 + 1
        && r.conclusions["gap_nonnegative"] == "true"
        && r.conclusions["gap_nonincreasing"] == "true";
    Outcome {
        pass,
        summary: format!(
            "T = P3: {ex_is_p3}; {certified} joins certified for n in 5..=12; gaps {}; {} violations",
            gaps.join(" "),
            r.violations.len()
        ),
        transcript: emit_report(&r, Format::Json),
    }
}

fn criterion7() -> Outcome {
    let k4 = SmallGraph::complete(4).unwrap();
    let ns: Vec<usize> = (1..=10).collect();
    let r = verify_general(6, &k4, &ns, &GeneralOptions::default(), &Context::default()).unwrap();
    let constant = r.conclusions["d_top3_constant"] == "true";
    let pass = r.pass && constant;
    let d: Vec<String> = r.tables.iter().map(|t| format!("{}:{}", t.n, t.extra["d_n"])).collect();
    Outcome {
        pass,
        summary: format!(
            "upper bound 2(n-1): {} violations; d_n = {}; top three constant: {constant}; constant per residue of n-1 mod 4: {}",
            r.violations.len(),
            d.join(" "),
            r.conclusions["d_constant_per_residue_mod_4"]
        ),
        transcript: emit_report(&r, Format::Json),
    }
}

fn criterion8() -> Outcome {
    let hosts: Vec<SmallGraph> = (1..=6).flat_map(all_graphs).collect();
    let mut discrepancies = 0;
    let mut checked = 0;
    for f in (1..=5).flat_map(all_graphs) {
        let full = covering_family(&f, false).unwrap();
        let reduced = covering_family(&f, true).unwrap();
        for h in &hosts {
            checked += 1;
            if is_family_free(h, &full).unwrap() != is_family_free(h, &reduced).unwrap() {
                discrepancies += 1;
            }
        }
    }
    Outcome {
        pass: discrepancies == 0,
        summary: format!("{checked} (F, host) pairs, {discrepancies} discrepancies"),
        transcript: String::new(),
    }
}

fn criterion9() -> Outcome {
    let mut round_trips = 0u64;
    let mut ok = true;
    for n in 0..=6 {
        let ps = pairs(n);
        for mask in 0u32..1 << ps.len() {
            let edges: Vec<_> = ps.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            let g = SmallGraph::from_edges(n, &edges).unwrap();
            ok &= graph6::decode(&graph6::encode(&g).unwrap()).unwrap() == g;
            round_trips += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    let mut relabelings = 0u64;
    for n in 1..=7 {
        for g in all_graphs(n) {
            let want = canonical_form(&g).bytes;
            let mut perm: Vec<usize> = (0..n).collect();
            for _ in 0..100 {
                perm.shuffle(&mut rng);
                ok &= canonical_form(&g.permute(&perm)).bytes == want;
                relabelings += 1;
            }
        }
    }
    let counts: Vec<usize> = (1..=7).map(|n| all_graphs(n).len()).collect();
    ok &= counts == [1, 2, 4, 11, 34, 156, 1044];
    Outcome {
        pass: ok,
        summary: format!("{round_trips} graph6 round trips, {relabelings} relabelings, class counts {counts:?}"),
        transcript: String::new(),
    }
}

type Criterion = fn() -> Outcome;

fn main() {
    let criteria: [(usize, Criterion); 9] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
    ];
    let mut all = true;
    let mut transcripts = Vec::new();
    for (i, run) in criteria {
        let start = Instant::now();
        let out = run();
        all &= out.pass;
        println!(
            "criterion {i}: {} [{:.1}s] {}",
            if out.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            out.summary
        );
        if i <= 7 {
            transcripts.push((run, out.transcript));
        }
    }

    let start = Instant::now();
    let mut differing = Vec::new();
    for (i, (run, _)) in transcripts.iter().enumerate() {
        let pool = |w| rayon::ThreadPoolBuilder::new().num_threads(w).build().unwrap();
        let one = pool(1).install(run).transcript;
        let eight = pool(8).install(run).transcript;
        if one != eight {
            differing.push(i + 1);
        }
    }
    let pass = differing.is_empty();
    all &= pass;
    println!(
        "criterion 10: {} [{:.1}s] transcripts of criteria 1-7 at 1 and 8 workers: {}",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64(),
        if pass { "identical".to_string() } else { format!("differ for {differing:?}") }
    );
    if !all {
        std::process::exit(1);
    }
}
