//! Explicit extremal constructions, each paired with a closed-form edge count
//! that stays valid beyond the 64-vertex materialisation limit.

use crate::error::{Result, TuranError};
use crate::graph::SmallGraph;

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Part sizes of `T(n, r)`, larger parts first.
pub fn turan_parts(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

/// `e(T(n, r)) = C(n,2) − Σ C(part,2)`.
pub fn turan_edges(n: usize, r: usize) -> u64 {
    assert!(r >= 1, "Turán graph needs at least one part");
    choose2(n as u64) - turan_parts(n, r).into_iter().map(|p| choose2(p as u64)).sum::<u64>()
}

/// `ex(n, K_r) = e(T(n, r − 1))`.
pub fn ex_complete(n: usize, r: usize) -> u64 {
    assert!(r >= 2, "K_r needs r >= 2");
    turan_edges(n, r - 1)
}

/// Complete `r`-partite graph with parts as equal as possible; parts are
/// consecutive label ranges.
pub fn turan_graph(n: usize, r: usize) -> Result<SmallGraph> {
    if r == 0 {
        return Err(TuranError::InvalidArgument("T(n, 0) is undefined".into()));
    }
    let mut g = SmallGraph::empty(0)?;
    for p in turan_parts(n, r) {
        g = g.join(&SmallGraph::empty(p)?)?;
    }
    Ok(g)
}

/// `n − 1 = p(k − 2) + q` with `0 <= q <= k − 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisionNkq {
    pub p: usize,
    pub q: usize,
}

impl DivisionNkq {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k < 3 {
            return Err(TuranError::InvalidArgument(format!("need n >= 1 and k >= 3, got n={n}, k={k}")));
        }
        let step = k - 2;
        Ok(DivisionNkq {
            p: (n - 1) / step,
            q: (n - 1) % step,
        })
    }
}

fn check_fnkr(n: usize, k: usize, r: usize) -> Result<DivisionNkq> {
    if k < 4 || r < 3 {
        return Err(TuranError::InvalidArgument(format!("f(n,k,r) needs k >= 4 and r >= 3, got k={k}, r={r}")));
    }
    DivisionNkq::new(n, k)
}

/// `f(n,k,r) = p·ex(k−1, K_r) + ex(q+1, K_r)`.
pub fn f_nkr_value(n: usize, k: usize, r: usize) -> Result<u64> {
    let d = check_fnkr(n, k, r)?;
    Ok(d.p as u64 * ex_complete(k - 1, r) + ex_complete(d.q + 1, r))
}

/// `p` copies of `T(k−1, r−1)` and one `T(q+1, r−1)` sharing vertex 0.
pub fn f_nkr_graph(n: usize, k: usize, r: usize) -> Result<SmallGraph> {
    let d = check_fnkr(n, k, r)?;
    let mut parts = vec![turan_graph(k - 1, r - 1)?; d.p];
    parts.push(turan_graph(d.q + 1, r - 1)?);
    chain_amalgam(&parts)
}

/// `t = ⌊(k − 1)/2⌋`.
pub fn half_floor(k: usize) -> usize {
    (k - 1) / 2
}

fn check_side(n: usize, t: usize) -> Result<()> {
    if n < t {
        Err(TuranError::InvalidArgument(format!("n = {n} is smaller than the dominating side {t}")))
    } else {
        Ok(())
    }
}

/// `G1 = K_t ∨ I_{n−t}`.
pub fn g1_graph(n: usize, k: usize) -> Result<SmallGraph> {
    let t = half_floor(k);
    check_side(n, t)?;
    SmallGraph::complete(t)?.join(&SmallGraph::empty(n - t)?)
}

pub fn g1_edges(n: usize, k: usize) -> u64 {
    let t = half_floor(k) as u64;
    let n = n as u64;
    choose2(t) + t * n.saturating_sub(t)
}

/// `G2 = T(t, r − 2) ∨ I_{n−t}`.
pub fn g2_graph(n: usize, k: usize, r: usize) -> Result<SmallGraph> {
    if r < 3 {
        return Err(TuranError::InvalidArgument(format!("G2 needs r >= 3, got {r}")));
    }
    let t = half_floor(k);
    check_side(n, t)?;
    turan_graph(t, r - 2)?.join(&SmallGraph::empty(n - t)?)
}

pub fn g2_edges(n: usize, k: usize, r: usize) -> u64 {
    let t = half_floor(k);
    turan_edges(t, r - 2) + (t * n.saturating_sub(t)) as u64
}

/// `T ∨ I_{n − |T|}`.
pub fn join_extremal(t_graph: &SmallGraph, n: usize) -> Result<SmallGraph> {
    check_side(n, t_graph.order())?;
    t_graph.join(&SmallGraph::empty(n - t_graph.order())?)
}

pub fn join_extremal_edges(t_edges: u64, t: usize, n: usize) -> u64 {
    t_edges + (t * n.saturating_sub(t)) as u64
}

/// Upper bound on the circumference of `T ∨ I_m` when `|T| = t`: each
/// independent vertex on a cycle uses two distinct `T` neighbours, so at
/// most `t` of them fit and the cycle has length at most `2t`.
pub fn join_circumference_bound(t: usize, m: usize) -> Result<usize> {
    if t == 0 || m < t {
        return Err(TuranError::InvalidArgument(format!("need m >= t >= 1, got t={t}, m={m}")));
    }
    Ok(2 * t)
}

/// All parts glued at their vertex 0.
pub fn chain_amalgam(parts: &[SmallGraph]) -> Result<SmallGraph> {
    chain_amalgam_at(parts, &vec![0; parts.len()])
}

/// Parts glued at one common vertex; `anchors[i]` is the shared vertex of
/// part `i`. The shared vertex is vertex `anchors[0]` of the result.
pub fn chain_amalgam_at(parts: &[SmallGraph], anchors: &[usize]) -> Result<SmallGraph> {
    if parts.is_empty() {
        return Err(TuranError::InvalidArgument("chain amalgam needs at least one part".into()));
    }
    if anchors.len() != parts.len() {
        return Err(TuranError::InvalidArgument("one anchor per part".into()));
    }
    if parts.iter().any(|p| p.order() == 0) {
        return Err(TuranError::InvalidArgument("parts must be nonempty".into()));
    }
    let total: usize = parts.iter().map(|p| p.order() - 1).sum::<usize>() + 1;
    if total > crate::graph::MAX_ORDER {
        return Err(TuranError::CapacityExceeded {
            needed: total,
            capacity: crate::graph::MAX_ORDER,
        });
    }
    let mut g = parts[0].clone();
    let hub = anchors[0];
    if hub >= g.order() {
        return Err(TuranError::VertexOutOfRange {
            vertex: hub,
            order: g.order(),
        });
    }
    for (part, &a) in parts.iter().zip(anchors).skip(1) {
        g = g.amalgam(hub, part, a)?;
    }
    Ok(g)
}

/// `p·e1 + e2`, the edge count of a chain amalgam of `p` copies of a graph
/// with `e1` edges and one with `e2`.
pub fn chain_edges(p: usize, e1: u64, e2: u64) -> u64 {
    p as u64 * e1 + e2
}

/// `m` triangles sharing one vertex.
pub fn friendship_graph(m: usize) -> Result<SmallGraph> {
    if m == 0 {
        return Err(TuranError::InvalidArgument("friendship graph needs m >= 1".into()));
    }
    chain_amalgam(&vec![SmallGraph::complete(3)?; m])
}
