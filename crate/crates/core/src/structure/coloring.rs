use std::fmt;

use crate::graph::{bits, SmallGraph};

/// Smallest colour class over all proper 2-colourings; `Infinite` for
/// non-bipartite graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PValue {
    Finite(usize),
    Infinite,
}

impl PValue {
    /// `p >= t + 1`, the hypothesis shared by the two-connected theorems.
    pub fn exceeds(self, t: usize) -> bool {
        match self {
            PValue::Finite(p) => p > t,
            PValue::Infinite => true,
        }
    }
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValue::Finite(p) => write!(f, "{p}"),
            PValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Two-colour each component; isolated vertices go to whichever side is
/// larger, so they contribute nothing.
pub fn p_value(g: &SmallGraph) -> PValue {
    let mut total = 0;
    for comp in g.components() {
        if comp.count_ones() == 1 {
            continue;
        }
        let root = comp.trailing_zeros() as usize;
        let mut side = [0u64; 2];
        side[0] = 1 << root;
        let mut frontier = side[0];
        let mut colour = 0;
        let mut seen = frontier;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= g.neighbors(v);
            }
            if next & side[colour] != 0 {
                return PValue::Infinite;
            }
            colour ^= 1;
            side[colour] |= next;
            next &= !seen;
            seen |= next;
            frontier = next;
        }
        if side[0] & side[1] != 0 {
            return PValue::Infinite;
        }
        total += side[0].count_ones().min(side[1].count_ones()) as usize;
    }
    PValue::Finite(total)
}
