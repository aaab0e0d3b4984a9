//! Reference computations used to cross-check the fast engine on small graphs.
//!
//! Everything here works from plain adjacency lists and breadth-first search and shares no
//! code with the bitset routines in the rest of the crate.

use std::collections::VecDeque;

use serde::Serialize;

use crate::cutset::CutSetFamily;
use crate::error::{check_guard, Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default size guard for [`oracle_cut_sets`].
pub const CUTSET_GUARD: usize = 12;
/// Default size guard for [`oracle_height_sum`] and [`oracle_dual_edge`].
pub const HEIGHT_GUARD: usize = 10;

struct Lists {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Lists {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in g.edges() {
            adj[u - 1].push(v - 1);
            adj[v - 1].push(u - 1);
        }
        Lists { n, adj }
    }

    /// Component label of every vertex outside `removed` (`usize::MAX` inside it) and the count.
    fn components(&self, removed: &[bool]) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if removed[start] || label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !removed[w] && label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    fn removed(&self, bits: u64) -> Vec<bool> {
        (0..self.n).map(|i| bits >> i & 1 == 1).collect()
    }

    fn c(&self, bits: u64) -> usize {
        self.components(&self.removed(bits)).1
    }

    /// Cut set test straight from the definition: removing any single element from `S`
    /// strictly lowers the component count.
    fn is_cut_set(&self, bits: u64) -> bool {
        let c = self.c(bits);
        (0..self.n)
            .filter(|&i| bits >> i & 1 == 1)
            .all(|i| self.c(bits & !(1 << i)) < c)
    }
}

/// All cut sets by scanning every subset of the vertex set.
pub fn oracle_cut_sets(g: &Graph) -> Result<CutSetFamily> {
    check_guard(g.n(), CUTSET_GUARD)?;
    let lists = Lists::new(g);
    let mut pairs = Vec::new();
    for bits in 0..1u64 << g.n() {
        if lists.is_cut_set(bits) {
            pairs.push((VertexSet::from_bits(bits), lists.c(bits)));
        }
    }
    Ok(CutSetFamily::from_pairs(g.n(), pairs))
}

/// Height of `P_S + P_T`.
///
/// The sum is again a prime of the same shape: for a set `W` of surviving vertices, the
/// vertices of `W` are grouped by the relation "lie in a common block of `G - S` or of
/// `G - T`", and each group of size `k` contributes a dimension of `k + 1`. Every other vertex
/// contributes nothing. The dimension of the quotient is the largest total over all `W`
/// avoiding `S ∪ T`, and the height is `2n` minus that.
pub fn oracle_height_sum(g: &Graph, s: VertexSet, t: VertexSet) -> Result<usize> {
    check_guard(g.n(), HEIGHT_GUARD)?;
    let lists = Lists::new(g);
    for x in [s, t] {
        if !x.is_subset(g.vertices()) || !lists.is_cut_set(x.bits()) {
            return Err(Error::NotCutSet { set: x });
        }
    }
    let n = g.n();
    let (ls, _) = lists.components(&lists.removed(s.bits()));
    let (lt, _) = lists.components(&lists.removed(t.bits()));
    let avail = VertexSet::full(n).difference(s.union(t)).bits();
    let mut best = 0;
    // Walk every subset of the available vertices.
    let mut w = avail;
    loop {
        best = best.max(grouped_dimension(n, w, &ls, &lt));
        if w == 0 {
            break;
        }
        w = (w - 1) & avail;
    }
    Ok(2 * n - best)
}

fn grouped_dimension(n: usize, w: u64, ls: &[usize], lt: &[usize]) -> usize {
    let members: Vec<usize> = (0..n).filter(|&i| w >> i & 1 == 1).collect();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut groups = members.len();
    for a in 0..members.len() {
        for b in (a + 1)..members.len() {
            let (u, v) = (members[a], members[b]);
            if ls[u] == ls[v] || lt[u] == lt[v] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    groups -= 1;
                }
            }
        }
    }
    members.len() + groups
}

/// Heights involved in deciding adjacency of two minimal primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeightReport {
    pub height_s: usize,
    pub height_t: usize,
    pub height_sum: usize,
    pub ideal_height: usize,
}

impl HeightReport {
    /// Adjacency in the dual graph: both primes have the height of the ideal and their sum
    /// has height one more.
    pub fn is_edge(&self) -> bool {
        self.height_s == self.ideal_height
            && self.height_t == self.ideal_height
            && self.height_sum == self.ideal_height + 1
    }
}

pub fn oracle_heights(g: &Graph, s: VertexSet, t: VertexSet) -> Result<HeightReport> {
    let height_sum = oracle_height_sum(g, s, t)?;
    let lists = Lists::new(g);
    let n = g.n();
    let height = |x: VertexSet| n + x.len() - lists.c(x.bits());
    let ideal_height = oracle_cut_sets(g)?
        .sets()
        .into_iter()
        .map(height)
        .min()
        .unwrap_or(0);
    Ok(HeightReport {
        height_s: height(s),
        height_t: height(t),
        height_sum,
        ideal_height,
    })
}

/// Dual graph adjacency decided from heights alone.
pub fn oracle_dual_edge(g: &Graph, s: VertexSet, t: VertexSet) -> Result<bool> {
    if s == t {
        return Ok(false);
    }
    Ok(oracle_heights(g, s, t)?.is_edge())
}
