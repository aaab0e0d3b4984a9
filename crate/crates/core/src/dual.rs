//! The dual graph of an unmixed binomial edge ideal: one node per minimal prime, with two
//! primes adjacent when their sum has height one more than the ideal.
//!
//! For an unmixed ideal adjacency has a combinatorial description. Order the pair so that
//! `|T| >= |S|`. If `T \ S` has more than one element there is no edge. If `T = S ∪ {t}` there
//! is an edge. Otherwise `T \ S = {t}` with `S ⊄ T`, and the primes are adjacent exactly
//! when `t` is not a cut vertex of `G - S`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::cutset::{check_unmixed, enumerate_cut_sets, CutSetFamily};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Adjacency of `P_S` and `P_T`. Fails when the ideal is not unmixed or either set is not a
/// cut set.
pub fn dual_edge(g: &Graph, s: VertexSet, t: VertexSet) -> Result<bool> {
    let family = enumerate_cut_sets(g);
    require_unmixed(&family)?;
    for x in [s, t] {
        if !family.contains(x) {
            return Err(Error::NotCutSet { set: x });
        }
    }
    Ok(dual_edge_unchecked(g, s, t))
}

fn require_unmixed(family: &CutSetFamily) -> Result<()> {
    check_unmixed(family).map_err(|w| Error::NotUnmixed {
        set: w.set,
        c: w.c,
        expected: w.expected,
    })
}

/// Adjacency rule for two cut sets of an unmixed graph, without checking either assumption.
pub fn dual_edge_unchecked(g: &Graph, s: VertexSet, t: VertexSet) -> bool {
    if s == t {
        return false;
    }
    let (s, t) = if t.len() >= s.len() { (s, t) } else { (t, s) };
    let extra = t.difference(s);
    if extra.len() != 1 {
        return false;
    }
    if s.is_subset(t) {
        return true;
    }
    let v = extra.first().expect("one element");
    g.c(s.with(v)) <= g.c(s)
}

/// Dual graph with nodes in canonical cut set order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: Vec<VertexSet>,
    /// Index pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Height of the ideal, the Hirsch bound for the diameter.
    pub height: usize,
    adj: Vec<Vec<usize>>,
}

/// Builds the dual graph. Fails with [`Error::NotUnmixed`] when the ideal is mixed.
pub fn build_dual(g: &Graph) -> Result<DualGraph> {
    let family = enumerate_cut_sets(g);
    build_dual_from(g, &family)
}

/// Builds the dual graph from an already enumerated family.
///
/// Candidates for neighbours of `S` are the sets that add one vertex to `S` or swap one
/// element of `S` for an outside vertex; all others differ in at least two elements.
pub fn build_dual_from(g: &Graph, family: &CutSetFamily) -> Result<DualGraph> {
    require_unmixed(family)?;
    let nodes = family.sets();
    let index: HashMap<VertexSet, usize> = nodes.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let all = g.vertices();
    let mut edges = Vec::new();
    for (i, &s) in nodes.iter().enumerate() {
        let outside = all.difference(s);
        for x in outside {
            if let Some(&j) = index.get(&s.with(x)) {
                edges.push((i, j));
            }
        }
        for y in s {
            let core = s.without(y);
            for x in outside {
                if let Some(&j) = index.get(&core.with(x)) {
                    if j > i && dual_edge_unchecked(g, s, core.with(x)) {
                        edges.push((i, j));
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut adj = vec![Vec::new(); nodes.len()];
    for &(i, j) in &edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    Ok(DualGraph {
        nodes,
        edges,
        height: g.n() - g.c(VertexSet::EMPTY),
        adj,
    })
}

impl DualGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn is_connected(&self) -> bool {
        self.nodes.is_empty() || self.bfs(0).iter().all(|&d| d != usize::MAX)
    }

    /// Distances from `src`; unreachable nodes get `usize::MAX`.
    pub fn bfs(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.nodes.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Exact diameter, or `None` if the graph is disconnected.
    ///
    /// Uses eccentricity bounds: after a search from `v` with eccentricity `e`, every node `w`
    /// at distance `d` has eccentricity between `max(d, e - d)` and `e + d`. Nodes whose
    /// bounds can no longer change the answer are dropped, which usually leaves very few
    /// searches to run.
    pub fn diameter(&self) -> Option<usize> {
        let n = self.nodes.len();
        if n == 0 {
            return Some(0);
        }
        let mut lower = vec![0usize; n];
        let mut upper = vec![usize::MAX; n];
        let mut candidates: Vec<usize> = (0..n).collect();
        let mut best = 0usize;
        let mut pick_high = true;
        while !candidates.is_empty() {
            let v = if pick_high {
                *candidates
                    .iter()
                    .max_by_key(|&&i| (upper[i], std::cmp::Reverse(i)))?
            } else {
                *candidates.iter().min_by_key(|&&i| (lower[i], i))?
            };
            pick_high = !pick_high;
            let dist = self.bfs(v);
            let ecc = *dist.iter().max()?;
            if ecc == usize::MAX {
                return None;
            }
            for (w, &d) in dist.iter().enumerate() {
                lower[w] = lower[w].max(d).max(ecc - d);
                upper[w] = upper[w].min(ecc + d);
                best = best.max(lower[w]);
            }
            candidates.retain(|&w| upper[w] > best && lower[w] < upper[w]);
        }
        Some(best)
    }

    /// Diameter by a breadth-first search from every node.
    pub fn diameter_all_pairs(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.nodes.len() {
            let ecc = *self.bfs(v).iter().max().expect("non-empty");
            if ecc == usize::MAX {
                return None;
            }
            best = best.max(ecc);
        }
        Some(best)
    }

    /// Hirsch bound: the diameter is at most the height of the ideal.
    pub fn hirsch(&self) -> HirschReport {
        let diameter = self.diameter();
        HirschReport {
            diameter,
            bound: self.height,
            holds: diameter.is_some_and(|d| d <= self.height),
        }
    }

    /// Graphviz rendering, nodes labelled `P_{…}` by their cut sets.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph D {\n");
        for (i, set) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{}\"];\n", prime_label(*set)));
        }
        for &(i, j) in &self.edges {
            s.push_str(&format!("  n{i} -- n{j};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn report(&self) -> DualReport {
        let hirsch = self.hirsch();
        DualReport {
            nodes: self.nodes.clone(),
            edges: self.edges.clone(),
            connected: self.is_connected(),
            diameter: hirsch.diameter,
            hirsch,
        }
    }
}

/// `P_{2,6}` style label; the empty set is `P_∅`.
pub fn prime_label(s: VertexSet) -> String {
    if s.is_empty() {
        "P_∅".to_string()
    } else {
        let inner: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        format!("P_{{{}}}", inner.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HirschReport {
    pub diameter: Option<usize>,
    pub bound: usize,
    pub holds: bool,
}

/// Checks the Hirsch bound for the dual graph of `g`.
pub fn hirsch_check(g: &Graph) -> Result<HirschReport> {
    Ok(build_dual(g)?.hirsch())
}

/// Serialisable summary of a dual graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualReport {
    pub nodes: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
    pub diameter: Option<usize>,
    pub hirsch: HirschReport,
}
