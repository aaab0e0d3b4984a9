//! Simple undirected graphs on vertices `1..=n` with `n <= 64`, stored as adjacency bitsets.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Vertex label, 1-based.
pub type Vertex = usize;

/// Largest supported number of vertices.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices packed into a `u64`; bit `v - 1` stands for vertex `v`.
///
/// The ordering is by size first and then lexicographic on the sorted member list, so
/// sorting a list of sets gives the canonical order used in all outputs.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// All vertices `1..=n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1u64 << (v - 1))
    }

    pub fn contains(self, v: Vertex) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn insert(&mut self, v: Vertex) {
        self.0 |= Self::singleton(v).0;
    }

    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !Self::singleton(v).0;
    }

    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | Self::singleton(v).0)
    }

    pub fn without(self, v: Vertex) -> Self {
        VertexSet(self.0 & !Self::singleton(v).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Members in increasing order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

/// Iterator over the members of a [`VertexSet`] in increasing order.
#[derive(Clone)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Vertex>::deserialize(deserializer)?;
        if let Some(&bad) = v.iter().find(|&&x| x == 0 || x > MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!(
                "vertex {bad} out of range"
            )));
        }
        Ok(v.into_iter().collect())
    }
}

/// Shorthand for building a [`VertexSet`] from a slice of labels.
pub fn vset(vs: &[Vertex]) -> VertexSet {
    vs.iter().copied().collect()
}

/// A bipartition `V1 ⊔ V2` of a bipartite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Bipartition {
    pub fn swapped(self) -> Self {
        Bipartition {
            left: self.right,
            right: self.left,
        }
    }
}

/// A simple undirected graph on `1..=n`, immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                limit: MAX_VERTICES,
            });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from neighbourhood bitsets, `adj[v - 1] = N(v)`.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self> {
        let n = adj.len();
        let mut g = Graph::empty(n)?;
        for (i, nb) in adj.iter().enumerate() {
            for w in nb.iter() {
                g.add_edge(i + 1, w)?;
            }
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u - 1] |= 1 << (v - 1);
        self.adj[v - 1] |= 1 << (u - 1);
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    pub(crate) fn check_set(&self, s: VertexSet) -> Result<()> {
        if !s.is_subset(self.vertices()) {
            let bad = s.difference(self.vertices()).first().unwrap_or(0);
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                n: self.n,
            });
        }
        Ok(())
    }

    /// A copy of this graph with one extra vertex `n + 1` adjacent to `nbrs`.
    pub fn with_new_vertex(&self, nbrs: VertexSet) -> Result<Self> {
        self.check_set(nbrs)?;
        let mut g = Graph::empty(self.n + 1)?;
        g.adj[..self.n].copy_from_slice(&self.adj);
        for w in nbrs {
            g.add_edge(self.n + 1, w)?;
        }
        Ok(g)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u >= 1 && u <= self.n && VertexSet(self.adj[u - 1]).contains(v)
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        VertexSet(self.adj[v - 1])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    /// `N(X)`: vertices outside `X` adjacent to some vertex of `X`.
    pub fn neighborhood_of(&self, x: VertexSet) -> VertexSet {
        let mut acc = 0u64;
        for v in x {
            acc |= self.adj[v - 1];
        }
        VertexSet(acc).difference(x)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 1..=self.n {
            for v in VertexSet(self.adj[u - 1]).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Vertices of degree one.
    pub fn leaves(&self) -> VertexSet {
        (1..=self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// A vertex is free when its neighbourhood is a clique, i.e. it lies in one maximal clique.
    pub fn is_free(&self, v: Vertex) -> bool {
        let nb = self.neighbors(v);
        nb.iter()
            .all(|u| nb.without(u).is_subset(self.neighbors(u)))
    }

    pub fn free_vertices(&self) -> VertexSet {
        (1..=self.n).filter(|&v| self.is_free(v)).collect()
    }

    /// Connected components of the induced subgraph on `mask`, ordered by smallest vertex.
    pub fn components_within(&self, mask: VertexSet) -> Vec<VertexSet> {
        let mut rest = mask.0;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let comp = self.reach(start, mask.0);
            out.push(VertexSet(comp));
            rest &= !comp;
        }
        out
    }

    /// Component of `G[mask]` containing the vertices of `seed`.
    fn reach(&self, seed: u64, mask: u64) -> u64 {
        let mut comp = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let i = f.trailing_zeros() as usize;
                next |= self.adj[i];
                f &= f - 1;
            }
            frontier = next & mask & !comp;
            comp |= frontier;
        }
        comp
    }

    /// Component of `G[mask]` containing `v`.
    pub fn component_of(&self, v: Vertex, mask: VertexSet) -> VertexSet {
        VertexSet(self.reach(VertexSet::singleton(v).0, mask.0))
    }

    /// Number of connected components of `G[mask]`.
    pub fn count_components_within(&self, mask: VertexSet) -> usize {
        let mut rest = mask.0;
        let mut k = 0;
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            rest &= !self.reach(start, mask.0);
            k += 1;
        }
        k
    }

    /// Components of `G - S`.
    pub fn components_without(&self, s: VertexSet) -> Vec<VertexSet> {
        self.components_within(self.vertices().difference(s))
    }

    /// Components of the whole graph.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// `c(S)`: the number of connected components of `G - S`.
    pub fn c(&self, s: VertexSet) -> usize {
        self.count_components_within(self.vertices().difference(s))
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.c(VertexSet::EMPTY) == 1
    }

    /// A proper 2-colouring if the graph is bipartite. Every component is coloured from its
    /// smallest vertex, which goes to the left side.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut left = 0u64;
        let mut right = 0u64;
        for comp in self.components() {
            let start = comp.0 & comp.0.wrapping_neg();
            let mut seen = start;
            let mut frontier = start;
            let mut side_left = true;
            while frontier != 0 {
                if side_left {
                    left |= frontier;
                } else {
                    right |= frontier;
                }
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let i = f.trailing_zeros() as usize;
                    next |= self.adj[i];
                    f &= f - 1;
                }
                frontier = next & !seen;
                seen |= next;
                side_left = !side_left;
            }
        }
        for u in VertexSet(left) {
            if self.adj[u - 1] & left != 0 {
                return None;
            }
        }
        for u in VertexSet(right) {
            if self.adj[u - 1] & right != 0 {
                return None;
            }
        }
        Some(Bipartition {
            left: VertexSet(left),
            right: VertexSet(right),
        })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.c(VertexSet::singleton(v)) > self.c(VertexSet::EMPTY)
    }

    /// Vertices whose removal increases the number of components.
    pub fn cut_vertices(&self) -> VertexSet {
        let base = self.c(VertexSet::EMPTY);
        (1..=self.n)
            .filter(|&v| self.c(VertexSet::singleton(v)) > base)
            .collect()
    }

    /// Whether `t` is a cut vertex of `G - S`, i.e. `c(S ∪ {t}) > c(S)`.
    pub fn is_cut_vertex_in_induced(&self, s: VertexSet, t: Vertex) -> Result<bool> {
        self.check_set(s)?;
        self.check_vertex(t)?;
        if s.contains(t) {
            return Err(Error::InvalidArgument(format!(
                "vertex {t} belongs to the removed set {s}"
            )));
        }
        Ok(self.c(s.with(t)) > self.c(s))
    }

    /// The subgraph induced on `keep`, relabelled `1..=|keep|` in increasing order.
    /// The second component maps new labels back: `map[i]` is the original label of `i + 1`.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        self.check_set(keep)?;
        let map = keep.to_vec();
        let mut pos = [0usize; MAX_VERTICES + 1];
        for (i, &v) in map.iter().enumerate() {
            pos[v] = i + 1;
        }
        let mut h = Graph::empty(map.len())?;
        for (i, &v) in map.iter().enumerate() {
            for w in self.neighbors(v).intersection(keep) {
                h.adj[i] |= 1 << (pos[w] - 1);
            }
        }
        Ok((h, map))
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v - 1]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        let image: VertexSet = perm.iter().copied().collect();
        if image != self.vertices() || perm.iter().any(|&p| p == 0 || p > self.n) {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        let mut h = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            h.add_edge(perm[u - 1], perm[v - 1])?;
        }
        Ok(h)
    }

    /// Graphviz rendering with numeric labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 1..=self.n {
            s.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {u} -- {v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m34() -> Graph {
        Graph::from_edges(
            7,
            &[
                (1, 2),
                (2, 3),
                (2, 5),
                (3, 4),
                (4, 5),
                (6, 3),
                (6, 5),
                (6, 7),
            ],
        )
        .unwrap()
    }

    fn f3() -> Graph {
        Graph::from_edges(6, &[(1, 2), (2, 3), (2, 5), (3, 4), (4, 5), (5, 6)]).unwrap()
    }

    #[test]
    fn vertex_set_order_is_size_then_lex() {
        let mut sets = vec![
            vset(&[2, 4]),
            vset(&[5]),
            VertexSet::EMPTY,
            vset(&[1, 6]),
            vset(&[2]),
        ];
        sets.sort();
        assert_eq!(
            sets,
            vec![
                VertexSet::EMPTY,
                vset(&[2]),
                vset(&[5]),
                vset(&[1, 6]),
                vset(&[2, 4])
            ]
        );
    }

    #[test]
    fn vertex_set_display_and_serde() {
        let s = vset(&[3, 1, 64]);
        assert_eq!(s.to_string(), "{1,3,64}");
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3,64]");
        let back: VertexSet = serde_json::from_str("[64,3,1]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<VertexSet>("[0]").is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(3, &[(1, 4)]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(2, 2)]),
            Err(Error::SelfLoop(2))
        ));
        assert!(Graph::empty(65).is_err());
        assert!(Graph::empty(64).is_ok());
    }

    #[test]
    fn components_after_removal() {
        let g = m34();
        let comps = g.components_without(vset(&[3, 5]));
        assert_eq!(comps, vec![vset(&[1, 2]), vset(&[4]), vset(&[6, 7])]);
        assert_eq!(g.c(vset(&[3, 5])), 3);
        let comps = g.components_without(vset(&[2, 4, 6]));
        assert_eq!(comps, vec![vset(&[1]), vset(&[3]), vset(&[5]), vset(&[7])]);
    }

    #[test]
    fn leaves_and_free_vertices() {
        let g = f3();
        assert_eq!(g.leaves(), vset(&[1, 6]));
        assert_eq!(g.free_vertices(), vset(&[1, 6]));
        let tri = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(tri.free_vertices(), vset(&[1, 2, 3]));
    }

    #[test]
    fn bipartition_of_f3() {
        let b = f3().bipartition().unwrap();
        assert_eq!(b.left, vset(&[1, 3, 5]));
        assert_eq!(b.right, vset(&[2, 4, 6]));
        let tri = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(tri.bipartition().is_none());
    }

    #[test]
    fn cut_vertices_of_f3() {
        assert_eq!(f3().cut_vertices(), vset(&[2, 5]));
        let g = f3();
        assert!(g.is_cut_vertex_in_induced(vset(&[2]), 5).unwrap());
        assert!(!g.is_cut_vertex_in_induced(vset(&[2]), 3).unwrap());
        assert!(g.is_cut_vertex_in_induced(vset(&[2]), 2).is_err());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = f3();
        let (h, map) = g.induced_subgraph(vset(&[2, 3, 4, 5])).unwrap();
        assert_eq!(map, vec![2, 3, 4, 5]);
        assert_eq!(h.edges(), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
    }

    #[test]
    fn relabel_checks_permutation() {
        let g = f3();
        let h = g.relabel(&[6, 5, 4, 3, 2, 1]).unwrap();
        assert_eq!(h, g);
        assert!(g.relabel(&[1, 1, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn neighborhood_of_set() {
        let g = m34();
        assert_eq!(g.neighborhood_of(vset(&[3])), vset(&[2, 4, 6]));
        assert_eq!(g.neighborhood_of(vset(&[3, 5])), vset(&[2, 4, 6]));
    }
}
