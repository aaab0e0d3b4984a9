//! Graph families, the two gluing operations, semicones, fan graphs, and closed-form cut
//! set predictions for each of them.

use serde::Serialize;

use crate::cutset::{check_unmixed, CutSetFamily};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, Vertex, VertexSet, MAX_VERTICES};

/// The staircase bipartite graph on `2m` vertices with edges `{2i, 2j-1}` for `1 <= i <= j <= m`.
///
/// Vertex `2i` has degree `m - i + 1`, vertex `2j - 1` has degree `j`, and the two leaves are
/// `1` and `2m`.
pub fn make_f(m: usize) -> Result<Graph> {
    if m == 0 || 2 * m > MAX_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "staircase size must be between 1 and {}, got {m}",
            MAX_VERTICES / 2
        )));
    }
    let mut edges = Vec::new();
    for i in 1..=m {
        for j in i..=m {
            edges.push((2 * i, 2 * j - 1));
        }
    }
    Graph::from_edges(2 * m, &edges)
}

/// The two members of the bipartite family built from complete bipartite graphs with two
/// pendant leaves.
///
/// With `square` the graph has `2k` vertices: edges `{1,2}`, `{2k-1,2k}` and `{2i, 2j-1}` for
/// `1 <= i <= k-1`, `2 <= j <= k`. Otherwise it has `2k - 1` vertices: edges `{1,2}`,
/// `{2k-2,2k-1}` and `{2i, 2j-1}` for `1 <= i <= k-1`, `2 <= j <= k-1`. Both are unmixed with a
/// disconnected dual graph; `k >= 4` is required.
pub fn make_m(k: usize, square: bool) -> Result<Graph> {
    if k < 4 || 2 * k > MAX_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "family parameter must be between 4 and {}, got {k}",
            MAX_VERTICES / 2
        )));
    }
    let mut edges = vec![(1, 2)];
    let (n, top_j) = if square {
        edges.push((2 * k - 1, 2 * k));
        (2 * k, k)
    } else {
        edges.push((2 * k - 2, 2 * k - 1));
        (2 * k - 1, k - 1)
    };
    for i in 1..k {
        for j in 2..=top_j {
            edges.push((2 * i, 2 * j - 1));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Result of gluing two graphs.
///
/// `left_map[v - 1]` is the new label of vertex `v` of the left operand, or `None` if it was
/// removed; `right_map` likewise. `junction` is the identified vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glued {
    pub graph: Graph,
    pub left_map: Vec<Option<Vertex>>,
    pub right_map: Vec<Option<Vertex>>,
    pub junction: Vertex,
}

impl Glued {
    pub fn map_left(&self, v: Vertex) -> Option<Vertex> {
        self.left_map.get(v.wrapping_sub(1)).copied().flatten()
    }

    pub fn map_right(&self, v: Vertex) -> Option<Vertex> {
        self.right_map.get(v.wrapping_sub(1)).copied().flatten()
    }

    pub fn map_left_set(&self, s: VertexSet) -> VertexSet {
        s.iter().filter_map(|v| self.map_left(v)).collect()
    }

    pub fn map_right_set(&self, s: VertexSet) -> VertexSet {
        s.iter().filter_map(|v| self.map_right(v)).collect()
    }
}

fn require_leaf(g: &Graph, f: Vertex) -> Result<Vertex> {
    g.check_vertex(f)?;
    if g.degree(f) != 1 {
        return Err(Error::NotALeaf {
            vertex: f,
            degree: g.degree(f),
        });
    }
    Ok(g.neighbors(f).first().expect("leaf has a neighbour"))
}

/// Glues two graphs with labelling fixed as follows: the left operand keeps its labels except
/// that removed vertices are squeezed out; the right operand follows in its own order; the
/// identified vertex keeps its left label.
fn glue(
    g1: &Graph,
    drop1: Option<Vertex>,
    keep1: Vertex,
    g2: &Graph,
    drop2: Option<Vertex>,
    keep2: Vertex,
) -> Result<Glued> {
    let mut left_map = vec![None; g1.n()];
    let mut next = 0;
    for v in 1..=g1.n() {
        if Some(v) != drop1 {
            next += 1;
            left_map[v - 1] = Some(next);
        }
    }
    let junction = left_map[keep1 - 1].expect("kept vertex survives");
    let mut right_map = vec![None; g2.n()];
    for v in 1..=g2.n() {
        if Some(v) == drop2 {
            continue;
        }
        if v == keep2 {
            right_map[v - 1] = Some(junction);
        } else {
            next += 1;
            right_map[v - 1] = Some(next);
        }
    }
    let mut graph = Graph::empty(next)?;
    for (u, v) in g1.edges() {
        if let (Some(a), Some(b)) = (left_map[u - 1], left_map[v - 1]) {
            graph.add_edge(a, b)?;
        }
    }
    for (u, v) in g2.edges() {
        if let (Some(a), Some(b)) = (right_map[u - 1], right_map[v - 1]) {
            graph.add_edge(a, b)?;
        }
    }
    Ok(Glued {
        graph,
        left_map,
        right_map,
        junction,
    })
}

fn check_size(n1: usize, n2: usize, removed: usize) -> Result<()> {
    let n = n1 + n2 - removed;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

/// Identifies leaf `f1` of `g1` with leaf `f2` of `g2`.
pub fn star_glue(g1: &Graph, f1: Vertex, g2: &Graph, f2: Vertex) -> Result<Glued> {
    require_leaf(g1, f1)?;
    require_leaf(g2, f2)?;
    check_size(g1.n(), g2.n(), 1)?;
    glue(g1, None, f1, g2, None, f2)
}

/// Removes leaves `f1`, `f2` and identifies their neighbours, which must both have degree at
/// least 3.
pub fn circ_glue(g1: &Graph, f1: Vertex, g2: &Graph, f2: Vertex) -> Result<Glued> {
    for (g, f) in [(g1, f1), (g2, f2)] {
        let v = require_leaf(g, f)?;
        if g.degree(v) < 3 {
            return Err(Error::DegreeTooSmall {
                vertex: v,
                degree: g.degree(v),
            });
        }
    }
    circ_glue_relaxed(g1, f1, g2, f2)
}

/// The circ operation without the degree condition. The result is in general not unmixed.
pub(crate) fn circ_glue_relaxed(g1: &Graph, f1: Vertex, g2: &Graph, f2: Vertex) -> Result<Glued> {
    let v1 = require_leaf(g1, f1)?;
    let v2 = require_leaf(g2, f2)?;
    check_size(g1.n(), g2.n(), 3)?;
    glue(g1, Some(f1), v1, g2, Some(f2), v2)
}

/// Cut sets of `g1 * g2` from the families of the operands.
///
/// With `v1`, `v2` the neighbours of the glued leaves and `v` the identified vertex, the cut
/// sets are `S1 ∪ S2` for all pairs, plus `S1 ∪ S2 ∪ {v}` for the pairs with `v1 ∉ S1` and
/// `v2 ∉ S2`.
pub fn predict_star(
    glued: &Glued,
    g1: &Graph,
    f1: Vertex,
    fam1: &CutSetFamily,
    g2: &Graph,
    f2: Vertex,
    fam2: &CutSetFamily,
) -> Result<Vec<VertexSet>> {
    let v1 = require_leaf(g1, f1)?;
    let v2 = require_leaf(g2, f2)?;
    let mut out = Vec::with_capacity(2 * fam1.len() * fam2.len());
    for s1 in fam1.sets() {
        let a = glued.map_left_set(s1);
        for s2 in fam2.sets() {
            let b = glued.map_right_set(s2);
            out.push(a.union(b));
            if !s1.contains(v1) && !s2.contains(v2) {
                out.push(a.union(b).with(glued.junction));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A neighbour of degree 2 of the vertex next to leaf `f`, if any.
pub fn degree_two_neighbor(g: &Graph, f: Vertex) -> Option<Vertex> {
    let v = g.neighbors(f).first()?;
    g.neighbors(v).iter().find(|&w| w != f && g.degree(w) == 2)
}

/// Cut sets of `g1 ∘ g2` from the families of the operands.
///
/// Valid when the neighbour `v_i` of each removed leaf has a neighbour of degree 2. Writing `S_i` for cut sets of the operands mapped into the result,
/// the cut sets are the unions avoiding `v`, plus the unions with `S1 ∩ S2 = {v}`.
pub fn predict_circ(
    glued: &Glued,
    g1: &Graph,
    f1: Vertex,
    fam1: &CutSetFamily,
    g2: &Graph,
    f2: Vertex,
    fam2: &CutSetFamily,
) -> Result<Vec<VertexSet>> {
    for (g, f) in [(g1, f1), (g2, f2)] {
        require_leaf(g, f)?;
        if degree_two_neighbor(g, f).is_none() {
            return Err(Error::Unsupported(
                "the glued vertex has no neighbour of degree 2".into(),
            ));
        }
    }
    let v = glued.junction;
    let mut out = Vec::new();
    let left: Vec<VertexSet> = fam1
        .sets()
        .into_iter()
        .map(|s| glued.map_left_set(s))
        .collect();
    let right: Vec<VertexSet> = fam2
        .sets()
        .into_iter()
        .map(|s| glued.map_right_set(s))
        .collect();
    for &a in &left {
        for &b in &right {
            let u = a.union(b);
            if !u.contains(v) || a.intersection(b) == VertexSet::singleton(v) {
                out.push(u);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Cut sets of the staircase graph: `{∅}`, the prefixes `{2, 4, …, 2i}` for `i < m`, and
/// `{2m - 1} ∪ S` for every cut set `S` of the staircase graph one size smaller.
pub fn predict_f(m: usize) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::EMPTY];
    if m >= 2 {
        let mut prefix = VertexSet::EMPTY;
        for i in 1..m {
            prefix.insert(2 * i);
            out.push(prefix);
        }
        for s in predict_f(m - 1) {
            out.push(s.with(2 * m - 1));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Cut sets of [`make_m`].
pub fn predict_m(k: usize, square: bool) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::EMPTY, VertexSet::singleton(2)];
    if square {
        let odd: VertexSet = (2..=k).map(|j| 2 * j - 1).collect();
        let even: VertexSet = (1..k).map(|i| 2 * i).collect();
        let last = 2 * k - 1;
        out.extend([
            VertexSet::singleton(last),
            VertexSet::singleton(2).with(last),
            odd,
            even,
        ]);
    } else {
        let odd: VertexSet = (2..k).map(|j| 2 * j - 1).collect();
        let even: VertexSet = (1..k).map(|i| 2 * i).collect();
        let last = 2 * k - 2;
        out.extend([
            VertexSet::singleton(last),
            VertexSet::singleton(2).with(last),
            odd,
            even,
        ]);
    }
    out.sort();
    out.dedup();
    out
}

/// Fan graph of `K_n` over disjoint vertex lists `W_1, …, W_k`.
///
/// For every list and every prefix `v_1, …, v_h` one new vertex adjacent to exactly that
/// prefix is added. The clique keeps labels `1..=n` and the new vertices follow in list order,
/// shortest prefix first.
pub fn fan_graph(n: usize, sets: &[Vec<Vertex>]) -> Result<Graph> {
    let mut seen = VertexSet::EMPTY;
    for w in sets {
        if w.is_empty() {
            return Err(Error::InvalidArgument("fan sets must be non-empty".into()));
        }
        for &v in w {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if seen.contains(v) {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} appears in more than one fan set"
                )));
            }
            seen.insert(v);
        }
    }
    let total = n + sets.iter().map(Vec::len).sum::<usize>();
    if total > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n: total,
            limit: MAX_VERTICES,
        });
    }
    let mut g = Graph::empty(total)?;
    for u in 1..=n {
        for v in (u + 1)..=n {
            g.add_edge(u, v)?;
        }
    }
    let mut next = n;
    for w in sets {
        for h in 1..=w.len() {
            next += 1;
            for &v in &w[..h] {
                g.add_edge(next, v)?;
            }
        }
    }
    Ok(g)
}

/// Cut sets of [`fan_graph`]: unions over the lists of either nothing or a prefix of length
/// `h`, excluding the whole clique.
pub fn predict_fan(n: usize, sets: &[Vec<Vertex>]) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::EMPTY];
    for w in sets {
        let mut grown = Vec::new();
        for &base in &out {
            let mut prefix = VertexSet::EMPTY;
            for &v in w {
                prefix.insert(v);
                grown.push(base.union(prefix));
            }
        }
        out.extend(grown);
    }
    let full = VertexSet::full(n);
    out.retain(|s| *s != full);
    out.sort();
    out.dedup();
    out
}

/// Semicone over a bipartite graph `H` on `1..=n` with bipartition `V1 ⊔ V2`: a new vertex
/// `n + 1` adjacent to all of `V1` and to a new leaf `n + 2`.
pub fn semicone(h: &Graph, bip: Bipartition) -> Result<Graph> {
    let n = h.n();
    if bip.left.union(bip.right) != h.vertices() || !bip.left.is_disjoint(bip.right) {
        return Err(Error::InvalidArgument(
            "not a bipartition of the vertex set".into(),
        ));
    }
    for (u, v) in h.edges() {
        if bip.left.contains(u) == bip.left.contains(v) {
            return Err(Error::InvalidArgument(format!(
                "edge {{{u},{v}}} lies inside one side of the bipartition"
            )));
        }
    }
    let g = h.with_new_vertex(bip.left)?;
    g.with_new_vertex(VertexSet::singleton(n + 1))
}

/// Cut sets of the semicone `G` over `H`: `∅`, `V1`, `S ∪ {n+1}` for every cut set `S` of `H`,
/// and the cut sets of `H` strictly inside `V1`.
///
/// Valid when `H` is unmixed and the neighbours of its two leaves are adjacent; otherwise
/// [`Error::Unsupported`] is returned.
pub fn predict_semicone(
    h: &Graph,
    bip: Bipartition,
    fam_h: &CutSetFamily,
) -> Result<Vec<VertexSet>> {
    if check_unmixed(fam_h).is_err() {
        return Err(Error::Unsupported("the base graph is not unmixed".into()));
    }
    if bip.left.len() != bip.right.len() {
        return Err(Error::Unsupported(
            "the sides of the bipartition differ in size".into(),
        ));
    }
    let leaves = h.leaves();
    if leaves.len() != 2 {
        return Err(Error::Unsupported(
            "the base graph does not have exactly two leaves".into(),
        ));
    }
    let nb: Vec<Vertex> = leaves
        .iter()
        .map(|f| h.neighbors(f).first().unwrap())
        .collect();
    if nb[0] != nb[1] && !h.has_edge(nb[0], nb[1]) {
        return Err(Error::Unsupported(
            "the neighbours of the leaves are not adjacent".into(),
        ));
    }
    let apex = h.n() + 1;
    let mut out = vec![VertexSet::EMPTY, bip.left];
    for s in fam_h.sets() {
        out.push(s.with(apex));
        if s != bip.left && s.is_subset(bip.left) {
            out.push(s);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Named families with closed-form cut sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Staircase(usize),
    Complete { k: usize, square: bool },
    Fan { n: usize, sets: Vec<Vec<Vertex>> },
}

impl Family {
    pub fn graph(&self) -> Result<Graph> {
        match self {
            Family::Staircase(m) => make_f(*m),
            Family::Complete { k, square } => make_m(*k, *square),
            Family::Fan { n, sets } => fan_graph(*n, sets),
        }
    }
}

/// Predicted cut sets of a named family, with `c(S)` filled in from the built graph.
pub fn predict_cutsets(family: &Family) -> Result<CutSetFamily> {
    let g = family.graph()?;
    let sets = match family {
        Family::Staircase(m) => predict_f(*m),
        Family::Complete { k, square } => predict_m(*k, *square),
        Family::Fan { n, sets } => predict_fan(*n, sets),
    };
    Ok(CutSetFamily::from_sets(&g, sets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::cutset::enumerate_cut_sets;
    use crate::graph::vset;

    #[test]
    fn staircase_shape() {
        let f3 = make_f(3).unwrap();
        assert_eq!(
            f3.edges(),
            vec![(1, 2), (2, 3), (2, 5), (3, 4), (4, 5), (5, 6)]
        );
        let f5 = make_f(5).unwrap();
        for i in 1..=5 {
            assert_eq!(f5.degree(2 * i), 5 - i + 1);
            assert_eq!(f5.degree(2 * i - 1), i);
        }
        assert_eq!(f5.leaves(), vset(&[1, 10]));
        assert!(make_f(0).is_err());
        assert!(make_f(33).is_err());
    }

    #[test]
    fn staircase_prediction_matches_enumeration() {
        for m in 1..=8 {
            let g = make_f(m).unwrap();
            assert_eq!(predict_f(m), enumerate_cut_sets(&g).sets(), "m = {m}");
            assert_eq!(predict_f(m).len(), m * (m + 1) / 2);
        }
    }

    #[test]
    fn complete_family_prediction() {
        for k in 4..=7 {
            for square in [true, false] {
                let g = make_m(k, square).unwrap();
                assert_eq!(predict_m(k, square), enumerate_cut_sets(&g).sets());
            }
        }
        assert_eq!(
            predict_m(4, false),
            vec![
                VertexSet::EMPTY,
                vset(&[2]),
                vset(&[6]),
                vset(&[2, 6]),
                vset(&[3, 5]),
                vset(&[2, 4, 6]),
            ]
        );
        assert!(make_m(3, true).is_err());
    }

    #[test]
    fn star_labelling() {
        let f3 = make_f(3).unwrap();
        let glued = star_glue(&f3, 6, &f3, 1).unwrap();
        assert_eq!(glued.graph.n(), 11);
        assert_eq!(glued.junction, 6);
        assert_eq!(glued.map_right(1), Some(6));
        assert_eq!(glued.map_right(2), Some(7));
        assert!(matches!(
            star_glue(&f3, 2, &f3, 1),
            Err(Error::NotALeaf { .. })
        ));
    }

    #[test]
    fn circ_labelling_and_degree_condition() {
        let f3 = make_f(3).unwrap();
        let f2 = make_f(2).unwrap();
        let glued = circ_glue(&f3, 6, &f2.clone(), 1);
        assert!(matches!(
            glued,
            Err(Error::DegreeTooSmall {
                vertex: 2,
                degree: 2
            })
        ));
        let glued = circ_glue(&f3, 6, &f3, 1).unwrap();
        assert_eq!(glued.graph.n(), 9);
        assert_eq!(glued.junction, 5);
        assert_eq!(glued.map_left(6), None);
        assert_eq!(glued.map_right(2), Some(5));
    }

    #[test]
    fn f3_circ_f2_circ_f3_witness() {
        let f3 = make_f(3).unwrap();
        let f2 = make_f(2).unwrap();
        let a = circ_glue_relaxed(&f3, 6, &f2, 1).unwrap();
        let right_leaf = a.map_right(4).unwrap();
        let b = circ_glue_relaxed(&a.graph, right_leaf, &f3, 1).unwrap();
        let g = b.graph;
        assert_eq!(
            g.edges(),
            vec![
                (1, 2),
                (2, 3),
                (2, 5),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (6, 9),
                (7, 8),
                (8, 9),
                (9, 10)
            ]
        );
        let w = vset(&[3, 5, 6, 8]);
        assert!(crate::cutset::is_cut_set(&g, w));
        assert_eq!(g.c(w), 4);
    }

    #[test]
    fn gluing_predictions_match_enumeration() {
        for m1 in 1..=4 {
            for m2 in 1..=4 {
                let g1 = make_f(m1).unwrap();
                let g2 = make_f(m2).unwrap();
                let (fam1, fam2) = (enumerate_cut_sets(&g1), enumerate_cut_sets(&g2));
                let star = star_glue(&g1, 2 * m1, &g2, 1).unwrap();
                let pred = predict_star(&star, &g1, 2 * m1, &fam1, &g2, 1, &fam2).unwrap();
                assert_eq!(pred, enumerate_cut_sets(&star.graph).sets());
                if m1 >= 3 && m2 >= 3 {
                    let circ = circ_glue(&g1, 2 * m1, &g2, 1).unwrap();
                    let pred = predict_circ(&circ, &g1, 2 * m1, &fam1, &g2, 1, &fam2).unwrap();
                    assert_eq!(pred, enumerate_cut_sets(&circ.graph).sets());
                }
            }
        }
    }

    #[test]
    fn fan_prediction() {
        let cases: Vec<(usize, Vec<Vec<Vertex>>)> = vec![
            (3, vec![vec![1, 2, 3]]),
            (4, vec![vec![1, 2], vec![3, 4]]),
            (5, vec![vec![1], vec![2, 3], vec![4, 5]]),
            (5, vec![vec![2, 4, 5]]),
        ];
        for (n, sets) in cases {
            let fam = predict_cutsets(&Family::Fan {
                n,
                sets: sets.clone(),
            })
            .unwrap();
            let g = fan_graph(n, &sets).unwrap();
            assert_eq!(fam.sets(), enumerate_cut_sets(&g).sets(), "{sets:?}");
        }
        assert!(fan_graph(3, &[vec![1], vec![1]]).is_err());
        assert!(fan_graph(3, &[vec![4]]).is_err());
    }

    #[test]
    fn semicone_of_staircase_is_next_staircase() {
        for m in 1..=6 {
            let h = make_f(m).unwrap();
            let bip = h.bipartition().unwrap();
            for side in [bip, bip.swapped()] {
                let g = semicone(&h, side).unwrap();
                assert_eq!(g.n(), 2 * m + 2);
                assert!(is_isomorphic(&g, &make_f(m + 1).unwrap()));
                let pred = predict_semicone(&h, side, &enumerate_cut_sets(&h)).unwrap();
                assert_eq!(pred, enumerate_cut_sets(&g).sets());
            }
        }
    }

    #[test]
    fn semicone_prediction_needs_adjacent_leaf_neighbours() {
        let f3 = make_f(3).unwrap();
        let h = star_glue(&f3, 6, &f3, 1).unwrap().graph;
        let bip = h.bipartition().unwrap();
        let fam = enumerate_cut_sets(&h);
        assert!(matches!(
            predict_semicone(&h, bip, &fam),
            Err(Error::Unsupported(_))
        ));
    }
}
