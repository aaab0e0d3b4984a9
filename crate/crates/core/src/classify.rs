//! Cohen-Macaulay classification.
//!
//! For bipartite graphs the binomial edge ideal is Cohen-Macaulay exactly when the dual graph
//! is connected, and exactly when the graph is built from staircase graphs by the `*` and `o`
//! operations. The classifier computes the first criterion, searches for a decomposition as a
//! certificate, and records whether both agree with the peeling criterion.

use std::fmt;

use serde::Serialize;

use crate::canon::is_isomorphic;
use crate::construct::make_f;
use crate::cutset::{check_peeling, check_unmixed, enumerate_cut_sets, UnmixedWitness};
use crate::dsl::{elaborate, BlockExpr};
use crate::dual::{build_dual_from, HirschReport};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::graph6;

/// A match of a graph with a staircase graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseMatch {
    pub m: usize,
    /// `map[i]` is the vertex of the input matched with staircase vertex `i + 1`.
    pub map: Vec<Vertex>,
}

/// Recognises staircase graphs.
///
/// Both sides of the bipartition must have `m` vertices with degrees exactly `1..=m`. Degrees
/// then force the matching: on the side of odd staircase vertices degree `j` goes to `2j - 1`,
/// on the other side degree `d` goes to `2(m - d + 1)`. Both side assignments are tried.
pub fn is_staircase(g: &Graph) -> Option<StaircaseMatch> {
    let n = g.n();
    if n == 0 || n % 2 == 1 || !g.is_connected() {
        return None;
    }
    let m = n / 2;
    if g.edge_count() != m * (m + 1) / 2 {
        return None;
    }
    let bip = g.bipartition()?;
    if bip.left.len() != m {
        return None;
    }
    let f = make_f(m).ok()?;
    for (odd, even) in [(bip.left, bip.right), (bip.right, bip.left)] {
        let mut map = vec![0; n];
        let mut ok = true;
        for v in odd {
            let d = g.degree(v);
            let slot = 2 * d - 1;
            if d == 0 || d > m || map[slot - 1] != 0 {
                ok = false;
                break;
            }
            map[slot - 1] = v;
        }
        for v in even {
            if !ok {
                break;
            }
            let d = g.degree(v);
            if d == 0 || d > m || map[2 * (m - d + 1) - 1] != 0 {
                ok = false;
                break;
            }
            map[2 * (m - d + 1) - 1] = v;
        }
        if ok
            && f.edges()
                .iter()
                .all(|&(a, b)| g.has_edge(map[a - 1], map[b - 1]))
        {
            return Some(StaircaseMatch { m, map });
        }
    }
    None
}

/// One staircase factor placed in the host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub m: usize,
    /// `map[i]` is the host label of staircase vertex `i + 1`. Labels above the host size
    /// stand for leaves removed by an `o` gluing.
    pub map: Vec<Vertex>,
}

impl Factor {
    fn left_leaf(&self) -> Vertex {
        self.map[0]
    }

    fn right_leaf(&self) -> Vertex {
        self.map[2 * self.m - 1]
    }

    /// The same factor read through the reflection `x -> 2m + 1 - x`.
    fn reflected(&self) -> Factor {
        Factor {
            m: self.m,
            map: self.map.iter().rev().copied().collect(),
        }
    }
}

/// Staircase factors joined by `o`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub factors: Vec<Factor>,
}

/// A decomposition `G = B_1 * B_2 * … * B_k` with each block an `o` chain of staircase graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCertificate {
    pub n: usize,
    pub chains: Vec<Chain>,
}

impl BlockCertificate {
    /// Staircase sizes, one list per chain.
    pub fn shape(&self) -> Vec<Vec<usize>> {
        self.chains
            .iter()
            .map(|c| c.factors.iter().map(|f| f.m).collect())
            .collect()
    }

    /// Vertices identified by the `*` operations, in order.
    pub fn star_junctions(&self) -> Vec<Vertex> {
        self.chains
            .windows(2)
            .map(|w| w[0].factors.last().expect("non-empty chain").right_leaf())
            .collect()
    }

    /// Vertices identified by the `o` operations, in order.
    pub fn circ_junctions(&self) -> Vec<Vertex> {
        self.chains
            .iter()
            .flat_map(|c| c.factors.windows(2).map(|w| w[0].map[2 * w[0].m - 2]))
            .collect()
    }

    pub fn to_expr(&self) -> Option<BlockExpr> {
        self.chains
            .iter()
            .map(|c| {
                c.factors
                    .iter()
                    .map(|f| BlockExpr::F(f.m))
                    .reduce(BlockExpr::circ)
                    .expect("non-empty chain")
            })
            .reduce(BlockExpr::star)
    }

    /// Union of the factor edges with removed leaves dropped.
    pub fn reconstructed_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut edges = Vec::new();
        for f in self.chains.iter().flat_map(|c| &c.factors) {
            let stair = make_f(f.m).expect("valid size");
            for (a, b) in stair.edges() {
                let (u, v) = (f.map[a - 1], f.map[b - 1]);
                if u <= self.n && v <= self.n {
                    edges.push((u.min(v), u.max(v)));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// Checks the certificate against the graph: the factor edges must give exactly the edge
    /// set, and the graph built from the expression must be isomorphic to it.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        if self.n != g.n() {
            return Err(format!(
                "certificate is for {} vertices, graph has {}",
                self.n,
                g.n()
            ));
        }
        if self.reconstructed_edges() != g.edges() {
            return Err("factor edges do not reproduce the edge set".into());
        }
        match self.to_expr() {
            None if g.n() == 1 => Ok(()),
            None => Err("empty certificate for a graph with more than one vertex".into()),
            Some(expr) => {
                let built = elaborate(&expr).map_err(|e| e.to_string())?;
                if is_isomorphic(&built.graph, g) {
                    Ok(())
                } else {
                    Err(format!(
                        "{expr} does not build a graph isomorphic to the input"
                    ))
                }
            }
        }
    }

    fn left_leaf(chains: &[Chain]) -> Option<Vertex> {
        chains.first().map(|c| c.factors[0].left_leaf())
    }

    fn right_leaf(chains: &[Chain]) -> Option<Vertex> {
        chains
            .last()
            .map(|c| c.factors.last().expect("non-empty").right_leaf())
    }
}

fn reversed(chains: Vec<Chain>) -> Vec<Chain> {
    chains
        .into_iter()
        .rev()
        .map(|c| Chain {
            factors: c.factors.into_iter().rev().map(|f| f.reflected()).collect(),
        })
        .collect()
}

/// Why a graph has no decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub kind: RefutationKind,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefutationKind {
    NotBipartite,
    Disconnected,
    NoCutVertex,
    CutVerticesNotAdjacent,
    NotStaircase,
    CutVertexSplitsBadly,
    NoStarOrCircSplit,
}

impl fmt::Display for RefutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RefutationKind::NotBipartite => "the graph is not bipartite",
            RefutationKind::Disconnected => "the graph is disconnected",
            RefutationKind::NoCutVertex => {
                "a bipartite Cohen-Macaulay graph on at least 3 vertices has a cut vertex"
            }
            RefutationKind::CutVerticesNotAdjacent => {
                "with exactly two cut vertices they must be adjacent"
            }
            RefutationKind::NotStaircase => {
                "with exactly two adjacent cut vertices the graph must be a staircase graph"
            }
            RefutationKind::CutVertexSplitsBadly => {
                "removing a cut vertex must leave exactly two components"
            }
            RefutationKind::NoStarOrCircSplit => {
                "the cut vertex does not split the graph as a * or o gluing"
            }
        })
    }
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.detail)
    }
}

fn refute(kind: RefutationKind, detail: String) -> Refutation {
    Refutation { kind, detail }
}

/// Decomposes a connected bipartite graph into staircase graphs glued by `*` and `o`.
///
/// The search splits at cut vertices. With exactly two cut vertices the graph has to be a
/// staircase graph. Otherwise a cut vertex `v` not next to a leaf is removed, leaving two
/// sides. If `v` is a leaf of both sides the graph is their `*` gluing at `v`; if it is a
/// leaf of neither, each side gets a new leaf at `v` and the graph is their `o` gluing. If
/// `v` is a leaf of one side only, the split moves to its neighbour `w` on that side, which
/// then has to be a leaf of both parts. New leaves get labels above `n`.
pub fn decompose(g: &Graph) -> Result<BlockCertificate, Refutation> {
    if !g.is_bipartite() {
        return Err(refute(RefutationKind::NotBipartite, String::new()));
    }
    if !g.is_connected() {
        return Err(refute(
            RefutationKind::Disconnected,
            format!("{} components", g.c(VertexSet::EMPTY)),
        ));
    }
    let mut d = Decomposer {
        next_label: g.n() + 1,
    };
    let labels: Vec<Vertex> = (1..=g.n()).collect();
    let chains = d.run(g, &labels)?;
    Ok(BlockCertificate { n: g.n(), chains })
}

struct Decomposer {
    next_label: Vertex,
}

impl Decomposer {
    fn run(&mut self, g: &Graph, labels: &[Vertex]) -> Result<Vec<Chain>, Refutation> {
        let n = g.n();
        let global = |s: VertexSet| -> Vec<Vertex> { s.iter().map(|v| labels[v - 1]).collect() };
        if n == 1 {
            return Ok(Vec::new());
        }
        if n == 2 {
            return Ok(vec![Chain {
                factors: vec![Factor {
                    m: 1,
                    map: vec![labels[0], labels[1]],
                }],
            }]);
        }
        let cut = g.cut_vertices();
        if cut.is_empty() {
            return Err(refute(RefutationKind::NoCutVertex, String::new()));
        }
        if cut.len() == 2 {
            let pair = cut.to_vec();
            if !g.has_edge(pair[0], pair[1]) {
                return Err(refute(
                    RefutationKind::CutVerticesNotAdjacent,
                    format!("cut vertices {:?}", global(cut)),
                ));
            }
            let Some(stair) = is_staircase(g) else {
                return Err(refute(
                    RefutationKind::NotStaircase,
                    format!("part on vertices {:?}", global(g.vertices())),
                ));
            };
            return Ok(vec![Chain {
                factors: vec![Factor {
                    m: stair.m,
                    map: stair.map.iter().map(|&v| labels[v - 1]).collect(),
                }],
            }]);
        }
        let leaf_nbrs = g.neighborhood_of(g.leaves());
        let v = cut
            .iter()
            .find(|&v| !leaf_nbrs.contains(v))
            .or_else(|| cut.first())
            .expect("non-empty");
        let comps = g.components_without(VertexSet::singleton(v));
        if comps.len() != 2 {
            return Err(refute(
                RefutationKind::CutVertexSplitsBadly,
                format!(
                    "removing {} leaves {} components",
                    labels[v - 1],
                    comps.len()
                ),
            ));
        }
        let deg: Vec<usize> = comps
            .iter()
            .map(|c| g.neighbors(v).intersection(*c).len())
            .collect();
        match (deg[0] == 1, deg[1] == 1) {
            (true, true) => {
                let a = self.part(g, labels, comps[0].with(v), None)?;
                let b = self.part(g, labels, comps[1].with(v), None)?;
                star_join(a, b, labels[v - 1])
            }
            (false, false) => {
                let wa = self.fresh();
                let wb = self.fresh();
                let a = self.part(g, labels, comps[0].with(v), Some((v, wa)))?;
                let b = self.part(g, labels, comps[1].with(v), Some((v, wb)))?;
                circ_join(a, wa, b, wb)
            }
            (leaf0, _) => {
                let (leaf_side, other) = if leaf0 {
                    (comps[0], comps[1])
                } else {
                    (comps[1], comps[0])
                };
                let w = g
                    .neighbors(v)
                    .intersection(leaf_side)
                    .first()
                    .expect("one neighbour");
                if leaf_side.len() < 2 || g.neighbors(w).intersection(leaf_side).len() != 1 {
                    return Err(refute(
                        RefutationKind::NoStarOrCircSplit,
                        format!("at vertex {}", labels[v - 1]),
                    ));
                }
                let a = self.part(g, labels, other.with(v).with(w), None)?;
                let b = self.part(g, labels, leaf_side, None)?;
                star_join(a, b, labels[w - 1])
            }
        }
    }

    fn fresh(&mut self) -> Vertex {
        let l = self.next_label;
        self.next_label += 1;
        l
    }

    /// Decomposes `G[keep]`, optionally with a new leaf with label `whisker.1` at `whisker.0`.
    fn part(
        &mut self,
        g: &Graph,
        labels: &[Vertex],
        keep: VertexSet,
        whisker: Option<(Vertex, Vertex)>,
    ) -> Result<Vec<Chain>, Refutation> {
        let (mut h, map) = g.induced_subgraph(keep).expect("subset of the vertex set");
        let mut sub_labels: Vec<Vertex> = map.iter().map(|&v| labels[v - 1]).collect();
        if let Some((at, label)) = whisker {
            let local = map
                .iter()
                .position(|&x| x == at)
                .expect("attachment point kept")
                + 1;
            h = h
                .with_new_vertex(VertexSet::singleton(local))
                .map_err(|e| refute(RefutationKind::NoStarOrCircSplit, e.to_string()))?;
            sub_labels.push(label);
        }
        self.run(&h, &sub_labels)
    }
}

fn orient(chains: Vec<Chain>, leaf: Vertex, at_end: bool) -> Result<Vec<Chain>, Refutation> {
    let (want, other) = if at_end {
        (
            BlockCertificate::right_leaf(&chains),
            BlockCertificate::left_leaf(&chains),
        )
    } else {
        (
            BlockCertificate::left_leaf(&chains),
            BlockCertificate::right_leaf(&chains),
        )
    };
    if want == Some(leaf) {
        Ok(chains)
    } else if other == Some(leaf) {
        Ok(reversed(chains))
    } else {
        Err(refute(
            RefutationKind::NoStarOrCircSplit,
            format!("vertex {leaf} is not an end of the decomposed part"),
        ))
    }
}

fn star_join(a: Vec<Chain>, b: Vec<Chain>, at: Vertex) -> Result<Vec<Chain>, Refutation> {
    let mut a = orient(a, at, true)?;
    a.extend(orient(b, at, false)?);
    Ok(a)
}

fn circ_join(
    a: Vec<Chain>,
    wa: Vertex,
    b: Vec<Chain>,
    wb: Vertex,
) -> Result<Vec<Chain>, Refutation> {
    let mut a = orient(a, wa, true)?;
    let mut b = orient(b, wb, false)?.into_iter();
    let first = b.next().expect("non-empty part");
    a.last_mut()
        .expect("non-empty part")
        .factors
        .extend(first.factors);
    a.extend(b);
    Ok(a)
}

/// Overall answer of the classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CohenMacaulay,
    NotCohenMacaulay,
    /// The graph is not bipartite; dual graph connectivity does not decide the question.
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CohenMacaulay => "Cohen-Macaulay",
            Verdict::NotCohenMacaulay => "not Cohen-Macaulay",
            Verdict::NotApplicable => "not applicable (graph is not bipartite)",
        })
    }
}

/// Everything the classifier found out about a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub edges: usize,
    pub graph6: String,
    pub bipartite: bool,
    pub connected: bool,
    pub cut_sets: usize,
    pub height: usize,
    pub unmixed: bool,
    pub unmixed_witness: Option<UnmixedWitness>,
    pub dual_connected: bool,
    pub diameter: Option<usize>,
    pub hirsch: Option<HirschReport>,
    pub peeling: bool,
    pub peeling_witness: Option<VertexSet>,
    pub certificate: Option<BlockCertificate>,
    pub expression: Option<String>,
    pub refutation: Option<Refutation>,
    /// Reports for the connected components when the graph is disconnected.
    pub components: Vec<ClassificationReport>,
    pub verdict: Verdict,
    /// Whether dual connectivity, unmixedness with peeling, and the decomposition agree.
    pub equivalence_holds: bool,
    pub notes: Vec<String>,
}

/// Runs the full classification.
pub fn classify(g: &Graph) -> ClassificationReport {
    let family = enumerate_cut_sets(g);
    let bipartite = g.is_bipartite();
    let connected = g.is_connected();
    let unmixed_check = check_unmixed(&family);
    let peeling_check = check_peeling(&family);
    let unmixed = unmixed_check.is_ok();
    let mut notes = Vec::new();

    let (dual_connected, hirsch) = match build_dual_from(g, &family) {
        Ok(dual) => {
            let h = dual.hirsch();
            (h.diameter.is_some(), Some(h))
        }
        Err(_) => (family.len() <= 1, None),
    };

    let mut report = ClassificationReport {
        n: g.n(),
        edges: g.edge_count(),
        graph6: graph6::encode(g),
        bipartite,
        connected,
        cut_sets: family.len(),
        height: family.min_height(),
        unmixed,
        unmixed_witness: unmixed_check.err(),
        dual_connected,
        diameter: hirsch.and_then(|h| h.diameter),
        hirsch,
        peeling: peeling_check.is_ok(),
        peeling_witness: peeling_check.err(),
        certificate: None,
        expression: None,
        refutation: None,
        components: Vec::new(),
        verdict: Verdict::NotApplicable,
        equivalence_holds: true,
        notes: Vec::new(),
    };

    if !bipartite {
        notes.push(
            "dual graph connectivity does not imply Cohen-Macaulayness for non-bipartite graphs"
                .to_string(),
        );
        report.notes = notes;
        return report;
    }

    if !connected {
        let comps: Vec<ClassificationReport> = g
            .components()
            .into_iter()
            .map(|c| classify(&g.induced_subgraph(c).expect("component").0))
            .collect();
        let all_cm = comps.iter().all(|r| r.verdict == Verdict::CohenMacaulay);
        report.verdict = if all_cm {
            Verdict::CohenMacaulay
        } else {
            Verdict::NotCohenMacaulay
        };
        report.equivalence_holds =
            comps.iter().all(|r| r.equivalence_holds) && all_cm == (unmixed && report.peeling);
        notes.push("Cohen-Macaulay exactly when every component is".to_string());
        report.components = comps;
        report.notes = notes;
        return report;
    }

    match decompose(g) {
        Ok(cert) => match cert.verify(g) {
            Ok(()) => {
                report.expression = cert.to_expr().map(|e| e.to_string());
                report.certificate = Some(cert);
            }
            Err(msg) => notes.push(format!("decomposition failed verification: {msg}")),
        },
        Err(r) => report.refutation = Some(r),
    }
    let certified = report.certificate.is_some();
    report.equivalence_holds =
        dual_connected == (unmixed && report.peeling) && dual_connected == certified;
    report.verdict = if dual_connected {
        Verdict::CohenMacaulay
    } else {
        Verdict::NotCohenMacaulay
    };
    if !report.equivalence_holds {
        notes.push(format!(
            "criteria disagree: dual connected {dual_connected}, unmixed {unmixed}, peeling {}, certificate {certified}",
            report.peeling
        ));
    }
    report.notes = notes;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::make_m;
    use crate::dsl::parse_expr;

    fn build(text: &str) -> Graph {
        elaborate(&parse_expr(text).unwrap()).unwrap().graph
    }

    #[test]
    fn recognises_shuffled_staircases() {
        for m in 1..=7 {
            let f = make_f(m).unwrap();
            let perm: Vec<Vertex> = (1..=2 * m).map(|v| (v * 5) % (2 * m) + 1).collect();
            if let Ok(h) = f.relabel(&perm) {
                let s = is_staircase(&h).unwrap();
                assert_eq!(s.m, m);
                for (a, b) in f.edges() {
                    assert!(h.has_edge(s.map[a - 1], s.map[b - 1]));
                }
            }
        }
        assert!(is_staircase(&make_m(4, true).unwrap()).is_none());
    }

    #[test]
    fn decomposes_mixed_expression() {
        let g = build("F3 * F3 o F4 * F1 * F3 o F3");
        assert_eq!(g.n(), 25);
        let cert = decompose(&g).unwrap();
        assert_eq!(cert.shape(), vec![vec![3], vec![3, 4], vec![1], vec![3, 3]]);
        cert.verify(&g).unwrap();
        assert_eq!(cert.star_junctions().len(), 3);
        assert_eq!(cert.circ_junctions().len(), 2);
    }

    #[test]
    fn simple_shapes() {
        assert_eq!(
            decompose(&build("F3 * F4")).unwrap().shape(),
            vec![vec![3], vec![4]]
        );
        assert_eq!(
            decompose(&build("F3 o F4")).unwrap().shape(),
            vec![vec![3, 4]]
        );
        assert_eq!(
            decompose(&build("F1 * F1")).unwrap().shape(),
            vec![vec![1], vec![1]]
        );
        assert_eq!(
            decompose(&Graph::empty(1).unwrap()).unwrap().shape(),
            Vec::<Vec<usize>>::new()
        );
    }

    #[test]
    fn classify_reports() {
        let r = classify(&make_f(4).unwrap());
        assert_eq!(r.verdict, Verdict::CohenMacaulay);
        assert!(r.equivalence_holds);
        assert_eq!(r.expression.as_deref(), Some("F4"));

        let r = classify(&make_m(4, true).unwrap());
        assert!(r.unmixed);
        assert!(!r.dual_connected);
        assert!(!r.peeling);
        assert_eq!(r.verdict, Verdict::NotCohenMacaulay);
        assert!(r.refutation.is_some());
        assert!(r.equivalence_holds);

        let r = classify(&build("F3 o F2 o F3"));
        assert!(!r.unmixed);
        assert_eq!(
            r.unmixed_witness.unwrap().set,
            crate::graph::vset(&[3, 5, 6, 8])
        );
        assert_eq!(r.verdict, Verdict::NotCohenMacaulay);

        let tri = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(classify(&tri).verdict, Verdict::NotApplicable);

        let two = Graph::from_edges(5, &[(1, 2), (3, 4), (4, 5)]).unwrap();
        let r = classify(&two);
        assert_eq!(r.verdict, Verdict::CohenMacaulay);
        assert_eq!(r.components.len(), 2);

        let single = classify(&Graph::empty(1).unwrap());
        assert_eq!(single.verdict, Verdict::CohenMacaulay);
    }
}
