//! Structural properties of cut sets that hold for every graph in their scope.
//!
//! Each check returns `Ok(())` when the property holds or the graph is outside its scope, and
//! a description of the counterexample otherwise. The census runs them on every graph.

use crate::construct::{predict_semicone, semicone};
use crate::cutset::{check_peeling, check_unmixed, enumerate_cut_sets, CutSetFamily};
use crate::dual::{dual_edge_unchecked, DualGraph};
use crate::graph::{Graph, Vertex, VertexSet};

pub type Check = Result<(), String>;

fn connected_bipartite_unmixed(g: &Graph, family: &CutSetFamily) -> bool {
    g.is_connected() && g.is_bipartite() && check_unmixed(family).is_ok()
}

/// A connected bipartite graph with unmixed binomial edge ideal and at least two vertices
/// has exactly two leaves.
pub fn two_leaves(g: &Graph, family: &CutSetFamily) -> Check {
    if g.n() < 2 || !connected_bipartite_unmixed(g, family) {
        return Ok(());
    }
    let leaves = g.leaves();
    if leaves.len() != 2 {
        return Err(format!("unmixed bipartite graph with leaves {leaves}"));
    }
    Ok(())
}

/// For a connected bipartite unmixed graph on at least 4 vertices with leaf neighbours `v1`,
/// `v2`, and either side `V` of the bipartition:
/// every `X ⊆ V \ {v1, v2}` that leaves out at least one leaf has `N(X)` a cut set with
/// `|N(X)| >= |X|`; and if `v1 v2` is an
/// edge then both sides have `m` vertices, `v1` and `v2` have degree `m`, and they are the
/// only cut vertices.
pub fn leaf_neighbour_sets(g: &Graph, family: &CutSetFamily) -> Check {
    if g.n() < 4 || !connected_bipartite_unmixed(g, family) {
        return Ok(());
    }
    let bip = g.bipartition().expect("bipartite");
    let leaves = g.leaves();
    let leaf_nbrs = g.neighborhood_of(leaves);
    for side in [bip.left, bip.right] {
        let pool = side.difference(leaf_nbrs).to_vec();
        for mask in 1u64..(1 << pool.len()) {
            let x: VertexSet = pool
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            if leaves.is_subset(x) {
                continue;
            }
            let nx = g.neighborhood_of(x);
            if !family.contains(nx) {
                return Err(format!("N({x}) = {nx} is not a cut set"));
            }
            if nx.len() < x.len() {
                return Err(format!("|N({x})| < |{x}|"));
            }
        }
    }
    let nb = leaf_nbrs.to_vec();
    if nb.len() == 2 && g.has_edge(nb[0], nb[1]) {
        let m = bip.left.len();
        if bip.right.len() != m {
            return Err(format!(
                "adjacent leaf neighbours but sides of sizes {m} and {}",
                bip.right.len()
            ));
        }
        for &v in &nb {
            if g.degree(v) != m {
                return Err(format!(
                    "leaf neighbour {v} has degree {} instead of {m}",
                    g.degree(v)
                ));
            }
        }
        if g.cut_vertices() != leaf_nbrs {
            return Err(format!(
                "cut vertices {} differ from the leaf neighbours",
                g.cut_vertices()
            ));
        }
    }
    Ok(())
}

/// For an unmixed graph and cut sets `S`, `T` of equal size differing in one element:
/// if `P_S` and `P_T` are adjacent in the dual graph then `S ∩ T` is a cut set, and for
/// bipartite graphs the same follows from `S ∪ T` being a cut set.
pub fn intersection(g: &Graph, family: &CutSetFamily) -> Check {
    if check_unmixed(family).is_err() {
        return Ok(());
    }
    let bipartite = g.is_bipartite();
    let sets = family.sets();
    for (i, &s) in sets.iter().enumerate() {
        for &t in &sets[i + 1..] {
            if t.len() != s.len() {
                break;
            }
            if s.difference(t).len() != 1 {
                continue;
            }
            let meet = s.intersection(t);
            if dual_edge_unchecked(g, s, t) && !family.contains(meet) {
                return Err(format!(
                    "{s} and {t} are adjacent but {meet} is not a cut set"
                ));
            }
            if bipartite && family.contains(s.union(t)) && !family.contains(meet) {
                return Err(format!("{s} ∪ {t} is a cut set but {meet} is not"));
            }
        }
    }
    Ok(())
}

/// For a connected bipartite graph with connected dual graph, every non-empty cut set contains a cut
/// vertex. With exactly two cut vertices, they are adjacent, the sides have equal size, and
/// some vertex has degree 2.
pub fn cut_vertices_under_connected_dual(
    g: &Graph,
    family: &CutSetFamily,
    dual: Option<&DualGraph>,
) -> Check {
    let Some(dual) = dual else { return Ok(()) };
    if !g.is_connected() || !g.is_bipartite() || !dual.is_connected() {
        return Ok(());
    }
    let cut = g.cut_vertices();
    for s in family.sets() {
        if !s.is_empty() && s.is_disjoint(cut) {
            return Err(format!("cut set {s} contains no cut vertex"));
        }
    }
    if cut.len() == 2 {
        let pair = cut.to_vec();
        if !g.has_edge(pair[0], pair[1]) {
            return Err(format!("the two cut vertices {cut} are not adjacent"));
        }
        let bip = g.bipartition().expect("bipartite");
        if bip.left.len() != bip.right.len() {
            return Err("two adjacent cut vertices but unequal sides".into());
        }
        if !(1..=g.n()).any(|v| g.degree(v) == 2) {
            return Err("two cut vertices but no vertex of degree 2".into());
        }
    }
    Ok(())
}

/// Free vertices never lie in a cut set; in a bipartite graph the free vertices are exactly
/// those of degree at most one.
pub fn free_vertices(g: &Graph, family: &CutSetFamily) -> Check {
    let free = g.free_vertices();
    for s in family.sets() {
        if !s.is_disjoint(free) {
            return Err(format!(
                "cut set {s} contains free vertices {}",
                s.intersection(free)
            ));
        }
    }
    if g.is_bipartite() {
        let low: VertexSet = (1..=g.n()).filter(|&v| g.degree(v) <= 1).collect();
        if low != free {
            return Err(format!(
                "free vertices {free} differ from vertices of degree <= 1 {low}"
            ));
        }
    }
    Ok(())
}

/// Completing the neighbourhood of `v` to a clique keeps exactly the cut sets avoiding `v`.
pub fn splitting(g: &Graph, family: &CutSetFamily) -> Check {
    for v in 1..=g.n() {
        let h = complete_neighbourhood(g, v);
        let got = enumerate_cut_sets(&h).sets();
        let want: Vec<VertexSet> = family
            .sets()
            .into_iter()
            .filter(|s| !s.contains(v))
            .collect();
        if got != want {
            return Err(format!(
                "completing N({v}) gives cut sets {got:?}, expected {want:?}"
            ));
        }
    }
    Ok(())
}

fn complete_neighbourhood(g: &Graph, v: Vertex) -> Graph {
    let mut edges = g.edges();
    let nb = g.neighbors(v).to_vec();
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            edges.push((a, b));
        }
    }
    Graph::from_edges(g.n(), &edges).expect("same vertex set")
}

/// For a connected bipartite unmixed graph with sides of equal size, the semicone over either
/// side is unmixed exactly when the leaf neighbours are adjacent, and then its cut sets are
/// given by the closed form. A connected dual graph of the semicone forces a connected dual
/// graph of the base, and for the semicone dual connectivity coincides with peeling.
pub fn semicone_unmixedness(g: &Graph, family: &CutSetFamily) -> Check {
    if !connected_bipartite_unmixed(g, family) {
        return Ok(());
    }
    let bip = g.bipartition().expect("bipartite");
    if bip.left.len() != bip.right.len() {
        return Ok(());
    }
    let mut nb: Vec<Vertex> = g
        .leaves()
        .iter()
        .filter_map(|f| g.neighbors(f).first())
        .collect();
    nb.dedup();
    let adjacent = nb.len() == 2 && g.has_edge(nb[0], nb[1]);
    let base_dual_connected = crate::dual::build_dual_from(g, family)
        .map(|d| d.is_connected())
        .unwrap_or(false);
    for side in [bip, bip.swapped()] {
        let cone = semicone(g, side).map_err(|e| e.to_string())?;
        let cone_family = enumerate_cut_sets(&cone);
        let unmixed = check_unmixed(&cone_family).is_ok();
        if unmixed != adjacent {
            return Err(format!(
                "semicone over side {} is {}unmixed but leaf neighbours are {}adjacent",
                side.left,
                if unmixed { "" } else { "not " },
                if adjacent { "" } else { "not " }
            ));
        }
        if adjacent {
            let predicted = predict_semicone(g, side, family).map_err(|e| e.to_string())?;
            if predicted != cone_family.sets() {
                return Err(format!(
                    "semicone over side {} has unexpected cut sets",
                    side.left
                ));
            }
            let cone_connected = crate::dual::build_dual_from(&cone, &cone_family)
                .map(|d| d.is_connected())
                .unwrap_or(false);
            if cone_connected && !base_dual_connected {
                return Err("semicone has a connected dual graph but the base does not".into());
            }
            if cone_connected != check_peeling(&cone_family).is_ok() {
                return Err("semicone dual connectivity differs from peeling".into());
            }
        }
    }
    Ok(())
}

/// Runs every check and collects `(name, message)` for the failures.
pub fn run_all(
    g: &Graph,
    family: &CutSetFamily,
    dual: Option<&DualGraph>,
    include_splitting: bool,
) -> Vec<(&'static str, String)> {
    let mut out = Vec::new();
    let mut record = |name: &'static str, r: Check| {
        if let Err(msg) = r {
            out.push((name, msg));
        }
    };
    record("two-leaves", two_leaves(g, family));
    record("leaf-neighbour-sets", leaf_neighbour_sets(g, family));
    record("intersection", intersection(g, family));
    record(
        "cut-vertex-containment",
        cut_vertices_under_connected_dual(g, family, dual),
    );
    record("free-vertices", free_vertices(g, family));
    if include_splitting {
        record("splitting", splitting(g, family));
    }
    record("semicone", semicone_unmixedness(g, family));
    out
}
