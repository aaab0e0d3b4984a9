//! Cut sets, minimal primes and the unmixedness and peeling criteria.
//!
//! `S` is a cut set when `S` is empty or every `i` in `S` satisfies `c(S \ {i}) < c(S)`,
//! which is the same as saying that every `i` in `S` has neighbours in at least two
//! components of `G - S`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Whether `s` is a cut set of `g`. Vertices outside `1..=n` make the answer `false`.
pub fn is_cut_set(g: &Graph, s: VertexSet) -> bool {
    if !s.is_subset(g.vertices()) {
        return false;
    }
    let comps = g.components_without(s);
    s.iter().all(|i| touches_two(g.neighbors(i), &comps))
}

fn touches_two(nbrs: VertexSet, comps: &[VertexSet]) -> bool {
    comps
        .iter()
        .filter(|c| !c.is_disjoint(nbrs))
        .take(2)
        .count()
        == 2
}

/// One cut set together with `c(S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CutSet {
    #[serde(rename = "S")]
    pub set: VertexSet,
    pub c: usize,
    pub height: usize,
}

/// All cut sets of a graph in canonical order (by size, then lexicographic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutSetFamily {
    n: usize,
    #[serde(rename = "cutsets")]
    entries: Vec<CutSet>,
}

impl CutSetFamily {
    /// Builds a family from precomputed `(S, c(S))` pairs; sorts and removes duplicates.
    pub fn from_pairs(n: usize, mut pairs: Vec<(VertexSet, usize)>) -> Self {
        pairs.sort();
        pairs.dedup();
        let entries = pairs
            .into_iter()
            .map(|(set, c)| CutSet {
                set,
                c,
                height: n + set.len() - c,
            })
            .collect();
        CutSetFamily { n, entries }
    }

    /// Builds the family of the given sets, computing `c(S)` in `g`.
    pub fn from_sets(g: &Graph, sets: impl IntoIterator<Item = VertexSet>) -> Self {
        let pairs = sets.into_iter().map(|s| (s, g.c(s))).collect();
        Self::from_pairs(g.n(), pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CutSet] {
        &self.entries
    }

    pub fn sets(&self) -> Vec<VertexSet> {
        self.entries.iter().map(|e| e.set).collect()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.index_of(s).is_some()
    }

    /// Position of `s` in canonical order.
    pub fn index_of(&self, s: VertexSet) -> Option<usize> {
        self.entries.binary_search_by(|e| e.set.cmp(&s)).ok()
    }

    /// `c(S)` for a member `S`.
    pub fn c_of(&self, s: VertexSet) -> Option<usize> {
        self.index_of(s).map(|i| self.entries[i].c)
    }

    /// Smallest height among the minimal primes, which is the height of the ideal.
    pub fn min_height(&self) -> usize {
        self.entries.iter().map(|e| e.height).min().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serialises")
    }
}

/// Enumerates all cut sets of `g`.
///
/// Branch and bound over the vertices in breadth-first order. Free vertices never lie in a
/// cut set and are always left out. A branch is dropped as soon as some chosen vertex has
/// fewer than two neighbours that may still stay outside the set, or once all of its
/// neighbours are decided and the outside ones lie in one component of the graph induced on
/// the vertices decided to stay. Components of that graph only merge as it grows, so the
/// second test never discards a cut set. Each surviving leaf is checked in full.
pub fn enumerate_cut_sets(g: &Graph) -> CutSetFamily {
    let n = g.n();
    if n == 0 {
        return CutSetFamily::from_pairs(0, vec![(VertexSet::EMPTY, 0)]);
    }
    let order = bfs_order(g);
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut closers: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in 1..=n {
        let close = g
            .neighbors(v)
            .iter()
            .map(|w| pos[w])
            .chain([pos[v]])
            .max()
            .unwrap();
        closers[close].push(v);
    }
    let free = g.free_vertices();
    let mut search = Enumeration {
        g,
        order,
        closers,
        free,
        found: Vec::new(),
    };
    search.step(0, VertexSet::EMPTY, VertexSet::EMPTY);
    CutSetFamily::from_pairs(n, search.found)
}

fn bfs_order(g: &Graph) -> Vec<Vertex> {
    let mut order = Vec::with_capacity(g.n());
    let mut seen = VertexSet::EMPTY;
    for start in 1..=g.n() {
        if seen.contains(start) {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in g.neighbors(v).difference(seen) {
                seen.insert(w);
                queue.push_back(w);
            }
        }
    }
    order
}

struct Enumeration<'a> {
    g: &'a Graph,
    order: Vec<Vertex>,
    closers: Vec<Vec<Vertex>>,
    free: VertexSet,
    found: Vec<(VertexSet, usize)>,
}

impl Enumeration<'_> {
    fn step(&mut self, i: usize, inside: VertexSet, outside: VertexSet) {
        if i == self.order.len() {
            let comps = self.g.components_within(outside);
            if inside
                .iter()
                .all(|s| touches_two(self.g.neighbors(s), &comps))
            {
                self.found.push((inside, comps.len()));
            }
            return;
        }
        let v = self.order[i];
        if !self.free.contains(v) {
            let inside2 = inside.with(v);
            if self.viable_after_insert(v, inside2) && self.viable_at_close(i, inside2, outside) {
                self.step(i + 1, inside2, outside);
            }
        }
        let outside2 = outside.with(v);
        if self.viable_at_close(i, inside, outside2) {
            self.step(i + 1, inside, outside2);
        }
    }

    /// Every chosen vertex touched by the new choice keeps two possible outside neighbours.
    fn viable_after_insert(&self, v: Vertex, inside: VertexSet) -> bool {
        let g = self.g;
        let ok = |s: Vertex| g.neighbors(s).difference(inside).len() >= 2;
        ok(v) && g.neighbors(v).intersection(inside).iter().all(ok)
    }

    fn viable_at_close(&self, i: usize, inside: VertexSet, outside: VertexSet) -> bool {
        for &s in &self.closers[i] {
            if !inside.contains(s) {
                continue;
            }
            let out_nbrs = self.g.neighbors(s).intersection(outside);
            let Some(first) = out_nbrs.first() else {
                return false;
            };
            if out_nbrs.is_subset(self.g.component_of(first, outside)) {
                return false;
            }
        }
        true
    }
}

/// A minimal prime `P_S`, described by its cut set and the blocks of `G - S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalPrime {
    pub cutset: VertexSet,
    pub blocks: Vec<VertexSet>,
    pub height: usize,
}

impl MinimalPrime {
    pub fn new(g: &Graph, s: VertexSet) -> Self {
        let blocks = g.components_without(s);
        MinimalPrime {
            cutset: s,
            height: g.n() + s.len() - blocks.len(),
            blocks,
        }
    }
}

/// Minimal primes of the binomial edge ideal, one per cut set, in canonical order.
pub fn minimal_primes(g: &Graph) -> Vec<MinimalPrime> {
    enumerate_cut_sets(g)
        .entries()
        .iter()
        .map(|e| MinimalPrime::new(g, e.set))
        .collect()
}

/// Height of the binomial edge ideal, `n - c(∅)`.
pub fn ideal_height(g: &Graph) -> usize {
    g.n() - g.c(VertexSet::EMPTY)
}

/// A cut set whose minimal prime has the wrong height.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnmixedWitness {
    pub set: VertexSet,
    pub c: usize,
    pub expected: usize,
}

/// Unmixedness: all minimal primes have height `n - c(∅)`, so `c(S) = |S| + c(∅)` for every
/// cut set. For a connected graph this reads `c(S) = |S| + 1`.
pub fn check_unmixed(family: &CutSetFamily) -> Result<(), UnmixedWitness> {
    let base = family.c_of(VertexSet::EMPTY).unwrap_or(0);
    for e in family.entries() {
        let expected = e.set.len() + base;
        if e.c != expected {
            return Err(UnmixedWitness {
                set: e.set,
                c: e.c,
                expected,
            });
        }
    }
    Ok(())
}

pub fn is_unmixed(g: &Graph) -> bool {
    check_unmixed(&enumerate_cut_sets(g)).is_ok()
}

/// Peeling: every non-empty cut set `S` contains some `s` with `S \ {s}` again a cut set.
/// On failure the offending cut set is returned.
pub fn check_peeling(family: &CutSetFamily) -> Result<(), VertexSet> {
    for e in family.entries() {
        let s = e.set;
        if !s.is_empty() && !s.iter().any(|v| family.contains(s.without(v))) {
            return Err(s);
        }
    }
    Ok(())
}

pub fn peeling_holds(g: &Graph) -> bool {
    check_peeling(&enumerate_cut_sets(g)).is_ok()
}

/// Krull dimension of `S/J_G`, which is `n + c(∅)` for unmixed ideals.
pub fn dimension(g: &Graph) -> Result<usize> {
    let family = enumerate_cut_sets(g);
    check_unmixed(&family).map_err(|w| Error::NotUnmixed {
        set: w.set,
        c: w.c,
        expected: w.expected,
    })?;
    Ok(g.n() + g.c(VertexSet::EMPTY))
}
