//! Canonical labelling by partition refinement with an individualisation search tree.
//!
//! The canonical form is the lexicographically largest adjacency matrix over all leaves of
//! the search tree. Branches that differ by swapping two twins are skipped, since such a
//! transposition is an automorphism that fixes every individualised vertex.

use crate::graph::{Graph, Vertex};
use crate::graph6;

/// Canonical form of a graph, encoded as graph6 of the canonically relabelled graph.
/// Two graphs are isomorphic exactly when their canonical forms are equal.
pub fn canonical_form(g: &Graph) -> String {
    graph6::encode(&canonical_graph(g))
}

/// The canonically relabelled graph.
pub fn canonical_graph(g: &Graph) -> Graph {
    let order = canonical_order(g);
    let mut perm = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i + 1;
    }
    g.relabel(&perm).expect("canonical order is a permutation")
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && degree_sequence(a) == degree_sequence(b)
        && canonical_form(a) == canonical_form(b)
}

fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (1..=g.n()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

/// Canonical order as 0-based vertex indices: position `i` holds the vertex that gets label `i + 1`.
fn canonical_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let adj: Vec<u64> = (1..=n).map(|v| g.neighbors(v).bits()).collect();
    let twins = twin_matrix(&adj);
    let mut search = Search {
        adj: &adj,
        twins: &twins,
        best: None,
    };
    let cells = refine(&adj, vec![(0..n).collect()]);
    search.descend(cells);
    search.best.expect("search visits at least one leaf").1
}

/// `twins[u]` has bit `v` set when `N(u) \ {v} = N(v) \ {u}`.
fn twin_matrix(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    let mut twins = vec![0u64; n];
    for u in 0..n {
        for v in (u + 1)..n {
            let bu = 1u64 << u;
            let bv = 1u64 << v;
            if adj[u] & !bv == adj[v] & !bu {
                twins[u] |= bv;
                twins[v] |= bu;
            }
        }
    }
    twins
}

struct Search<'a> {
    adj: &'a [u64],
    twins: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let key = matrix_key(self.adj, &order);
            if self.best.as_ref().is_none_or(|(b, _)| key > *b) {
                self.best = Some((key, order));
            }
            return;
        };
        let cell = cells[target].clone();
        let mut tried = 0u64;
        for &v in &cell {
            if self.twins[v] & tried != 0 {
                continue;
            }
            tried |= 1 << v;
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            self.descend(refine(self.adj, next));
        }
    }
}

/// Rows of the adjacency matrix under the given order, row `i` as a bitmask over positions.
fn matrix_key(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| {
            let mut row = 0u64;
            let mut a = adj[v];
            while a != 0 {
                let w = a.trailing_zeros() as usize;
                // Highest bit for the first position so that integer order is lexicographic.
                row |= 1u64 << (63 - pos[w]);
                a &= a - 1;
            }
            row
        })
        .collect()
}

/// Equitable refinement: split every cell by the number of neighbours in each splitter cell
/// until nothing changes. Sub-cells are ordered by increasing count, which keeps the
/// procedure independent of vertex labels.
fn refine(adj: &[u64], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter: u64 = cells[s].iter().fold(0, |m, &v| m | 1 << v);
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.into_iter() {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&v| ((adj[v] & splitter).count_ones(), v))
                    .collect();
                keyed.sort_unstable();
                let before = next.len();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
                if next.len() - before > 1 {
                    changed = true;
                }
            }
            cells = next;
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}

/// Canonical form by trying every permutation. Exponential; meant as a reference for small graphs.
pub fn brute_force_canonical_form(g: &Graph) -> String {
    let n = g.n();
    let adj: Vec<u64> = (1..=n).map(|v| g.neighbors(v).bits()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    permute(&mut order, 0, &mut |o| {
        let key = matrix_key(&adj, o);
        if best.as_ref().is_none_or(|(b, _)| key > *b) {
            best = Some((key, o.to_vec()));
        }
    });
    let order = best.map(|b| b.1).unwrap_or_default();
    let mut perm: Vec<Vertex> = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i + 1;
    }
    graph6::encode(&g.relabel(&perm).expect("permutation"))
}

fn permute(order: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == order.len() {
        f(order);
        return;
    }
    for i in k..order.len() {
        order.swap(k, i);
        permute(order, k + 1, f);
        order.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in (u + 1)..=n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn shuffled(rng: &mut StdRng, g: &Graph) -> Graph {
        let mut perm: Vec<usize> = (1..=g.n()).collect();
        perm.shuffle(rng);
        g.relabel(&perm).unwrap()
    }

    #[test]
    fn agrees_with_brute_force_on_isomorphism() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..400 {
            let n = rng.gen_range(1..=7);
            let g = random_graph(&mut rng, n, 0.4);
            let h = if rng.gen_bool(0.5) {
                shuffled(&mut rng, &g)
            } else {
                random_graph(&mut rng, n, 0.4)
            };
            let brute = brute_force_canonical_form(&g) == brute_force_canonical_form(&h);
            assert_eq!(
                canonical_form(&g) == canonical_form(&h),
                brute,
                "{g:?} {h:?}"
            );
        }
    }

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(1..=20);
            let g = random_graph(&mut rng, n, 0.3);
            let h = shuffled(&mut rng, &g);
            assert_eq!(canonical_form(&g), canonical_form(&h));
            assert!(is_isomorphic(&g, &h));
        }
    }

    #[test]
    fn regular_graphs_are_separated() {
        // C6 and two disjoint triangles are both 2-regular on 6 vertices.
        let c6 = Graph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]).unwrap();
        let tt = Graph::from_edges(6, &[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]).unwrap();
        assert!(!is_isomorphic(&c6, &tt));
        assert_ne!(canonical_form(&c6), canonical_form(&tt));
    }

    #[test]
    fn empty_and_complete_graphs_are_fast() {
        let e = Graph::empty(40).unwrap();
        assert_eq!(canonical_form(&e), graph6::encode(&e));
        let mut edges = Vec::new();
        for u in 1..=30 {
            for v in (u + 1)..=30 {
                edges.push((u, v));
            }
        }
        let k = Graph::from_edges(30, &edges).unwrap();
        assert_eq!(canonical_form(&k), graph6::encode(&k));
    }
}
