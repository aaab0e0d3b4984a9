#![allow(dead_code)]

use beid_core::dsl::BlockExpr;
use beid_core::{Graph, Vertex};
use proptest::prelude::*;

/// Graph on `n` vertices from a bit per unordered pair, in the order (1,2), (1,3), …
pub fn from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 1..=n {
        for v in (u + 1)..=n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| from_bits(n, &bits))
    })
}

/// Connected graph: a random tree plus random extra edges.
pub fn arb_connected(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1)),
            proptest::collection::vec(prop::bool::weighted(0.25), n * n.saturating_sub(1) / 2),
        )
            .prop_map(move |(parents, extra)| {
                let mut g = from_bits(n, &extra).edges();
                for (i, p) in parents.iter().enumerate() {
                    let v = i + 2;
                    g.push((p.index(v - 1) + 1, v));
                }
                Graph::from_edges(n, &g).unwrap()
            })
    })
}

/// Connected bipartite graph with sides `1..=a` and `a+1..=n`.
pub fn arb_connected_bipartite(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n.max(2)..=max_n)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, a)| {
            let b = n - a;
            (
                proptest::collection::vec(any::<bool>(), a * b),
                proptest::collection::vec(any::<prop::sample::Index>(), n),
            )
                .prop_map(move |(bits, picks)| {
                    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
                    for i in 0..a {
                        for j in 0..b {
                            if bits[i * b + j] {
                                edges.push((i + 1, a + j + 1));
                            }
                        }
                    }
                    // Connect: each right vertex j > 0 sees some left vertex, and left vertices
                    // chain through the first right vertex.
                    for i in 0..a {
                        edges.push((i + 1, a + 1));
                    }
                    for (j, pick) in picks.iter().enumerate().take(b).skip(1) {
                        edges.push((pick.index(a) + 1, a + j + 1));
                    }
                    Graph::from_edges(n, &edges).unwrap()
                })
        })
}

/// Permutation of `1..=n` as a relabelling vector.
pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<Vertex>> {
    Just((1..=n).collect::<Vec<Vertex>>()).prop_shuffle()
}

/// Staircase chains joined by `*`, with chain members `m >= 2` and interior members `m >= 3`.
pub fn arb_chain_expr(
    max_blocks: usize,
    max_len: usize,
    max_m: usize,
) -> impl Strategy<Value = BlockExpr> {
    let chain = (1..=max_len).prop_flat_map(move |len| {
        proptest::collection::vec(1..=max_m, len).prop_map(move |ms| {
            let k = ms.len();
            ms.into_iter()
                .enumerate()
                .map(|(i, m)| {
                    let low = if k == 1 {
                        1
                    } else if i == 0 || i == k - 1 {
                        2
                    } else {
                        3
                    };
                    BlockExpr::F(m.max(low))
                })
                .reduce(BlockExpr::circ)
                .unwrap()
        })
    });
    proptest::collection::vec(chain, 1..=max_blocks)
        .prop_map(|chains| chains.into_iter().reduce(BlockExpr::star).unwrap())
}

/// Every valid staircase expression (no interior `F2`, no `F1` inside a chain) with at most
/// `max_n` vertices, up to associativity.
pub fn all_chain_exprs(max_n: usize) -> Vec<BlockExpr> {
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<usize>> = (1..=max_n / 2).map(|m| vec![m]).collect();
    while let Some(ms) = stack.pop() {
        let n = ms.iter().map(|m| 2 * m).sum::<usize>() - 3 * (ms.len() - 1);
        if n > max_n {
            continue;
        }
        let k = ms.len();
        let valid = k == 1
            || ms
                .iter()
                .enumerate()
                .all(|(i, &m)| m >= if i == 0 || i == k - 1 { 2 } else { 3 });
        if valid {
            chains.push(
                ms.iter()
                    .map(|&m| BlockExpr::F(m))
                    .reduce(BlockExpr::circ)
                    .unwrap(),
            );
        }
        if ms[0] >= 2 {
            for m in 2..=max_n / 2 {
                let mut next = ms.clone();
                next.push(m);
                stack.push(next);
            }
        }
    }
    let mut out = Vec::new();
    let mut stack = chains.clone();
    while let Some(e) = stack.pop() {
        for c in &chains {
            let next = BlockExpr::star(e.clone(), c.clone());
            if next.vertex_count() <= max_n {
                stack.push(next);
            }
        }
        out.push(e);
    }
    out
}
