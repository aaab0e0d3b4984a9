//! Exhaustive generation of small graphs up to isomorphism and the census that classifies
//! each of them and checks every structural property on it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_graph;
use crate::classify::{classify, Verdict};
use crate::cutset::enumerate_cut_sets;
use crate::dual::build_dual_from;
use crate::error::{check_guard, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use crate::lemmas;

/// Default size guard for bipartite-only runs.
pub const BIPARTITE_GUARD: usize = 10;
/// Default size guard for runs over all connected graphs.
pub const GENERAL_GUARD: usize = 8;

/// Which graphs to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphClass {
    /// All graphs, connected or not.
    All,
    Connected,
    ConnectedBipartite,
}

/// Representatives of the isomorphism classes on `n` vertices, canonically labelled and
/// sorted by graph6 string.
///
/// Each class on `n` vertices is reached by adding one vertex to a class on `n - 1` vertices:
/// for connected graphs remove a vertex that is not a cut vertex, for connected bipartite
/// graphs the new vertex sees only one colour class. Candidates are deduplicated by
/// canonical form.
pub fn generate(n: usize, class: GraphClass) -> Vec<Graph> {
    let mut level = vec![Graph::empty(if n == 0 { 0 } else { 1 }).expect("small")];
    if n == 0 {
        return level;
    }
    for _ in 2..=n {
        level = extend(&level, class);
    }
    level
}

/// Representatives for every size `1..=max_n`.
pub fn generate_up_to(max_n: usize, class: GraphClass) -> Vec<Vec<Graph>> {
    let mut out = Vec::with_capacity(max_n);
    if max_n == 0 {
        return out;
    }
    let mut level = vec![Graph::empty(1).expect("small")];
    out.push(level.clone());
    for _ in 2..=max_n {
        level = extend(&level, class);
        out.push(level.clone());
    }
    out
}

fn extend(level: &[Graph], class: GraphClass) -> Vec<Graph> {
    let found: Vec<(String, Graph)> = level
        .par_iter()
        .flat_map_iter(|g| {
            let choices = neighbourhoods(g, class);
            choices.into_iter().map(move |nb| {
                let h = canonical_graph(&g.with_new_vertex(nb).expect("at most 64 vertices"));
                (graph6::encode(&h), h)
            })
        })
        .collect();
    let unique: BTreeMap<String, Graph> = found.into_iter().collect();
    unique.into_values().collect()
}

fn neighbourhoods(g: &Graph, class: GraphClass) -> Vec<VertexSet> {
    let n = g.n();
    let all = |mask: VertexSet| -> Vec<VertexSet> {
        let members = mask.to_vec();
        (0u64..1 << members.len())
            .map(|bits| {
                members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect()
    };
    match class {
        GraphClass::All => all(VertexSet::full(n)),
        GraphClass::Connected => all(VertexSet::full(n))
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect(),
        GraphClass::ConnectedBipartite => {
            let bip = g.bipartition().expect("bipartite parent");
            let mut out: Vec<VertexSet> = all(bip.left)
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            out.extend(all(bip.right).into_iter().filter(|s| !s.is_empty()));
            out
        }
    }
}

/// One line of the census table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub graph6: String,
    pub bipartite: bool,
    pub unmixed: bool,
    pub dual_connected: bool,
    pub peeling: bool,
    pub certified: bool,
    pub diameter: Option<usize>,
    pub hirsch_ok: Option<bool>,
}

/// A property that failed on some graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub graph6: String,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusOutcome {
    pub rows: Vec<CensusRow>,
    pub violations: Vec<Violation>,
}

impl CensusOutcome {
    /// Rows of graphs that are bipartite, unmixed and not Cohen-Macaulay.
    pub fn unmixed_not_cm(&self) -> impl Iterator<Item = &CensusRow> {
        self.rows
            .iter()
            .filter(|r| r.bipartite && r.unmixed && !r.dual_connected)
    }
}

/// Census options.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub max_n: usize,
    pub min_n: usize,
    pub bipartite_only: bool,
    pub jobs: usize,
    /// Also run the neighbourhood-completion check, which enumerates cut sets `n` more times.
    pub splitting: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            max_n: 7,
            min_n: 1,
            bipartite_only: true,
            jobs: 1,
            splitting: false,
        }
    }
}

/// Classifies one graph and checks every property on it.
pub fn census_graph(g: &Graph, splitting: bool) -> (CensusRow, Vec<Violation>) {
    let report = classify(g);
    let family = enumerate_cut_sets(g);
    let dual = build_dual_from(g, &family).ok();
    let id = report.graph6.clone();
    let mut violations = Vec::new();
    let mut flag = |check: &str, detail: String| {
        violations.push(Violation {
            graph6: id.clone(),
            check: check.to_string(),
            detail,
        })
    };
    if !report.equivalence_holds {
        flag("equivalence", report.notes.join("; "));
    }
    if let Some(cert) = &report.certificate {
        if let Err(msg) = cert.verify(g) {
            flag("certificate-round-trip", msg);
        }
    }
    if report.verdict == Verdict::CohenMacaulay && report.connected {
        match report.hirsch {
            Some(h) if h.holds && h.diameter.is_some_and(|d| d <= g.n().saturating_sub(1)) => {}
            other => flag("hirsch", format!("{other:?}")),
        }
    }
    for (name, msg) in lemmas::run_all(g, &family, dual.as_ref(), splitting) {
        flag(name, msg);
    }
    let row = CensusRow {
        n: g.n(),
        graph6: report.graph6.clone(),
        bipartite: report.bipartite,
        unmixed: report.unmixed,
        dual_connected: report.dual_connected,
        peeling: report.peeling,
        certified: report.certificate.is_some(),
        diameter: report.diameter,
        hirsch_ok: report.hirsch.map(|h| h.holds),
    };
    (row, violations)
}

/// Runs the census over the given graphs on a pool of `jobs` threads. Output order follows
/// the input order, so results do not depend on the number of threads.
pub fn run_census_on(graphs: &[Graph], jobs: usize, splitting: bool) -> Result<CensusOutcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let results: Vec<(CensusRow, Vec<Violation>)> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| census_graph(g, splitting))
            .collect()
    });
    let mut outcome = CensusOutcome::default();
    for (row, v) in results {
        outcome.rows.push(row);
        outcome.violations.extend(v);
    }
    Ok(outcome)
}

/// Generates all connected graphs (or connected bipartite graphs) in the size range and runs
/// the census on them.
pub fn run_census(opts: CensusOptions) -> Result<CensusOutcome> {
    let guard = if opts.bipartite_only {
        BIPARTITE_GUARD
    } else {
        GENERAL_GUARD
    };
    check_guard(opts.max_n, guard)?;
    let class = if opts.bipartite_only {
        GraphClass::ConnectedBipartite
    } else {
        GraphClass::Connected
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let graphs: Vec<Graph> = pool.install(|| {
        generate_up_to(opts.max_n, class)
            .into_iter()
            .skip(opts.min_n.saturating_sub(1))
            .flatten()
            .collect()
    });
    run_census_on(&graphs, opts.jobs, opts.splitting)
}

/// Reads graph6 lines, skipping blank lines.
pub fn read_graph6_stream(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(graph6::decode)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let bip: Vec<usize> = generate_up_to(8, GraphClass::ConnectedBipartite)
            .iter()
            .map(Vec::len)
            .collect();
        assert_eq!(bip, vec![1, 1, 1, 3, 5, 17, 44, 182]);
        let conn: Vec<usize> = generate_up_to(6, GraphClass::Connected)
            .iter()
            .map(Vec::len)
            .collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
        let all: Vec<usize> = generate_up_to(6, GraphClass::All)
            .iter()
            .map(Vec::len)
            .collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn small_census_is_clean_and_deterministic() {
        let opts = CensusOptions {
            max_n: 6,
            min_n: 1,
            bipartite_only: true,
            jobs: 1,
            splitting: true,
        };
        let a = run_census(opts).unwrap();
        assert!(a.violations.is_empty(), "{:?}", a.violations);
        let b = run_census(CensusOptions { jobs: 4, ..opts }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn guard_applies() {
        let opts = CensusOptions {
            max_n: 11,
            ..CensusOptions::default()
        };
        if std::env::var("BEID_GUARD_N").is_err() {
            assert!(matches!(run_census(opts), Err(Error::SizeGuard { .. })));
        }
    }
}
