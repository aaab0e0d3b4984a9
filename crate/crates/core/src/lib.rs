//! Cut sets, dual graphs and Cohen-Macaulay classification for binomial edge ideals.
//!
//! Graphs are simple and undirected on vertices `1..=n` with `n <= 64`. The main entry points
//! are [`enumerate_cut_sets`], [`build_dual`] and [`classify`]; [`census`] runs all of them over
//! every graph up to a given size.

pub mod canon;
pub mod census;
pub mod classify;
pub mod construct;
pub mod cutset;
pub mod dsl;
pub mod dual;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod lemmas;
pub mod oracle;

pub use canon::{canonical_form, is_isomorphic};
pub use classify::{
    classify, decompose, is_staircase, BlockCertificate, Chain, ClassificationReport, Factor,
    Refutation, RefutationKind, StaircaseMatch, Verdict,
};
pub use construct::{
    circ_glue, fan_graph, make_f, make_m, predict_cutsets, semicone, star_glue, Family, Glued,
};
pub use cutset::{
    check_peeling, check_unmixed, dimension, enumerate_cut_sets, ideal_height, is_cut_set,
    is_unmixed, minimal_primes, peeling_holds, CutSet, CutSetFamily, MinimalPrime, UnmixedWitness,
};
pub use dsl::{elaborate, parse_expr, BlockExpr, Elaboration};
pub use dual::{
    build_dual, build_dual_from, dual_edge, hirsch_check, DualGraph, DualReport, HirschReport,
};
pub use error::{Error, Result};
pub use graph::{vset, Bipartition, Graph, Vertex, VertexSet, MAX_VERTICES};
pub use oracle::{oracle_cut_sets, oracle_dual_edge, oracle_height_sum, HeightReport};
