use std::io::Read;

use anyhow::{anyhow, bail, Context, Result};
use beid_core::construct::{predict_cutsets, predict_semicone, semicone, Family};
use beid_core::dsl::{elaborate, parse_expr, BlockExpr};
use beid_core::{enumerate_cut_sets, graph6, Graph, VertexSet};

/// A graph together with where it came from.
pub struct Loaded {
    pub graph: Graph,
    pub expr: Option<BlockExpr>,
    pub warnings: Vec<String>,
}

/// Reads `-` as stdin, anything else as the literal argument.
pub fn read_arg(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf.trim().to_string())
    } else {
        Ok(arg.trim().to_string())
    }
}

/// Parses a block expression first and falls back to graph6.
pub fn load_graph(text: &str) -> Result<Loaded> {
    let dsl_err = match parse_expr(text) {
        Ok(expr) => {
            let e = elaborate(&expr)?;
            return Ok(Loaded {
                graph: e.graph,
                expr: Some(expr),
                warnings: e.warnings,
            });
        }
        Err(e) => e,
    };
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .unwrap_or("")
        .trim();
    match graph6::decode(line) {
        Ok(graph) => Ok(Loaded {
            graph,
            expr: None,
            warnings: Vec::new(),
        }),
        Err(g6_err) => Err(anyhow!(
            "input is neither a block expression ({dsl_err}) nor graph6 ({g6_err})"
        )),
    }
}

/// A generated graph with its predicted cut sets, when a closed form applies.
pub struct Generated {
    pub graph: Graph,
    pub predicted: Option<Vec<VertexSet>>,
    pub warnings: Vec<String>,
}

/// Builds a graph from a family spec (`M k square|offset`, `fan n [sizes]`,
/// `semicone-of <expr>`) or a block expression.
pub fn generate(spec: &str) -> Result<Generated> {
    let spec = spec.trim();
    let mut words = spec.split_whitespace();
    match words.next() {
        Some("M") => {
            let k: usize = words
                .next()
                .ok_or_else(|| anyhow!("expected `M <k> square|offset`"))?
                .parse()
                .context("k must be an integer")?;
            let square = match words.next() {
                Some("square") => true,
                Some("offset") => false,
                other => bail!("expected `square` or `offset`, found {other:?}"),
            };
            let family = Family::Complete { k, square };
            let predicted = predict_cutsets(&family)?;
            Ok(Generated {
                graph: family.graph()?,
                predicted: Some(predicted.sets()),
                warnings: Vec::new(),
            })
        }
        Some("fan") => {
            let rest = spec["fan".len()..].trim();
            let expr = parse_expr(&format!("K{rest}"))?;
            from_expr(&expr)
        }
        Some("semicone-of") => {
            let rest = spec["semicone-of".len()..].trim();
            let base = load_graph(rest)?;
            let h = base.graph;
            let bip = h
                .bipartition()
                .ok_or_else(|| anyhow!("the base graph is not bipartite"))?;
            let graph = semicone(&h, bip)?;
            let mut warnings = base.warnings;
            let predicted = match predict_semicone(&h, bip, &enumerate_cut_sets(&h)) {
                Ok(p) => Some(p),
                Err(e) => {
                    warnings.push(format!("no closed form for the cut sets: {e}"));
                    None
                }
            };
            Ok(Generated {
                graph,
                predicted,
                warnings,
            })
        }
        _ => from_expr(&parse_expr(spec)?),
    }
}

fn from_expr(expr: &BlockExpr) -> Result<Generated> {
    let e = elaborate(expr)?;
    Ok(Generated {
        graph: e.graph,
        predicted: e.predicted,
        warnings: e.warnings,
    })
}
