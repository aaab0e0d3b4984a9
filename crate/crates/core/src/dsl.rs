//! A small expression language for glued graphs.
//!
//! ```text
//! expr  := chain ('*' chain)*
//! chain := atom ('o' atom)*
//! atom  := 'F' INT | 'K' INT '[' INT (',' INT)* ']' | '(' expr ')'
//! ```
//!
//! Both operators associate to the left and `o` binds tighter than `*`. Every gluing uses
//! the right leaf of the left operand and the left leaf of the right operand. `F m` is the
//! staircase graph with leaves `1` (left) and `2m` (right). `K n [r1, …, rk]` is the fan graph
//! of `K_n` over consecutive blocks of sizes `r1, …, rk`; its left leaf hangs off the first
//! block and its right leaf off the last one.
//!
//! `F2` at either end of an `o` chain is rewritten with the identities `F2 o X = F1 * X` and
//! `X o F2 = X * F1`. An `F2` strictly inside a chain is glued without the degree condition
//! and produces a warning, since the result is not unmixed. `F1` inside a chain is rejected.

use std::fmt;

use crate::construct::{
    circ_glue, circ_glue_relaxed, fan_graph, make_f, predict_circ, predict_f, predict_fan,
    predict_star, star_glue, Glued,
};
use crate::cutset::CutSetFamily;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BlockExpr {
    F(usize),
    Fan { n: usize, sizes: Vec<usize> },
    Star(Box<BlockExpr>, Box<BlockExpr>),
    Circ(Box<BlockExpr>, Box<BlockExpr>),
}

impl BlockExpr {
    pub fn star(a: BlockExpr, b: BlockExpr) -> Self {
        BlockExpr::Star(Box::new(a), Box::new(b))
    }

    pub fn circ(a: BlockExpr, b: BlockExpr) -> Self {
        BlockExpr::Circ(Box::new(a), Box::new(b))
    }

    /// Number of vertices of the elaborated graph.
    pub fn vertex_count(&self) -> usize {
        match self {
            BlockExpr::F(m) => 2 * m,
            BlockExpr::Fan { n, sizes } => n + sizes.iter().sum::<usize>(),
            BlockExpr::Star(a, b) => a.vertex_count() + b.vertex_count() - 1,
            BlockExpr::Circ(a, b) => a.vertex_count() + b.vertex_count() - 3,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            BlockExpr::F(_) | BlockExpr::Fan { .. } => 2,
            BlockExpr::Circ(..) => 1,
            BlockExpr::Star(..) => 0,
        }
    }

    /// Operands of a left-nested `o` chain, in order.
    fn chain_items(&self) -> Vec<&BlockExpr> {
        match self {
            BlockExpr::Circ(a, b) => {
                let mut items = a.chain_items();
                items.push(b);
                items
            }
            other => vec![other],
        }
    }
}

impl fmt::Display for BlockExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, e: &BlockExpr, min: u8) -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            BlockExpr::F(m) => write!(f, "F{m}"),
            BlockExpr::Fan { n, sizes } => {
                let s: Vec<String> = sizes.iter().map(|r| r.to_string()).collect();
                write!(f, "K{n}[{}]", s.join(","))
            }
            BlockExpr::Star(a, b) => {
                side(f, a, 0)?;
                f.write_str(" * ")?;
                side(f, b, 1)
            }
            BlockExpr::Circ(a, b) => {
                side(f, a, 1)?;
                f.write_str(" o ")?;
                side(f, b, 2)
            }
        }
    }
}

/// Parses an expression. Errors carry the character position of the problem.
pub fn parse_expr(input: &str) -> Result<BlockExpr> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<BlockExpr> {
        let mut e = self.chain()?;
        while matches!(self.peek(), Some('*' | '∗')) {
            self.pos += 1;
            let rhs = self.chain()?;
            e = BlockExpr::star(e, rhs);
        }
        Ok(e)
    }

    fn chain(&mut self) -> Result<BlockExpr> {
        let mut e = self.atom()?;
        while matches!(self.peek(), Some('o' | '∘')) {
            self.pos += 1;
            let rhs = self.atom()?;
            e = BlockExpr::circ(e, rhs);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<BlockExpr> {
        match self.peek() {
            Some('F') => {
                self.pos += 1;
                let m = self.int()?;
                if m == 0 {
                    return Err(self.error("staircase size must be positive"));
                }
                Ok(BlockExpr::F(m))
            }
            Some('K') => {
                self.pos += 1;
                let n = self.int()?;
                self.eat('[')?;
                let mut sizes = vec![self.int()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    sizes.push(self.int()?);
                }
                self.eat(']')?;
                if sizes.contains(&0) {
                    return Err(self.error("fan block sizes must be positive"));
                }
                if sizes.iter().sum::<usize>() > n {
                    return Err(self.error("fan block sizes exceed the clique size"));
                }
                Ok(BlockExpr::Fan { n, sizes })
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.eat(')')?;
                Ok(e)
            }
            Some(_) => Err(self.error("expected 'F', 'K' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "number too large".into(),
        })
    }
}

/// A built graph with its two designated leaves.
#[derive(Clone, Debug)]
pub struct Elaboration {
    pub graph: Graph,
    pub left_leaf: Vertex,
    pub right_leaf: Vertex,
    pub warnings: Vec<String>,
    /// Cut sets predicted from the closed forms, when every step has one.
    pub predicted: Option<Vec<VertexSet>>,
}

/// Builds the graph described by an expression.
pub fn elaborate(expr: &BlockExpr) -> Result<Elaboration> {
    match expr {
        BlockExpr::F(m) => {
            let graph = make_f(*m)?;
            Ok(Elaboration {
                graph,
                left_leaf: 1,
                right_leaf: 2 * m,
                warnings: Vec::new(),
                predicted: Some(predict_f(*m)),
            })
        }
        BlockExpr::Fan { n, sizes } => {
            let mut sets = Vec::new();
            let mut next = 1;
            for &r in sizes {
                sets.push((next..next + r).collect::<Vec<Vertex>>());
                next += r;
            }
            let graph = fan_graph(*n, &sets)?;
            let last_offset: usize = sizes[..sizes.len() - 1].iter().sum();
            Ok(Elaboration {
                graph,
                left_leaf: n + 1,
                right_leaf: n + last_offset + 1,
                warnings: Vec::new(),
                predicted: Some(predict_fan(*n, &sets)),
            })
        }
        BlockExpr::Star(a, b) => star_of(elaborate(a)?, elaborate(b)?),
        BlockExpr::Circ(..) => elaborate_chain(&expr.chain_items()),
    }
}

fn star_of(a: Elaboration, b: Elaboration) -> Result<Elaboration> {
    let glued = star_glue(&a.graph, a.right_leaf, &b.graph, b.left_leaf)?;
    let predicted = match (&a.predicted, &b.predicted) {
        (Some(pa), Some(pb)) => {
            let fa = CutSetFamily::from_sets(&a.graph, pa.iter().copied());
            let fb = CutSetFamily::from_sets(&b.graph, pb.iter().copied());
            predict_star(
                &glued,
                &a.graph,
                a.right_leaf,
                &fa,
                &b.graph,
                b.left_leaf,
                &fb,
            )
            .ok()
        }
        _ => None,
    };
    finish(glued, &a, &b, predicted)
}

fn finish(
    glued: Glued,
    a: &Elaboration,
    b: &Elaboration,
    predicted: Option<Vec<VertexSet>>,
) -> Result<Elaboration> {
    let left_leaf = glued
        .map_left(a.left_leaf)
        .ok_or_else(|| Error::InvalidArgument("the left leaf was consumed by the gluing".into()))?;
    let right_leaf = glued.map_right(b.right_leaf).ok_or_else(|| {
        Error::InvalidArgument("the right leaf was consumed by the gluing".into())
    })?;
    let mut warnings = a.warnings.clone();
    warnings.extend(b.warnings.iter().cloned());
    Ok(Elaboration {
        graph: glued.graph,
        left_leaf,
        right_leaf,
        warnings,
        predicted,
    })
}

fn elaborate_chain(items: &[&BlockExpr]) -> Result<Elaboration> {
    if items.len() == 1 {
        return elaborate(items[0]);
    }
    if items.iter().any(|e| **e == BlockExpr::F(1)) {
        return Err(Error::InvalidArgument(
            "F1 cannot be an operand of 'o': its leaf neighbours have degree 1".into(),
        ));
    }
    let last = items.len() - 1;
    if *items[0] == BlockExpr::F(2) {
        return star_of(elaborate(&BlockExpr::F(1))?, elaborate_chain(&items[1..])?);
    }
    if *items[last] == BlockExpr::F(2) {
        return star_of(
            elaborate_chain(&items[..last])?,
            elaborate(&BlockExpr::F(1))?,
        );
    }
    let mut acc = elaborate(items[0])?;
    for i in 1..items.len() {
        let next = elaborate(items[i])?;
        let relaxed = *items[i - 1] == BlockExpr::F(2) || *items[i] == BlockExpr::F(2);
        let glued = if relaxed {
            circ_glue_relaxed(&acc.graph, acc.right_leaf, &next.graph, next.left_leaf)?
        } else {
            circ_glue(&acc.graph, acc.right_leaf, &next.graph, next.left_leaf)?
        };
        let predicted = match (&acc.predicted, &next.predicted, relaxed) {
            (Some(pa), Some(pb), false) => {
                let fa = CutSetFamily::from_sets(&acc.graph, pa.iter().copied());
                let fb = CutSetFamily::from_sets(&next.graph, pb.iter().copied());
                predict_circ(
                    &glued,
                    &acc.graph,
                    acc.right_leaf,
                    &fa,
                    &next.graph,
                    next.left_leaf,
                    &fb,
                )
                .ok()
            }
            _ => None,
        };
        let mut built = finish(glued, &acc, &next, predicted)?;
        if *items[i] == BlockExpr::F(2) {
            built.warnings.push(format!(
                "F2 at position {} of an 'o' chain is glued to a vertex of degree 2; the result is not unmixed",
                i + 1
            ));
        }
        acc = built;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::cutset::{enumerate_cut_sets, is_unmixed};

    #[test]
    fn parse_and_print() {
        let e = parse_expr("F3 * F3 o F4 * F1 * F3 o F3").unwrap();
        assert_eq!(e.to_string(), "F3 * F3 o F4 * F1 * F3 o F3");
        assert_eq!(e.vertex_count(), 25);
        let e = parse_expr(" ( F3*F4 ) o F3").unwrap();
        assert_eq!(e.to_string(), "(F3 * F4) o F3");
        let e = parse_expr("F3 * (F2 * F3)").unwrap();
        assert_eq!(e.to_string(), "F3 * (F2 * F3)");
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        assert_eq!(
            parse_expr("K5[2,3]").unwrap(),
            BlockExpr::Fan {
                n: 5,
                sizes: vec![2, 3]
            }
        );
    }

    #[test]
    fn parse_errors_have_positions() {
        assert!(matches!(
            parse_expr("F3 * "),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            parse_expr("F3 x F4"),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(parse_expr("F"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(
            parse_expr("(F3"),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(parse_expr("F0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("K3[2,2]"), Err(Error::Parse { .. })));
    }

    #[test]
    fn sizes_of_simple_gluings() {
        let e = elaborate(&parse_expr("F3 * F4").unwrap()).unwrap();
        assert_eq!(e.graph.n(), 13);
        let e = elaborate(&parse_expr("F3 o F4").unwrap()).unwrap();
        assert_eq!(e.graph.n(), 11);
        assert!(is_unmixed(&e.graph));
        assert_eq!(e.predicted.unwrap(), enumerate_cut_sets(&e.graph).sets());
    }

    #[test]
    fn chain_end_f2_is_a_star_with_f1() {
        let a = elaborate(&parse_expr("F2 o F3").unwrap()).unwrap();
        let b = elaborate(&parse_expr("F1 * F3").unwrap()).unwrap();
        assert_eq!(a.graph, b.graph);
        let a = elaborate(&parse_expr("F3 o F2").unwrap()).unwrap();
        let b = elaborate(&parse_expr("F3 * F1").unwrap()).unwrap();
        assert_eq!(a.graph, b.graph);
        assert!(a.warnings.is_empty());
    }

    #[test]
    fn interior_f2_warns_and_is_mixed() {
        let e = elaborate(&parse_expr("F3 o F2 o F3").unwrap()).unwrap();
        assert_eq!(e.graph.n(), 10);
        assert_eq!(e.warnings.len(), 1);
        assert!(e.predicted.is_none());
        assert!(!is_unmixed(&e.graph));
    }

    #[test]
    fn f1_in_chain_is_rejected() {
        assert!(elaborate(&parse_expr("F3 o F1").unwrap()).is_err());
        assert!(elaborate(&parse_expr("F1 o F3").unwrap()).is_err());
    }

    #[test]
    fn predictions_follow_the_structure() {
        for text in [
            "F3 * F3 o F4 * F1 * F3 o F3",
            "F4 o F3 o F3",
            "F2 * F1 * F5",
            "(F3 o F3) * F2",
        ] {
            let e = elaborate(&parse_expr(text).unwrap()).unwrap();
            let enumerated = enumerate_cut_sets(&e.graph).sets();
            assert_eq!(e.predicted.unwrap(), enumerated, "{text}");
        }
    }

    #[test]
    fn fan_atom() {
        let e = elaborate(&parse_expr("K4[2,2]").unwrap()).unwrap();
        assert_eq!(e.graph.n(), 8);
        assert_eq!((e.left_leaf, e.right_leaf), (5, 7));
        assert_eq!(e.graph.degree(5), 1);
        assert_eq!(e.graph.degree(7), 1);
        let staircase = elaborate(&parse_expr("F1 * F1").unwrap()).unwrap();
        assert!(is_isomorphic(
            &staircase.graph,
            &Graph::from_edges(3, &[(1, 2), (2, 3)]).unwrap()
        ));
    }
}
