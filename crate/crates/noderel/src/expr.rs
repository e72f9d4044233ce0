//! Graph expressions: a base graph under a pipeline of clique substitutions
//! and one-vertex extensions, with both explicit-graph semantics (`realize`)
//! and polynomial semantics (`rel_algebra`).
//!
//! Text form: a leaf (`P5`, `K3`, or `G(file.edges)`) followed by postfix
//! operators, e.g. `P5 | sub 3 | addIso | sub 4 | addUniv`. Whitespace is
//! insignificant.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on the order of explicitly realized graphs.
pub const DEFAULT_REALIZE_CAP: u64 = 1_000_000;

/// A leaf of a graph expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseGraph {
    Path(u32),
    Complete(u32),
    /// An explicit graph, optionally carrying the source path it was
    /// loaded from so the expression can be rendered back to text.
    Explicit {
        source: Option<String>,
        graph: Graph,
    },
}

impl BaseGraph {
    pub fn order(&self) -> u64 {
        match self {
            BaseGraph::Path(n) | BaseGraph::Complete(n) => *n as u64,
            BaseGraph::Explicit { graph, .. } => graph.order() as u64,
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        match self {
            BaseGraph::Path(n) => Graph::path(*n as usize),
            BaseGraph::Complete(n) => Graph::complete(*n as usize),
            BaseGraph::Explicit { graph, .. } => Ok(graph.clone()),
        }
    }

    fn to_dsl(&self) -> String {
        match self {
            BaseGraph::Path(n) => format!("P{n}"),
            BaseGraph::Complete(n) => format!("K{n}"),
            BaseGraph::Explicit {
                source: Some(path), ..
            } => format!("G({path})"),
            BaseGraph::Explicit { source: None, .. } => "G(?)".to_string(),
        }
    }
}

/// Expression tree over base graphs with the three unary operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphExpr {
    Base(BaseGraph),
    SubClique { child: Box<GraphExpr>, l: u32 },
    AddIsolated(Box<GraphExpr>),
    AddUniversal(Box<GraphExpr>),
}

impl GraphExpr {
    /// Leaf for the path of order n.
    pub fn path(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder);
        }
        Ok(GraphExpr::Base(BaseGraph::Path(n)))
    }

    /// Leaf for the complete graph of order n.
    pub fn complete(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder);
        }
        Ok(GraphExpr::Base(BaseGraph::Complete(n)))
    }

    pub fn from_graph(g: Graph) -> Self {
        GraphExpr::Base(BaseGraph::Explicit {
            source: None,
            graph: g,
        })
    }

    pub fn from_named_graph(source: String, g: Graph) -> Self {
        GraphExpr::Base(BaseGraph::Explicit {
            source: Some(source),
            graph: g,
        })
    }

    /// Wraps the expression in a clique substitution; l = 1 is the identity
    /// on realization.
    pub fn sub_clique(self, l: u32) -> Result<Self> {
        if l == 0 {
            return Err(Error::Domain("clique size must be at least 1".into()));
        }
        Ok(GraphExpr::SubClique {
            child: Box::new(self),
            l,
        })
    }

    pub fn add_isolated(self) -> Self {
        GraphExpr::AddIsolated(Box::new(self))
    }

    pub fn add_universal(self) -> Self {
        GraphExpr::AddUniversal(Box::new(self))
    }

    /// Order of the realized graph, without realizing it.
    pub fn order(&self) -> u128 {
        match self {
            GraphExpr::Base(b) => b.order() as u128,
            GraphExpr::SubClique { child, l } => child.order().saturating_mul(*l as u128),
            GraphExpr::AddIsolated(child) | GraphExpr::AddUniversal(child) => {
                child.order().saturating_add(1)
            }
        }
    }

    /// Builds the explicit graph, with the default realization cap.
    pub fn realize(&self) -> Result<Graph> {
        self.realize_with_cap(DEFAULT_REALIZE_CAP)
    }

    pub fn realize_with_cap(&self, cap: u64) -> Result<Graph> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::SizeLimit {
                what: "realized graph",
                size: order,
                cap: cap as u128,
            });
        }
        self.realize_unchecked()
    }

    fn realize_unchecked(&self) -> Result<Graph> {
        match self {
            GraphExpr::Base(b) => b.to_graph(),
            GraphExpr::SubClique { child, l } => {
                Ok(child.realize_unchecked()?.lex_product_clique(*l as usize))
            }
            GraphExpr::AddIsolated(child) => Ok(child.realize_unchecked()?.add_isolated()),
            GraphExpr::AddUniversal(child) => Ok(child.realize_unchecked()?.add_universal()),
        }
    }

    /// Canonical text form.
    pub fn to_dsl(&self) -> String {
        let mut ops: Vec<String> = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                GraphExpr::Base(b) => {
                    let mut out = b.to_dsl();
                    for op in ops.iter().rev() {
                        out.push_str(" | ");
                        out.push_str(op);
                    }
                    return out;
                }
                GraphExpr::SubClique { child, l } => {
                    ops.push(format!("sub {l}"));
                    cur = child;
                }
                GraphExpr::AddIsolated(child) => {
                    ops.push("addIso".to_string());
                    cur = child;
                }
                GraphExpr::AddUniversal(child) => {
                    ops.push("addUniv".to_string());
                    cur = child;
                }
            }
        }
    }

    /// Parses the text form. `G(path)` leaves are loaded from disk relative
    /// to the current directory.
    pub fn parse(input: &str) -> Result<Self> {
        Parser::new(input).parse()
    }
}

impl std::fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Token {
    Word(String),
    Int(u32),
    Pipe,
    End,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser { input, pos: 0 }
    }

    fn err(&self, at: usize, msg: impl Into<String>) -> Error {
        Error::ParseDsl {
            column: at + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.input[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    fn next_token(&mut self) -> Result<(usize, Token)> {
        self.skip_ws();
        let at = self.pos;
        let rest = &self.input[self.pos..];
        let Some(c) = rest.chars().next() else {
            return Ok((at, Token::End));
        };
        if c == '|' {
            self.pos += 1;
            return Ok((at, Token::Pipe));
        }
        if c.is_ascii_digit() {
            let end = rest
                .find(|ch: char| !ch.is_ascii_digit())
                .unwrap_or(rest.len());
            let text = &rest[..end];
            self.pos += end;
            let n: u32 = text
                .parse()
                .map_err(|_| self.err(at, format!("integer out of range: {text}")))?;
            return Ok((at, Token::Int(n)));
        }
        if c.is_ascii_alphabetic() {
            let end = rest
                .find(|ch: char| !ch.is_ascii_alphabetic())
                .unwrap_or(rest.len());
            let word = rest[..end].to_string();
            self.pos += end;
            return Ok((at, Token::Word(word)));
        }
        Err(self.err(at, format!("unexpected character {c:?}")))
    }

    fn expect_int(&mut self, what: &str) -> Result<u32> {
        match self.next_token()? {
            (_, Token::Int(n)) => Ok(n),
            (at, t) => Err(self.err(at, format!("expected {what}, found {t:?}"))),
        }
    }

    fn parse(mut self) -> Result<GraphExpr> {
        let mut expr = self.parse_leaf()?;
        loop {
            match self.next_token()? {
                (_, Token::End) => return Ok(expr),
                (_, Token::Pipe) => {
                    expr = self.parse_op(expr)?;
                }
                (at, t) => return Err(self.err(at, format!("expected '|' or end, found {t:?}"))),
            }
        }
    }

    fn parse_leaf(&mut self) -> Result<GraphExpr> {
        match self.next_token()? {
            (at, Token::Word(w)) => match w.as_str() {
                "P" => {
                    let n = self.expect_int("path order")?;
                    GraphExpr::path(n).map_err(|_| self.err(at, "path order must be at least 1"))
                }
                "K" => {
                    let n = self.expect_int("clique order")?;
                    GraphExpr::complete(n)
                        .map_err(|_| self.err(at, "clique order must be at least 1"))
                }
                "G" => self.parse_file_leaf(at),
                other => Err(self.err(at, format!("unknown leaf name {other:?}"))),
            },
            (at, t) => Err(self.err(at, format!("expected a leaf, found {t:?}"))),
        }
    }

    fn parse_file_leaf(&mut self, at: usize) -> Result<GraphExpr> {
        self.skip_ws();
        if !self.input[self.pos..].starts_with('(') {
            return Err(self.err(self.pos, "expected '(' after G"));
        }
        self.pos += 1;
        let rest = &self.input[self.pos..];
        let Some(close) = rest.find(')') else {
            return Err(self.err(at, "unterminated G(...) leaf"));
        };
        let path = rest[..close].trim().to_string();
        self.pos += close + 1;
        if path.is_empty() {
            return Err(self.err(at, "empty path in G(...)"));
        }
        let graph = crate::graph_io::read_edge_list(std::path::Path::new(&path))?;
        Ok(GraphExpr::from_named_graph(path, graph))
    }

    fn parse_op(&mut self, child: GraphExpr) -> Result<GraphExpr> {
        match self.next_token()? {
            (at, Token::Word(w)) => match w.as_str() {
                "sub" => {
                    let l = self.expect_int("clique size")?;
                    child
                        .sub_clique(l)
                        .map_err(|_| self.err(at, "clique size must be at least 1"))
                }
                "addIso" => Ok(child.add_isolated()),
                "addUniv" => Ok(child.add_universal()),
                other => Err(self.err(at, format!("unknown operator {other:?}"))),
            },
            (at, t) => Err(self.err(at, format!("expected an operator, found {t:?}"))),
        }
    }
}
