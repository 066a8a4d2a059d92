//! The species expression language.
//!
//! ```text
//! expr   := term ("+" term)*
//! term   := factor ("*" factor)*
//! factor := atom | call | "(" expr ")"
//! call   := IDENT "(" arg ("," arg)* ")"
//! ```
//!
//! Atoms are `X 1 E Ep L Lp C S Sp`. Calls take expressions or integers
//! depending on the name: `Ek(k)`, `Xpow(n)`, `OnePlusXpow(n)`,
//! `necklace(a)`, `aperiodic(a)`, `restrict(F, n)`, `deriv(F)`,
//! `point(F)`, `plus(F)`, `hct(F)`, and the binary `aprod`, `maprod`,
//! `cart`, `comp`. Both operators are left-associative and `*` binds
//! tighter than `+`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::species::{NodePath, SpeciesExpr};

/// Byte offsets `start..end` into the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedProgram {
    pub source: String,
    pub expr: SpeciesExpr,
    /// Source range of every node, keyed by its path from the root.
    pub spans: BTreeMap<NodePath, Span>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}; expected {}", join_expected(.expected))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: BTreeSet<String>,
}

fn join_expected(e: &BTreeSet<String>) -> String {
    e.iter().cloned().collect::<Vec<_>>().join(" or ")
}

/// 1-based line and column of a byte offset.
pub fn line_column(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Plus,
    Star,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

const EXPRESSION: &str = "expression";
const INTEGER: &str = "integer";

#[derive(Clone, Copy)]
enum Arg {
    Expr,
    Int,
}

fn signature(name: &str) -> Option<&'static [Arg]> {
    use Arg::*;
    Some(match name {
        "Ek" | "Xpow" | "OnePlusXpow" | "necklace" | "aperiodic" => &[Int],
        "deriv" | "point" | "plus" | "hct" => &[Expr],
        "aprod" | "maprod" | "cart" | "comp" => &[Expr, Expr],
        "restrict" => &[Expr, Int],
        _ => return None,
    })
}

fn atom(name: &str) -> Option<SpeciesExpr> {
    use SpeciesExpr::*;
    Some(match name {
        "X" => X,
        "E" => E,
        "Ep" => Eplus,
        "L" => L,
        "Lp" => Lplus,
        "C" => C,
        "S" => S,
        "Sp" => Splus,
        _ => return None,
    })
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, Span)>, ParseError> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let t = lx.next()?;
            let eof = t.0 == Tok::Eof;
            out.push(t);
            if eof {
                return Ok(out);
            }
        }
    }

    fn next(&mut self) -> Result<(Tok, Span), ParseError> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        let start = self.pos;
        let Some(c) = trimmed.chars().next() else {
            return Ok((Tok::Eof, Span { start, end: start }));
        };
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            c if c.is_ascii_digit() => {
                let len = trimmed.find(|c: char| !c.is_ascii_digit()).unwrap_or(trimmed.len());
                let digits = &trimmed[..len];
                self.pos += len;
                let n = digits.parse().map_err(|_| {
                    error(self.src, start, format!("integer `{digits}` is too large"), [INTEGER])
                })?;
                return Ok((Tok::Int(n), Span { start, end: self.pos }));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = trimmed
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(trimmed.len());
                self.pos += len;
                return Ok((Tok::Ident(trimmed[..len].to_string()), Span { start, end: self.pos }));
            }
            other => {
                return Err(error(self.src, start, format!("unexpected character `{other}`"), [EXPRESSION]))
            }
        };
        self.pos += c.len_utf8();
        Ok((tok, Span { start, end: self.pos }))
    }
}

fn error<'e>(src: &str, offset: usize, message: String, expected: impl IntoIterator<Item = &'e str>) -> ParseError {
    let (line, column) = line_column(src, offset);
    ParseError { line, column, message, expected: expected.into_iter().map(String::from).collect() }
}

/// Node spans in the same shape as the expression tree.
struct SpanTree {
    span: Span,
    children: Vec<SpanTree>,
}

impl SpanTree {
    fn flatten(self, path: NodePath, out: &mut BTreeMap<NodePath, Span>) {
        out.insert(path.clone(), self.span);
        for (i, c) in self.children.into_iter().enumerate() {
            c.flatten(path.child(i), out);
        }
    }
}

type Node = (SpeciesExpr, SpanTree);

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, Span)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &(Tok, Span) {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn unexpected<'e>(&self, expected: impl IntoIterator<Item = &'e str>) -> ParseError {
        let (tok, span) = self.peek();
        error(self.src, span.start, format!("unexpected {tok}"), expected)
    }

    fn expect(&mut self, want: Tok, name: &str) -> Result<Span, ParseError> {
        if self.peek().0 == want {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected([name]))
        }
    }

    fn binary(
        &mut self,
        op: Tok,
        next: fn(&mut Self) -> Result<Node, ParseError>,
        build: fn(SpeciesExpr, SpeciesExpr) -> SpeciesExpr,
    ) -> Result<Node, ParseError> {
        let (mut expr, mut tree) = next(self)?;
        while self.peek().0 == op {
            self.bump();
            let (rhs, rtree) = next(self)?;
            let span = Span { start: tree.span.start, end: rtree.span.end };
            expr = build(expr, rhs);
            tree = SpanTree { span, children: vec![tree, rtree] };
        }
        Ok((expr, tree))
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        self.binary(Tok::Plus, Self::term, SpeciesExpr::sum)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        self.binary(Tok::Star, Self::factor, SpeciesExpr::prod)
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        match self.peek().0 {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected([INTEGER])),
        }
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        let (tok, span) = self.peek().clone();
        match tok {
            Tok::Int(1) => {
                self.bump();
                Ok((SpeciesExpr::One, SpanTree { span, children: vec![] }))
            }
            Tok::LParen => {
                self.bump();
                let (e, mut tree) = self.expr()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                tree.span = Span { start: span.start, end: close.end };
                Ok((e, tree))
            }
            Tok::Ident(name) => {
                if let Some(a) = atom(&name) {
                    self.bump();
                    return Ok((a, SpanTree { span, children: vec![] }));
                }
                let Some(sig) = signature(&name) else {
                    return Err(error(self.src, span.start, format!("unknown name `{name}`"), [EXPRESSION]));
                };
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let mut exprs = Vec::new();
                let mut ints = Vec::new();
                for (i, arg) in sig.iter().enumerate() {
                    if i > 0 {
                        self.expect(Tok::Comma, "`,`")?;
                    }
                    match arg {
                        Arg::Expr => exprs.push(self.expr()?),
                        Arg::Int => ints.push(self.integer()?),
                    }
                }
                let close = self.expect(Tok::RParen, "`)`")?;
                let span = Span { start: span.start, end: close.end };
                let (mut es, trees): (Vec<_>, Vec<_>) = exprs.into_iter().unzip();
                let mut arg = || es.remove(0);
                use SpeciesExpr as Sp;
                let e = match name.as_str() {
                    "Ek" => Sp::Ek(ints[0]),
                    "Xpow" => Sp::XPow(ints[0]),
                    "OnePlusXpow" => Sp::OnePlusXPow(ints[0]),
                    "necklace" => Sp::Necklace(ints[0]),
                    "aperiodic" => Sp::AperiodicNecklace(ints[0]),
                    "deriv" => Sp::deriv(arg()),
                    "point" => Sp::point(arg()),
                    "plus" => Sp::nonempty(arg()),
                    "hct" => Sp::hct(arg()),
                    "restrict" => Sp::restrict(arg(), ints[0]),
                    "aprod" => Sp::aprod(arg(), arg()),
                    "maprod" => Sp::maprod(arg(), arg()),
                    "cart" => Sp::cart(arg(), arg()),
                    "comp" => Sp::subst(arg(), arg()),
                    _ => unreachable!("signature covers every call"),
                };
                Ok((e, SpanTree { span, children: trees }))
            }
            _ => Err(self.unexpected([EXPRESSION])),
        }
    }
}

pub fn parse(text: &str) -> Result<ParsedProgram, ParseError> {
    let mut p = Parser { src: text, toks: Lexer::tokens(text)?, at: 0 };
    let (expr, tree) = p.expr()?;
    if p.peek().0 != Tok::Eof {
        return Err(p.unexpected(["`+`", "`*`", "end of input"]));
    }
    let mut spans = BTreeMap::new();
    tree.flatten(NodePath::root(), &mut spans);
    Ok(ParsedProgram { source: text.to_string(), expr, spans })
}

/// Parses and returns only the expression.
pub fn parse_expr(text: &str) -> Result<SpeciesExpr, ParseError> {
    parse(text).map(|p| p.expr)
}
