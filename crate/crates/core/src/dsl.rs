//! Text formats: algebra description files and module expressions.
//!
//! An algebra file is line oriented:
//!
//! ```text
//! algebra counterexample
//! vertices 2
//! arrow x : 1 -> 1
//! arrow y : 1 -> 2
//! arrow z : 2 -> 1
//! relation x*y
//! relation x^3
//! field GF(3)
//! ```
//!
//! `#` starts a comment. Vertices are 1-based. `algebra` and `field` are
//! optional and default to `A` and `GF(3)`.
//!
//! Module expressions are terms such as `taun(quot(x + z), 3)`,
//! `sum(S(1), rad(P(2)))` or `rep([1,1]; y=[[1]])`; see [`parse_module_expr`].

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, MonomialAlgebra, Path, Quiver};
use crate::error::{Error, ParseError, Result};
use crate::homology;
use crate::linalg::{Matrix, PrimeField};
use crate::repmod::{self, Representation};

type PResult<T> = std::result::Result<T, ParseError>;

/// A value together with the 1-based position it was read from. Positions
/// are ignored by equality so that reprinted input compares equal.
#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub value: T,
    pub line: usize,
    pub column: usize,
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for Spanned<T> {}

impl<T> Spanned<T> {
    fn new(value: T, line: usize, column: usize) -> Self {
        Spanned {
            value,
            line,
            column,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }
}

// ---------------------------------------------------------------------------
// Lexer shared by both formats.

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Arrow => write!(f, "`->`"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Tokenizes `text`, which starts at the given line; `#` comments run to the
/// end of the line.
fn lex(text: &str, first_line: usize) -> PResult<Vec<Spanned<Tok>>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = first_line + k;
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
            } else if is_ident_start(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push(Spanned::new(
                    Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    col,
                ));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse::<u64>().map_err(|_| {
                    ParseError::new(line, col, format!("integer `{s}` is too large"))
                })?;
                out.push(Spanned::new(Tok::Int(n), line, col));
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                out.push(Spanned::new(Tok::Arrow, line, col));
                i += 2;
            } else if "()[],;=+-*^:".contains(c) {
                out.push(Spanned::new(Tok::Sym(c), line, col));
                i += 1;
            } else {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("unexpected character `{c}`"),
                ));
            }
        }
    }
    Ok(out)
}

/// Cursor over a token list; `end` is the position reported for "unexpected end".
struct Cursor {
    toks: Vec<Spanned<Tok>>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    fn new(toks: Vec<Spanned<Tok>>, end: (usize, usize)) -> Self {
        Cursor { toks, pos: 0, end }
    }

    fn peek(&self) -> Option<&Spanned<Tok>> {
        self.toks.get(self.pos)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let (l, c) = self.here();
        ParseError::new(l, c, message)
    }

    fn next(&mut self, what: &str) -> PResult<Spanned<Tok>> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(self.error_here(format!("expected {what}, found end of input"))),
        }
    }

    fn is_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(t) if t.value == Tok::Sym(c))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        let t = self.next(&format!("`{c}`"))?;
        if t.value == Tok::Sym(c) {
            Ok(())
        } else {
            Err(t.error(format!("expected `{c}`, found {}", t.value)))
        }
    }

    fn expect_arrow(&mut self) -> PResult<()> {
        let t = self.next("`->`")?;
        if t.value == Tok::Arrow {
            Ok(())
        } else {
            Err(t.error(format!("expected `->`, found {}", t.value)))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Spanned<String>> {
        let t = self.next(what)?;
        match t.value {
            Tok::Ident(s) => Ok(Spanned::new(s, t.line, t.column)),
            other => Err(ParseError::new(
                t.line,
                t.column,
                format!("expected {what}, found {other}"),
            )),
        }
    }

    fn int(&mut self, what: &str) -> PResult<Spanned<u64>> {
        let t = self.next(what)?;
        match t.value {
            Tok::Int(n) => Ok(Spanned::new(n, t.line, t.column)),
            other => Err(ParseError::new(
                t.line,
                t.column,
                format!("expected {what}, found {other}"),
            )),
        }
    }

    fn usize(&mut self, what: &str) -> PResult<Spanned<usize>> {
        let n = self.int(what)?;
        let v = usize::try_from(n.value).map_err(|_| n.error("integer out of range"))?;
        Ok(Spanned::new(v, n.line, n.column))
    }

    fn finish(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(t.error(format!("unexpected {}", t.value))),
        }
    }
}

// ---------------------------------------------------------------------------
// Algebra files.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub label: Spanned<String>,
    /// 1-based.
    pub source: Spanned<usize>,
    pub target: Spanned<usize>,
}

/// One factor `label^power` of a relation or path word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub label: Spanned<String>,
    pub power: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub vertices: usize,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<Vec<Atom>>,
    pub field: u32,
}

fn word_to_string(word: &[Atom]) -> String {
    word.iter()
        .map(|a| {
            if a.power == 1 {
                a.label.value.clone()
            } else {
                format!("{}^{}", a.label.value, a.power)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Splits a label sequence into maximal runs, `x x y` → `x^2*y`.
fn compress(labels: &[String]) -> Vec<Atom> {
    let mut out: Vec<Atom> = Vec::new();
    for l in labels {
        match out.last_mut() {
            Some(a) if a.label.value == *l => a.power += 1,
            _ => out.push(Atom {
                label: Spanned::new(l.clone(), 0, 0),
                power: 1,
            }),
        }
    }
    out
}

fn is_trivial_name(s: &str) -> bool {
    s.len() > 1 && s.starts_with('e') && s[1..].chars().all(|c| c.is_ascii_digit())
}

fn parse_word(cur: &mut Cursor) -> PResult<Vec<Atom>> {
    let mut word = Vec::new();
    loop {
        let label = cur.ident("an arrow label")?;
        let power = if cur.eat_sym('^') {
            let n = cur.usize("an exponent")?;
            if n.value == 0 {
                return Err(n.error("exponent must be positive"));
            }
            n.value
        } else {
            1
        };
        word.push(Atom { label, power });
        if !cur.eat_sym('*') {
            return Ok(word);
        }
    }
}

impl AlgebraSpec {
    /// Parses and validates an algebra file.
    pub fn parse(text: &str) -> PResult<Self> {
        let mut name: Option<String> = None;
        let mut vertices: Option<Spanned<usize>> = None;
        let mut arrows: Vec<ArrowDecl> = Vec::new();
        let mut relations: Vec<Vec<Atom>> = Vec::new();
        let mut field: Option<u32> = None;
        let mut last_line = 1;

        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            last_line = line;
            let toks = lex(raw, line)?;
            if toks.is_empty() {
                continue;
            }
            let end = (line, raw.chars().count() + 1);
            let mut cur = Cursor::new(toks, end);
            let kw = cur.ident("a keyword")?;
            match kw.value.as_str() {
                "algebra" => {
                    if name.is_some() {
                        return Err(kw.error("duplicate `algebra` line"));
                    }
                    let n = cur.ident("an algebra name")?;
                    name = Some(n.value);
                }
                "vertices" => {
                    if vertices.is_some() {
                        return Err(kw.error("duplicate `vertices` line"));
                    }
                    let n = cur.usize("a vertex count")?;
                    if n.value == 0 {
                        return Err(n.error("a quiver needs at least one vertex"));
                    }
                    vertices = Some(n);
                }
                "arrow" => {
                    let label = cur.ident("an arrow label")?;
                    cur.expect_sym(':')?;
                    let source = cur.usize("a source vertex")?;
                    cur.expect_arrow()?;
                    let target = cur.usize("a target vertex")?;
                    arrows.push(ArrowDecl {
                        label,
                        source,
                        target,
                    });
                }
                "relation" => relations.push(parse_word(&mut cur)?),
                "field" => {
                    if field.is_some() {
                        return Err(kw.error("duplicate `field` line"));
                    }
                    let gf = cur.ident("`GF`")?;
                    if gf.value != "GF" {
                        return Err(gf.error(format!("expected `GF`, found `{}`", gf.value)));
                    }
                    cur.expect_sym('(')?;
                    let p = cur.int("a prime")?;
                    let value = u32::try_from(p.value)
                        .ok()
                        .filter(|&v| PrimeField::new(v).is_ok())
                        .ok_or_else(|| {
                            p.error(format!("{} is not a supported prime modulus", p.value))
                        })?;
                    cur.expect_sym(')')?;
                    field = Some(value);
                }
                other => return Err(kw.error(format!("unknown keyword `{other}`"))),
            }
            cur.finish()?;
        }

        let vertices =
            vertices.ok_or_else(|| ParseError::new(last_line, 1, "missing `vertices` line"))?;
        let spec = AlgebraSpec {
            name: name.unwrap_or_else(|| "A".to_string()),
            vertices: vertices.value,
            arrows,
            relations,
            field: field.unwrap_or(3),
        };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> PResult<()> {
        for (k, a) in self.arrows.iter().enumerate() {
            if is_trivial_name(&a.label.value) {
                return Err(a.label.error(format!(
                    "`{}` is reserved for a trivial path",
                    a.label.value
                )));
            }
            if self.arrows[..k]
                .iter()
                .any(|b| b.label.value == a.label.value)
            {
                return Err(a
                    .label
                    .error(format!("duplicate arrow label `{}`", a.label.value)));
            }
            for v in [&a.source, &a.target] {
                if v.value == 0 || v.value > self.vertices {
                    return Err(v.error(format!(
                        "vertex {} out of range 1..={}",
                        v.value, self.vertices
                    )));
                }
            }
        }
        for word in &self.relations {
            let mut end: Option<usize> = None;
            let mut len = 0;
            for atom in word {
                let a = self
                    .arrows
                    .iter()
                    .find(|a| a.label.value == atom.label.value)
                    .ok_or_else(|| {
                        atom.label
                            .error(format!("unknown arrow `{}`", atom.label.value))
                    })?;
                let composes = end.is_none_or(|e| e == a.source.value)
                    && (atom.power == 1 || a.source.value == a.target.value);
                if !composes {
                    return Err(atom.label.error(format!(
                        "`{}` does not compose with the preceding arrows",
                        atom.label.value
                    )));
                }
                end = Some(a.target.value);
                len += atom.power;
            }
            if len < 2 {
                let first = &word[0].label;
                return Err(first.error("relations must have length at least 2"));
            }
        }
        Ok(())
    }

    /// Canonical text form; [`AlgebraSpec::parse`] reads it back to an equal spec.
    pub fn to_text(&self) -> String {
        let mut s = format!("algebra {}\nvertices {}\n", self.name, self.vertices);
        for a in &self.arrows {
            s += &format!(
                "arrow {} : {} -> {}\n",
                a.label.value, a.source.value, a.target.value
            );
        }
        for r in &self.relations {
            s += &format!("relation {}\n", word_to_string(r));
        }
        s += &format!("field GF({})\n", self.field);
        s
    }

    pub fn with_field(mut self, p: u32) -> Self {
        self.field = p;
        self
    }

    pub fn build(&self) -> Result<Arc<MonomialAlgebra>> {
        let field = PrimeField::new(self.field)?;
        let triples: Vec<(&str, usize, usize)> = self
            .arrows
            .iter()
            .map(|a| {
                (
                    a.label.value.as_str(),
                    a.source.value - 1,
                    a.target.value - 1,
                )
            })
            .collect();
        let quiver = Quiver::from_triples(self.vertices, &triples)?;
        let rels = self
            .relations
            .iter()
            .map(|w| {
                let labels: Vec<&str> = w
                    .iter()
                    .flat_map(|a| std::iter::repeat_n(a.label.value.as_str(), a.power))
                    .collect();
                quiver.path_from_labels(&labels)
            })
            .collect::<Result<Vec<Path>>>()?;
        MonomialAlgebra::new(self.name.clone(), quiver, rels, field)
    }

    /// The spec describing an existing algebra.
    pub fn from_algebra(algebra: &MonomialAlgebra) -> Self {
        let q = algebra.quiver();
        AlgebraSpec {
            name: algebra.name().to_string(),
            vertices: q.vertex_count(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowDecl {
                    label: Spanned::new(a.label.clone(), 0, 0),
                    source: Spanned::new(a.source + 1, 0, 0),
                    target: Spanned::new(a.target + 1, 0, 0),
                })
                .collect(),
            relations: algebra
                .relations()
                .iter()
                .map(|r| {
                    let labels: Vec<String> =
                        r.arrows.iter().map(|&a| q.arrow(a).label.clone()).collect();
                    compress(&labels)
                })
                .collect(),
            field: algebra.field().modulus(),
        }
    }
}

/// Parses an algebra file and builds the algebra.
pub fn parse_algebra(text: &str) -> Result<Arc<MonomialAlgebra>> {
    AlgebraSpec::parse(text)?.build()
}

/// The text form of an algebra.
pub fn print_algebra(algebra: &MonomialAlgebra) -> String {
    AlgebraSpec::from_algebra(algebra).to_text()
}

// ---------------------------------------------------------------------------
// Module expressions.

/// `c·w` with a nonzero integer coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub word: Vec<Atom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleExpr {
    pub kind: ExprKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Projective(Spanned<usize>),
    Injective(Spanned<usize>),
    Simple(Spanned<usize>),
    Radical(Box<ModuleExpr>),
    Socle(Box<ModuleExpr>),
    Top(Box<ModuleExpr>),
    /// `M / soc M`.
    SocleQuotient(Box<ModuleExpr>),
    Dual(Box<ModuleExpr>),
    Transpose(Box<ModuleExpr>),
    Tau(Box<ModuleExpr>),
    TauInverse(Box<ModuleExpr>),
    Syzygy(Box<ModuleExpr>, usize),
    Cosyzygy(Box<ModuleExpr>, usize),
    TauN(Box<ModuleExpr>, Spanned<usize>),
    Sum(Vec<ModuleExpr>),
    /// `A / Σ gᵢA`, each generator a sum of terms.
    Quot(Vec<Vec<Term>>),
    /// Dimension vector and `(arrow, rows)` pairs; unlisted arrows act as zero.
    Explicit {
        dims: Vec<usize>,
        actions: Vec<(Spanned<String>, Vec<Vec<i64>>)>,
    },
}

const UNARY: &[&str] = &["rad", "soc", "top", "qsoc", "dual", "tr", "tau", "tauinv"];

/// Parses a module expression.
///
/// ```text
/// expr := P(i) | I(i) | S(i)
///       | rad(expr) | soc(expr) | top(expr) | qsoc(expr)
///       | dual(expr) | tr(expr) | tau(expr) | tauinv(expr)
///       | syz(expr, n) | cosyz(expr, n) | taun(expr, i)
///       | sum(expr, expr, ...)
///       | quot(gen, gen, ...)        gen  := [+|-] term (('+'|'-') term)*
///                                    term := [c '*'] word, word := atom ('*' atom)*
///                                    atom := label['^' k] | e<i>
///       | rep([d1, ..., dn]; a=[[..], ..], ...)
/// ```
pub fn parse_module_expr(text: &str) -> PResult<ModuleExpr> {
    let toks = lex(text, 1)?;
    let lines: Vec<&str> = text.lines().collect();
    let end = (
        lines.len().max(1),
        lines.last().map_or(0, |l| l.chars().count()) + 1,
    );
    let mut cur = Cursor::new(toks, end);
    if cur.at_end() {
        return Err(cur.error_here("empty module expression"));
    }
    let e = parse_expr(&mut cur)?;
    cur.finish()?;
    Ok(e)
}

fn parse_expr(cur: &mut Cursor) -> PResult<ModuleExpr> {
    let head = cur.ident("a module expression")?;
    let (line, column) = (head.line, head.column);
    cur.expect_sym('(')?;
    let name = head.value.as_str();
    let kind = match name {
        "P" | "I" | "S" => {
            let v = cur.usize("a vertex")?;
            match name {
                "P" => ExprKind::Projective(v),
                "I" => ExprKind::Injective(v),
                _ => ExprKind::Simple(v),
            }
        }
        _ if UNARY.contains(&name) => {
            let inner = Box::new(parse_expr(cur)?);
            match name {
                "rad" => ExprKind::Radical(inner),
                "soc" => ExprKind::Socle(inner),
                "top" => ExprKind::Top(inner),
                "qsoc" => ExprKind::SocleQuotient(inner),
                "dual" => ExprKind::Dual(inner),
                "tr" => ExprKind::Transpose(inner),
                "tau" => ExprKind::Tau(inner),
                _ => ExprKind::TauInverse(inner),
            }
        }
        "syz" | "cosyz" | "taun" => {
            let inner = Box::new(parse_expr(cur)?);
            cur.expect_sym(',')?;
            let n = cur.usize("an integer")?;
            match name {
                "syz" => ExprKind::Syzygy(inner, n.value),
                "cosyz" => ExprKind::Cosyzygy(inner, n.value),
                _ => {
                    if n.value < 1 {
                        return Err(n.error("taun needs i >= 1"));
                    }
                    ExprKind::TauN(inner, n)
                }
            }
        }
        "sum" => {
            let mut parts = vec![parse_expr(cur)?];
            while cur.eat_sym(',') {
                parts.push(parse_expr(cur)?);
            }
            ExprKind::Sum(parts)
        }
        "quot" => {
            let mut gens = Vec::new();
            if !cur.is_sym(')') {
                gens.push(parse_generator(cur)?);
                while cur.eat_sym(',') {
                    gens.push(parse_generator(cur)?);
                }
            }
            ExprKind::Quot(gens)
        }
        "rep" => parse_explicit(cur)?,
        other => return Err(head.error(format!("unknown module constructor `{other}`"))),
    };
    cur.expect_sym(')')?;
    Ok(ModuleExpr { kind, line, column })
}

fn parse_generator(cur: &mut Cursor) -> PResult<Vec<Term>> {
    let mut terms = Vec::new();
    let mut sign = if cur.eat_sym('-') {
        -1
    } else {
        cur.eat_sym('+');
        1
    };
    loop {
        let coeff = match cur.peek() {
            Some(Spanned {
                value: Tok::Int(_), ..
            }) => {
                let c = cur.int("a coefficient")?;
                if !cur.is_sym('*') {
                    return Err(cur.error_here("expected `*` after a coefficient"));
                }
                cur.expect_sym('*')?;
                i64::try_from(c.value).map_err(|_| c.error("coefficient out of range"))?
            }
            _ => 1,
        };
        let word = parse_word(cur)?;
        terms.push(Term {
            coeff: sign * coeff,
            word,
        });
        if cur.eat_sym('+') {
            sign = 1;
        } else if cur.eat_sym('-') {
            sign = -1;
        } else {
            return Ok(terms);
        }
    }
}

fn parse_int_list(cur: &mut Cursor) -> PResult<Vec<i64>> {
    cur.expect_sym('[')?;
    let mut out = Vec::new();
    if cur.eat_sym(']') {
        return Ok(out);
    }
    loop {
        let neg = cur.eat_sym('-');
        let n = cur.int("an integer")?;
        let v = i64::try_from(n.value).map_err(|_| n.error("integer out of range"))?;
        out.push(if neg { -v } else { v });
        if cur.eat_sym(']') {
            return Ok(out);
        }
        cur.expect_sym(',')?;
    }
}

fn parse_explicit(cur: &mut Cursor) -> PResult<ExprKind> {
    let dims_pos = cur.here();
    let dims = parse_int_list(cur)?
        .into_iter()
        .map(|d| {
            usize::try_from(d)
                .map_err(|_| ParseError::new(dims_pos.0, dims_pos.1, "negative dimension"))
        })
        .collect::<PResult<Vec<usize>>>()?;
    let mut actions = Vec::new();
    if cur.eat_sym(';') {
        loop {
            let label = cur.ident("an arrow label")?;
            cur.expect_sym('=')?;
            cur.expect_sym('[')?;
            let mut rows = Vec::new();
            if !cur.eat_sym(']') {
                loop {
                    rows.push(parse_int_list(cur)?);
                    if cur.eat_sym(']') {
                        break;
                    }
                    cur.expect_sym(',')?;
                }
            }
            actions.push((label, rows));
            if !cur.eat_sym(',') {
                break;
            }
        }
    }
    Ok(ExprKind::Explicit { dims, actions })
}

fn terms_to_string(terms: &[Term]) -> String {
    let mut s = String::new();
    for (k, t) in terms.iter().enumerate() {
        let (neg, mag) = (t.coeff < 0, t.coeff.unsigned_abs());
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if mag != 1 {
            s += &format!("{mag}*");
        }
        s += &word_to_string(&t.word);
    }
    s
}

fn list_to_string(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Projective(v) => write!(f, "P({})", v.value),
            ExprKind::Injective(v) => write!(f, "I({})", v.value),
            ExprKind::Simple(v) => write!(f, "S({})", v.value),
            ExprKind::Radical(e) => write!(f, "rad({e})"),
            ExprKind::Socle(e) => write!(f, "soc({e})"),
            ExprKind::Top(e) => write!(f, "top({e})"),
            ExprKind::SocleQuotient(e) => write!(f, "qsoc({e})"),
            ExprKind::Dual(e) => write!(f, "dual({e})"),
            ExprKind::Transpose(e) => write!(f, "tr({e})"),
            ExprKind::Tau(e) => write!(f, "tau({e})"),
            ExprKind::TauInverse(e) => write!(f, "tauinv({e})"),
            ExprKind::Syzygy(e, n) => write!(f, "syz({e}, {n})"),
            ExprKind::Cosyzygy(e, n) => write!(f, "cosyz({e}, {n})"),
            ExprKind::TauN(e, i) => write!(f, "taun({e}, {})", i.value),
            ExprKind::Sum(parts) => {
                let s: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "sum({})", s.join(", "))
            }
            ExprKind::Quot(gens) => {
                let s: Vec<String> = gens.iter().map(|g| terms_to_string(g)).collect();
                write!(f, "quot({})", s.join(", "))
            }
            ExprKind::Explicit { dims, actions } => {
                let d: Vec<i64> = dims.iter().map(|&d| d as i64).collect();
                write!(f, "rep({}", list_to_string(&d))?;
                for (k, (label, rows)) in actions.iter().enumerate() {
                    let r: Vec<String> = rows.iter().map(|r| list_to_string(r)).collect();
                    let sep = if k == 0 { "; " } else { ", " };
                    write!(f, "{sep}{}=[{}]", label.value, r.join(","))?;
                }
                write!(f, ")")
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation.

impl ModuleExpr {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }

    fn lift<T>(&self, r: Result<T>) -> PResult<T> {
        r.map_err(|e| match e {
            Error::Parse(p) => p,
            other => self.error(other.to_string()),
        })
    }
}

fn check_vertex(algebra: &MonomialAlgebra, v: &Spanned<usize>) -> PResult<usize> {
    let n = algebra.vertex_count();
    if v.value == 0 || v.value > n {
        return Err(v.error(format!("vertex {} out of range 1..={n}", v.value)));
    }
    Ok(v.value - 1)
}

/// Resolves a word to a path; `e<i>` denotes the trivial path at vertex `i`.
fn word_path(quiver: &Quiver, word: &[Atom]) -> PResult<Path> {
    let mut acc: Option<Path> = None;
    for atom in word {
        let l = &atom.label;
        let piece = if is_trivial_name(&l.value) && quiver.arrow_index(&l.value).is_none() {
            let v: usize = l.value[1..]
                .parse()
                .map_err(|_| l.error("vertex out of range"))?;
            if v == 0 || v > quiver.vertex_count() {
                return Err(l.error(format!(
                    "vertex {v} out of range 1..={}",
                    quiver.vertex_count()
                )));
            }
            Path::trivial(v - 1)
        } else {
            let a = quiver
                .arrow_index(&l.value)
                .ok_or_else(|| l.error(format!("unknown arrow `{}`", l.value)))?;
            quiver
                .path(&vec![a; atom.power])
                .map_err(|_| l.error(format!("`{}^{}` does not compose", l.value, atom.power)))?
        };
        acc = Some(match acc {
            None => piece,
            Some(p) => p.concat(&piece).ok_or_else(|| {
                l.error(format!(
                    "`{}` does not compose with the preceding arrows",
                    l.value
                ))
            })?,
        });
    }
    Ok(acc.expect("words are non-empty"))
}

/// Evaluates an expression over `algebra`. Constructors `P`, `I`, `S`, `quot`
/// and `rep` build modules over `algebra`; `dual` and `tr` pass to the
/// opposite algebra.
pub fn eval_module(algebra: &Arc<MonomialAlgebra>, expr: &ModuleExpr) -> PResult<Representation> {
    let m = match &expr.kind {
        ExprKind::Projective(v) => {
            expr.lift(repmod::projective(algebra, check_vertex(algebra, v)?))?
        }
        ExprKind::Injective(v) => {
            expr.lift(repmod::injective(algebra, check_vertex(algebra, v)?))?
        }
        ExprKind::Simple(v) => expr.lift(repmod::simple(algebra, check_vertex(algebra, v)?))?,
        ExprKind::Radical(e) => repmod::radical(&eval_module(algebra, e)?).0,
        ExprKind::Socle(e) => repmod::socle(&eval_module(algebra, e)?).0,
        ExprKind::Top(e) => repmod::top(&eval_module(algebra, e)?).module,
        ExprKind::SocleQuotient(e) => {
            let m = eval_module(algebra, e)?;
            repmod::cokernel(&repmod::socle(&m).1).module
        }
        ExprKind::Dual(e) => homology::dual(&eval_module(algebra, e)?),
        ExprKind::Transpose(e) => homology::transpose(&eval_module(algebra, e)?),
        ExprKind::Tau(e) => homology::tau(&eval_module(algebra, e)?),
        ExprKind::TauInverse(e) => homology::tau_inverse(&eval_module(algebra, e)?),
        ExprKind::Syzygy(e, n) => homology::syzygy(&eval_module(algebra, e)?, *n),
        ExprKind::Cosyzygy(e, n) => homology::cosyzygy(&eval_module(algebra, e)?, *n),
        ExprKind::TauN(e, i) => {
            if i.value < 1 {
                return Err(i.error("taun needs i >= 1"));
            }
            homology::tau_n(&eval_module(algebra, e)?, i.value)
        }
        ExprKind::Sum(parts) => {
            let mods = parts
                .iter()
                .map(|p| eval_module(algebra, p))
                .collect::<PResult<Vec<_>>>()?;
            let base = mods[0].algebra().clone();
            for (p, m) in parts.iter().zip(&mods) {
                if !m.algebra().same_as(&base) {
                    return Err(p.error("summands live over different algebras"));
                }
            }
            expr.lift(repmod::direct_sum(&base, &mods))?.module
        }
        ExprKind::Quot(gens) => {
            let quiver = algebra.quiver();
            let mut elements = Vec::new();
            for g in gens {
                let mut terms = Vec::new();
                for t in g {
                    terms.push((t.coeff, word_path(quiver, &t.word)?));
                }
                elements.push(AlgebraElement::from_terms(algebra, &terms));
            }
            expr.lift(repmod::quotient_by_right_ideal(algebra, &elements))?
        }
        ExprKind::Explicit { dims, actions } => eval_explicit(algebra, expr, dims, actions)?,
    };
    Ok(m)
}

fn eval_explicit(
    algebra: &Arc<MonomialAlgebra>,
    expr: &ModuleExpr,
    dims: &[usize],
    actions: &[(Spanned<String>, Vec<Vec<i64>>)],
) -> PResult<Representation> {
    let q = algebra.quiver();
    let f = algebra.field();
    if dims.len() != q.vertex_count() {
        return Err(expr.error(format!(
            "dimension vector has {} entries for {} vertices",
            dims.len(),
            q.vertex_count()
        )));
    }
    let mut mats: Vec<Option<Matrix>> = vec![None; q.arrows().len()];
    for (label, rows) in actions {
        let a = q
            .arrow_index(&label.value)
            .ok_or_else(|| label.error(format!("unknown arrow `{}`", label.value)))?;
        if mats[a].is_some() {
            return Err(label.error(format!("arrow `{}` given twice", label.value)));
        }
        let arrow = q.arrow(a);
        let (r, c) = (dims[arrow.source], dims[arrow.target]);
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(label.error(format!("arrow `{}` needs a {r}x{c} matrix", label.value)));
        }
        mats[a] = Some(Matrix::from_rows(f, c, rows).map_err(|e| label.error(e.to_string()))?);
    }
    let mats = mats
        .into_iter()
        .zip(q.arrows())
        .map(|(m, a)| m.unwrap_or_else(|| Matrix::zeros(f, dims[a.source], dims[a.target])))
        .collect();
    expr.lift(Representation::new(algebra.clone(), dims.to_vec(), mats))
}

/// Parses and evaluates in one step.
pub fn eval_str(algebra: &Arc<MonomialAlgebra>, text: &str) -> PResult<Representation> {
    eval_module(algebra, &parse_module_expr(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::decomp::{is_isomorphic, SearchConfig};
    use proptest::prelude::*;

    const PAPER: &str = "\
# the two-vertex example
algebra counterexample
vertices 2
arrow x : 1 -> 1
arrow y : 1 -> 2
arrow z : 2 -> 1
relation x*y
relation y*z
relation z*x
relation x^3
field GF(3)
";

    fn paper() -> Arc<MonomialAlgebra> {
        parse_algebra(PAPER).unwrap()
    }

    #[test]
    fn paper_file_builds_the_seven_dimensional_algebra() {
        let a = paper();
        assert_eq!(a.dimension(), 7);
        assert_eq!(a.basis_names(), ["e1", "e2", "x", "y", "z", "x^2", "z*y"]);
        assert_eq!(
            *a,
            *catalog::counterexample_algebra(PrimeField::new(3).unwrap())
        );
    }

    #[test]
    fn one_vertex_no_arrows_is_the_field() {
        let a = parse_algebra("vertices 1\n").unwrap();
        assert_eq!(a.dimension(), 1);
        assert_eq!(a.name(), "A");
        assert_eq!(a.field().modulus(), 3);
    }

    #[test]
    fn non_composable_relation_points_at_the_token() {
        let text = "vertices 2\narrow x : 1 -> 1\narrow y : 2 -> 1\nrelation x*y\n";
        let e = AlgebraSpec::parse(text).unwrap_err();
        assert_eq!((e.line, e.column), (4, 12), "{e}");
    }

    #[test]
    fn semantic_errors_are_positioned() {
        let cases = [
            ("vertices 2\narrow a : 1 -> 3\n", (2, 16)),
            ("vertices 1\narrow a : 1 -> 1\nrelation a*b\n", (3, 12)),
            ("vertices 1\nfield GF(4)\n", (2, 10)),
            ("vertices 1\nfield GF(0)\n", (2, 10)),
            ("vertices 0\n", (1, 10)),
            ("vertices 1\narrow a : 1 -> 1\narrow a : 1 -> 1\n", (3, 7)),
            ("vertices 1\narrow a : 1 -> 1\nrelation a\n", (3, 10)),
            ("vertices 1\nloop a\n", (2, 1)),
            ("vertices 1\narrow a : 1 => 1\n", (2, 14)),
            ("vertices 1\narrow e1 : 1 -> 1\n", (2, 7)),
            ("arrow a : 1 -> 1\n", (1, 1)),
            ("vertices 1 2\n", (1, 12)),
            ("vertices 1\narrow a : 1 -> 1 % \n", (2, 18)),
        ];
        for (text, pos) in cases {
            let e = AlgebraSpec::parse(text).unwrap_err();
            assert_eq!((e.line, e.column), pos, "{text:?}: {e}");
        }
    }

    #[test]
    fn infinite_algebras_are_rejected_at_build() {
        let err = parse_algebra("vertices 1\narrow a : 1 -> 1\n").unwrap_err();
        assert!(matches!(err, Error::InfiniteDimensional { .. }));
    }

    #[test]
    fn printing_round_trips_and_field_overrides() {
        let spec = AlgebraSpec::parse(PAPER).unwrap();
        let text = spec.to_text();
        assert_eq!(AlgebraSpec::parse(&text).unwrap(), spec);
        assert_eq!(print_algebra(&paper()), text);
        let a5 = spec.with_field(5).build().unwrap();
        assert_eq!(a5.field().modulus(), 5);
        assert_eq!(a5.dimension(), 7);
    }

    #[test]
    fn paper_modules_evaluate() {
        let a = paper();
        let cfg = SearchConfig::default();
        let m1 = eval_str(&a, "quot(x + z)").unwrap();
        assert_eq!(m1.dims(), [2, 2]);
        assert_eq!(eval_str(&a, "S(1)").unwrap().dims(), [1, 0]);
        let t = eval_str(&a, "taun(quot(x + z), 3)").unwrap();
        assert!(is_isomorphic(&t, &m1, &cfg).unwrap());
        let m2 = eval_str(&a, "qsoc(P(2))").unwrap();
        assert_eq!(m2.dims(), [1, 1]);
        let u = eval_str(&a, "quot(x + y + z)").unwrap();
        assert_eq!(u.dims(), [2, 1]);
        let lit = eval_str(&a, "rep([1,1]; y=[[1]])").unwrap();
        assert!(is_isomorphic(&lit, &eval_str(&a, "quot(x, e2)").unwrap(), &cfg).unwrap());
        let p1s1 = eval_str(&a, "quot(x^2, e2)").unwrap();
        assert_eq!(p1s1.dims(), [2, 1]);
        let both = eval_str(&a, "sum(S(1), S(2), rad(P(2)))").unwrap();
        assert_eq!(both.dims(), [2, 2]);
        assert_eq!(
            eval_str(&a, "dual(P(1))")
                .unwrap()
                .algebra()
                .relations()
                .len(),
            4
        );
        assert_eq!(eval_str(&a, "syz(quot(x + z), 2)").unwrap().dims(), [1, 0]);
        assert_eq!(eval_str(&a, "cosyz(S(2), 0)").unwrap().dims(), [0, 1]);
        assert_eq!(eval_str(&a, "quot(2*x - z*y, -e2)").unwrap().dims(), [1, 1]);
    }

    #[test]
    fn evaluation_errors_are_positioned() {
        let a = paper();
        let cases = [
            ("taun(S(1), 0)", (1, 12)),
            ("P(3)", (1, 3)),
            ("quot(x*z)", (1, 8)),
            ("quot(w)", (1, 6)),
            ("quot(e3)", (1, 6)),
            ("sum(S(1), dual(S(1)))", (1, 11)),
            ("rep([1,1]; y=[[1,0]])", (1, 12)),
            ("rep([1,1]; q=[[1]])", (1, 12)),
            ("rep([1]; )", (1, 10)),
            ("rep([1,0]; x=[[1]])", (1, 1)),
            ("foo(S(1))", (1, 1)),
            ("S(1", (1, 4)),
            ("", (1, 1)),
            ("S(1) S(2)", (1, 6)),
            ("quot(2 x)", (1, 8)),
            ("syz(S(1))", (1, 9)),
        ];
        for (text, pos) in cases {
            let e = eval_str(&a, text).unwrap_err();
            assert_eq!((e.line, e.column), pos, "{text:?}: {e}");
        }
    }

    #[test]
    fn expression_display_round_trips() {
        for text in [
            "taun(quot(x + z), 3)",
            "sum(S(1), rad(P(2)), I(1))",
            "quot(-x + 2*z*y - x^2, e2)",
            "rep([1,1]; x=[[0]], y=[[1]])",
            "rep([0,1])",
            "cosyz(qsoc(tr(dual(P(1)))), 2)",
        ] {
            let e = parse_module_expr(text).unwrap();
            assert_eq!(e.to_string(), text);
            assert_eq!(parse_module_expr(&e.to_string()).unwrap(), e);
        }
    }

    fn label() -> impl Strategy<Value = String> {
        "[a-d][a-z0-9_]{0,3}".prop_filter("not a trivial-path name", |s| !is_trivial_name(s))
    }

    prop_compose! {
        fn spec_text()(
            n in 1usize..4,
            name in "[A-Za-z][A-Za-z0-9_]{0,6}",
            labels in proptest::collection::btree_set(label(), 0..5),
            ends in proptest::collection::vec((0usize..4, 0usize..4), 5),
            p in prop::sample::select(vec![2u32, 3, 5, 7, 101]),
            rel_picks in proptest::collection::vec((0usize..5, 1usize..4), 0..4),
        ) -> String {
            let labels: Vec<String> = labels.into_iter().collect();
            let mut s = format!("algebra {name}\nvertices {n}\n");
            let arrows: Vec<(String, usize, usize)> = labels
                .iter()
                .zip(&ends)
                .map(|(l, &(a, b))| (l.clone(), a % n + 1, b % n + 1))
                .collect();
            for (l, a, b) in &arrows {
                s += &format!("arrow {l} : {a} -> {b}\n");
            }
            // loops make valid relations of any length
            for &(k, pow) in &rel_picks {
                if let Some((l, a, b)) = arrows.get(k % arrows.len().max(1)) {
                    if a == b {
                        s += &format!("relation {l}^{}\n", pow + 1);
                    }
                }
            }
            s += &format!("field GF({p})\n");
            s
        }
    }

    proptest! {
        #[test]
        fn parse_print_parse_is_parse(text in spec_text()) {
            let spec = AlgebraSpec::parse(&text).unwrap();
            let again = AlgebraSpec::parse(&spec.to_text()).unwrap();
            prop_assert_eq!(&again, &spec);
            prop_assert_eq!(again.to_text(), spec.to_text());
        }
    }
}
