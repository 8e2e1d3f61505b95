//! The `.alg` input language:
//!
//! ```text
//! # comment
//! algebra square {
//!     vertices: 1, 2, 3, 4;
//!     arrows: a: 1 -> 2, b: 2 -> 4, c: 1 -> 3, d: 3 -> 4;
//!     relations: 1*a*b - 1*c*d
//! }
//! ```
//!
//! `*` composes left to right; coefficients are optional rationals.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{BoundQuiverAlgebra, Quiver, Relation, DEFAULT_MAX_PATH_LENGTH};
use crate::linalg::parse_rational;
use crate::{Error, Result, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    /// Rational coefficient in `p/q` form.
    pub coefficient: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_path_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default)]
    pub options: SpecOptions,
}

impl AlgebraSpec {
    pub fn quiver(&self) -> Result<Quiver> {
        let v: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let a: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .map(|x| (x.label.as_str(), x.source.as_str(), x.target.as_str()))
            .collect();
        Quiver::from_labels(&v, &a)
    }

    pub fn build(&self) -> Result<BoundQuiverAlgebra> {
        let q = self.quiver()?;
        let relations = self
            .relations
            .iter()
            .map(|terms| {
                let parsed: Vec<(Q, Vec<&str>)> = terms
                    .iter()
                    .map(|t| {
                        let c = parse_rational(&t.coefficient).map_err(Error::Shape)?;
                        Ok((c, t.path.iter().map(String::as_str).collect()))
                    })
                    .collect::<Result<_>>()?;
                Relation::from_labels(&q, &parsed)
            })
            .collect::<Result<Vec<_>>>()?;
        BoundQuiverAlgebra::build(&self.name, q, relations, self.options.max_path_length.unwrap_or(DEFAULT_MAX_PATH_LENGTH))
    }

    /// The spec of an already built algebra (relations as stored).
    pub fn from_algebra(a: &BoundQuiverAlgebra) -> Self {
        let q = a.quiver();
        let label = |i: usize| q.arrow(i).label.clone();
        Self {
            name: a.name().to_string(),
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|x| ArrowSpec {
                    label: x.label.clone(),
                    source: q.vertices()[x.source].clone(),
                    target: q.vertices()[x.target].clone(),
                })
                .collect(),
            relations: a
                .relations()
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| TermSpec {
                            coefficient: c.to_string(),
                            path: p.arrows.iter().map(|&i| label(i)).collect(),
                        })
                        .collect()
                })
                .collect(),
            options: SpecOptions::default(),
        }
    }

    /// Canonical source text; `parse_spec(to_source(s)) == s` up to options.
    pub fn to_source(&self) -> String {
        let mut out = format!("algebra {} {{\n    vertices: {};\n", self.name, self.vertices.join(", "));
        let arrows: Vec<String> = self.arrows.iter().map(|a| format!("{}: {} -> {}", a.label, a.source, a.target)).collect();
        out.push_str(&format!("    arrows: {}", arrows.join(", ")).trim_end());
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| format_relation(r)).collect();
            out.push_str(&format!(";\n    relations: {}", rels.join(", ")));
        }
        out.push_str("\n}\n");
        out
    }
}

fn format_relation(terms: &[TermSpec]) -> String {
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        let c = parse_rational(&t.coefficient).unwrap_or_else(|_| Q::one());
        let body = format!("{}*{}", c.abs(), t.path.join("*"));
        match (i, c.is_negative()) {
            (0, false) => s.push_str(&body),
            (0, true) => s.push_str(&format!("-{body}")),
            (_, false) => s.push_str(&format!(" + {body}")),
            (_, true) => s.push_str(&format!(" - {body}")),
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Colon,
    Semi,
    Comma,
    To,
    Star,
    Plus,
    Minus,
    Slash,
    Open,
    Close,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::To => "`->`".into(),
            Tok::Star => "`*`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Open => "`{`".into(),
            Tok::Close => "`}`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (li + 1, i + 1);
            let single = match c {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                ':' => Some(Tok::Colon),
                ';' => Some(Tok::Semi),
                ',' => Some(Tok::Comma),
                '*' => Some(Tok::Star),
                '+' => Some(Tok::Plus),
                '/' => Some(Tok::Slash),
                '{' => Some(Tok::Open),
                '}' => Some(Tok::Close),
                '-' if chars.get(i + 1) == Some(&'>') => {
                    i += 1;
                    Some(Tok::To)
                }
                '-' => Some(Tok::Minus),
                _ => None,
            };
            if let Some(tok) = single {
                out.push(Spanned { tok, line, col });
                i += 1;
            } else if is_word_char(c) {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Word(chars[start..i].iter().collect()),
                    line,
                    col,
                });
            } else {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

fn is_number(w: &str) -> bool {
    !w.is_empty() && w.chars().all(|c| c.is_ascii_digit())
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.col))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        self.err_at(self.here(), msg)
    }

    fn err_at<T>(&self, (line, col): (usize, usize), msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let got = t.describe();
                self.err(format!("expected {}, found {got}", want.describe()))
            }
            None => self.err(format!("expected {}, found end of input", want.describe())),
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, (usize, usize))> {
        let at = self.here();
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok((w, at))
            }
            Some(t) => {
                let got = t.describe();
                self.err(format!("expected {what}, found {got}"))
            }
            None => self.err(format!("expected {what}, found end of input")),
        }
    }

    fn comma_list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = vec![item(self)?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            out.push(item(self)?);
        }
        Ok(out)
    }
}

/// Parses one `algebra NAME { ... }` block.
pub fn parse_spec(text: &str) -> Result<AlgebraSpec> {
    let toks = lex(text)?;
    let end = (text.lines().count().max(1), text.lines().last().map_or(1, |l| l.chars().count() + 1));
    let mut p = Parser { toks, pos: 0, end };
    let (kw, at) = p.word("`algebra`")?;
    if kw != "algebra" {
        return p.err_at(at, format!("expected `algebra`, found `{kw}`"));
    }
    let (name, _) = p.word("an algebra name")?;
    p.expect(Tok::Open)?;

    let mut vertices: Option<Vec<(String, (usize, usize))>> = None;
    let mut arrows: Option<Vec<(String, (String, (usize, usize)), (String, (usize, usize)), (usize, usize))>> = None;
    let mut relations: Option<Vec<(Vec<(Q, Vec<(String, (usize, usize))>)>, (usize, usize))>> = None;
    loop {
        if p.peek() == Some(&Tok::Close) {
            p.pos += 1;
            break;
        }
        let (section, at) = p.word("a section name")?;
        p.expect(Tok::Colon)?;
        match section.as_str() {
            "vertices" if vertices.is_none() => vertices = Some(p.comma_list(|p| p.word("a vertex label"))?),
            "arrows" if arrows.is_none() && matches!(p.peek(), Some(Tok::Semi) | Some(Tok::Close)) => arrows = Some(Vec::new()),
            "arrows" if arrows.is_none() => {
                arrows = Some(p.comma_list(|p| {
                    let (label, at) = p.word("an arrow label")?;
                    p.expect(Tok::Colon)?;
                    let s = p.word("a source vertex")?;
                    p.expect(Tok::To)?;
                    let t = p.word("a target vertex")?;
                    Ok((label, s, t, at))
                })?)
            }
            "relations" if relations.is_none() => {
                relations = Some(if matches!(p.peek(), Some(Tok::Semi) | Some(Tok::Close)) {
                    Vec::new()
                } else {
                    p.comma_list(parse_relation)?
                })
            }
            "vertices" | "arrows" | "relations" => return p.err_at(at, format!("duplicate section `{section}`")),
            _ => return p.err_at(at, format!("unknown section `{section}`")),
        }
        match p.peek() {
            Some(Tok::Semi) => p.pos += 1,
            Some(Tok::Close) => {}
            Some(t) => {
                let got = t.describe();
                return p.err(format!("expected `;` or `}}`, found {got}"));
            }
            None => return p.err("expected `}`, found end of input"),
        }
    }
    if p.pos < p.toks.len() {
        return p.err("unexpected input after the closing `}`");
    }

    let Some(vertices) = vertices else {
        return p.err_at((1, 1), "missing `vertices` section");
    };
    let mut vnames: Vec<String> = Vec::new();
    for (v, at) in &vertices {
        if vnames.contains(v) {
            return p.err_at(*at, format!("duplicate vertex `{v}`"));
        }
        vnames.push(v.clone());
    }
    let mut arrow_specs: Vec<ArrowSpec> = Vec::new();
    for (label, (s, sat), (t, tat), at) in arrows.unwrap_or_default() {
        if is_number(&label) {
            return p.err_at(at, format!("arrow label `{label}` must not be a number"));
        }
        if arrow_specs.iter().any(|a| a.label == label) {
            return p.err_at(at, format!("duplicate arrow `{label}`"));
        }
        for (v, vat) in [(&s, sat), (&t, tat)] {
            if !vnames.contains(v) {
                return p.err_at(vat, format!("unknown vertex `{v}`"));
            }
        }
        arrow_specs.push(ArrowSpec { label, source: s, target: t });
    }

    let arrow_of = |l: &str| arrow_specs.iter().find(|a| a.label == l);
    let mut rel_specs = Vec::new();
    for (terms, at) in relations.unwrap_or_default() {
        let mut ends: Option<(String, String)> = None;
        let mut out = Vec::new();
        for (c, path) in terms {
            let mut cur: Option<(String, String)> = None;
            for (l, lat) in &path {
                let Some(a) = arrow_of(l) else {
                    return p.err_at(*lat, format!("unknown arrow `{l}` in relation"));
                };
                cur = Some(match cur {
                    None => (a.source.clone(), a.target.clone()),
                    Some((s, t)) if t == a.source => (s, a.target.clone()),
                    Some((_, t)) => {
                        return p.err_at(*lat, format!("arrows do not compose: path ends at `{t}` but `{l}` starts at `{}`", a.source))
                    }
                });
            }
            let cur = cur.expect("nonempty path");
            if path.len() < 2 {
                return p.err_at(path[0].1, "relation terms need paths of length at least 2");
            }
            match &ends {
                None => ends = Some(cur),
                Some(e) if *e != cur => return p.err_at(at, "relation mixes paths with different endpoints"),
                _ => {}
            }
            if !c.is_zero() {
                out.push(TermSpec {
                    coefficient: c.to_string(),
                    path: path.into_iter().map(|x| x.0).collect(),
                });
            }
        }
        if !out.is_empty() {
            rel_specs.push(out);
        }
    }
    let spec = AlgebraSpec {
        name,
        vertices: vnames,
        arrows: arrow_specs,
        relations: rel_specs,
        options: SpecOptions::default(),
    };
    spec.quiver()?;
    Ok(spec)
}

type ParsedTerm = (Q, Vec<(String, (usize, usize))>);

fn parse_relation(p: &mut Parser) -> Result<(Vec<ParsedTerm>, (usize, usize))> {
    let at = p.here();
    let mut terms = Vec::new();
    let mut sign = match p.peek() {
        Some(Tok::Minus) => {
            p.pos += 1;
            -Q::one()
        }
        Some(Tok::Plus) => {
            p.pos += 1;
            Q::one()
        }
        _ => Q::one(),
    };
    loop {
        terms.push(parse_term(p, sign)?);
        sign = match p.peek() {
            Some(Tok::Plus) => Q::one(),
            Some(Tok::Minus) => -Q::one(),
            _ => break,
        };
        p.pos += 1;
    }
    Ok((terms, at))
}

fn parse_term(p: &mut Parser, sign: Q) -> Result<ParsedTerm> {
    let mut coef = sign;
    if let Some(Tok::Word(w)) = p.peek() {
        if is_number(w) {
            let at = p.here();
            let num = w.clone();
            p.pos += 1;
            let mut text = num;
            if p.peek() == Some(&Tok::Slash) {
                p.pos += 1;
                let (den, dat) = p.word("a denominator")?;
                if !is_number(&den) {
                    return p.err_at(dat, format!("expected a denominator, found `{den}`"));
                }
                text = format!("{text}/{den}");
            }
            let c = parse_rational(&text).map_err(|m| Error::Parse { line: at.0, col: at.1, msg: m })?;
            coef *= c;
            p.expect(Tok::Star)?;
        }
    }
    let mut path = vec![p.word("an arrow label")?];
    while p.peek() == Some(&Tok::Star) {
        p.pos += 1;
        path.push(p.word("an arrow label")?);
    }
    if p.next_is_word() {
        return p.err("expected `*`, `+`, `-`, `,` or `;` between arrows");
    }
    Ok((coef, path))
}

impl Parser {
    fn next_is_word(&self) -> bool {
        matches!(self.peek(), Some(Tok::Word(_)))
    }
}
