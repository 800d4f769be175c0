//! Problem files: a `key = value` header, named cycle definitions and queries.
//!
//! ```text
//! n = 2
//! d = 3
//! cycle L {
//!   coeff = 1
//!   f = [x0 + x1; x2 + x3]
//!   g = [x0^2 - x0*x1 + x1^2; x2^2 - x2*x3 + x3^2]
//! }
//! cycle M = 2*L
//! intersect L M
//! ```

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use hodgeci_core::periods::CitCycle;
use hodgeci_core::{CycloField, Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct ProblemError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    pub n: u32,
    pub d: u32,
    pub root_order: Option<u32>,
    pub f: Option<String>,
}

impl Header {
    pub fn root_order(&self) -> u32 {
        self.root_order.unwrap_or(2 * self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleDef {
    Block {
        name: String,
        coeff: i64,
        f: Vec<String>,
        g: Vec<String>,
    },
    Combination {
        name: String,
        terms: Vec<(i64, String)>,
    },
}

impl CycleDef {
    pub fn name(&self) -> &str {
        match self {
            CycleDef::Block { name, .. } | CycleDef::Combination { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Validate(String),
    Class(String),
    Period(String, String),
    Intersect(String, String),
    Tangent(String, Option<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub header: Header,
    pub cycles: Vec<CycleDef>,
    pub queries: Vec<Query>,
}

/// A problem with every polynomial parsed in its ring.
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub ring: PolyRing,
    pub f: Option<Poly>,
    pub cycles: Vec<(String, CitCycle)>,
}

impl Problem {
    pub fn cycle(&self, name: &str) -> Option<&CitCycle> {
        self.cycles.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }
}

const HEADER_KEYS: [&str; 4] = ["n", "d", "root_order", "F"];
const QUERY_WORDS: [&str; 5] = ["validate", "class", "period", "intersect", "tangent"];

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> ProblemError {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let col = before
            .rfind('\n')
            .map_or(before.len(), |i| before.len() - i - 1)
            + 1;
        ProblemError {
            line,
            col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_inline_space(&mut self) {
        while let Some(c) = self.peek() {
            if c == '\n' || !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn skip_space(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c == '_' || c.is_ascii_alphabetic() || (i > 0 && c.is_ascii_digit())))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &rest[..len]))
    }

    fn expect(&mut self, c: char) -> Result<(), ProblemError> {
        self.skip_inline_space();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_at(self.pos, format!("expected `{c}`")))
        }
    }

    /// Text up to (not including) the first of `stops` or the end of input.
    fn until(&mut self, stops: &[char]) -> (usize, &'a str) {
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c| stops.contains(&c)).unwrap_or(rest.len());
        self.pos += len;
        (start, &rest[..len])
    }
}

/// Blanks out `#` comments, keeping byte positions.
fn strip_comments(src: &str) -> String {
    src.lines()
        .map(|l| match l.find('#') {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l.len() - i)),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn trimmed(start: usize, text: &str) -> (usize, &str) {
    let lead = text.len() - text.trim_start().len();
    (start + lead, text.trim())
}

struct Parser<'a> {
    cur: Cursor<'a>,
    n: Option<u32>,
    d: Option<u32>,
    root_order: Option<u32>,
    f: Option<(usize, String)>,
    ring: Option<PolyRing>,
    cycles: Vec<CycleDef>,
    queries: Vec<(usize, Query)>,
}

impl<'a> Parser<'a> {
    fn err(&self, pos: usize, message: impl Into<String>) -> ProblemError {
        self.cur.error_at(pos, message)
    }

    fn parse_poly(&self, pos: usize, text: &str) -> Result<Poly, ProblemError> {
        let ring = self.ring.as_ref().expect("ring is built before the body");
        ring.parse(text).map_err(|e| match e {
            hodgeci_core::Error::Syntax { offset, message } => self.err(pos + offset, message),
            other => self.err(pos, other.to_string()),
        })
    }

    fn header_line(&mut self, key_pos: usize, key: &str) -> Result<(), ProblemError> {
        if self.ring.is_some() {
            return Err(self.err(key_pos, format!("header key `{key}` after the body")));
        }
        self.cur.expect('=')?;
        let (start, raw) = self.cur.until(&['\n']);
        let (pos, value) = trimmed(start, raw);
        if value.is_empty() {
            return Err(self.err(pos, format!("missing value for `{key}`")));
        }
        let int = |p: &Self| {
            value
                .parse::<u32>()
                .map_err(|_| p.err(pos, format!("`{key}` must be a nonnegative integer")))
        };
        let slot_taken = match key {
            "n" => self.n.replace(int(self)?).is_some(),
            "d" => self.d.replace(int(self)?).is_some(),
            "root_order" => self.root_order.replace(int(self)?).is_some(),
            _ => self.f.replace((pos, value.to_string())).is_some(),
        };
        if slot_taken {
            return Err(self.err(key_pos, format!("duplicate header key `{key}`")));
        }
        Ok(())
    }

    fn close_header(&mut self, pos: usize) -> Result<(), ProblemError> {
        if self.ring.is_some() {
            return Ok(());
        }
        let (Some(n), Some(_)) = (self.n, self.d) else {
            return Err(self.err(pos, "header must set `n` and `d` before the body"));
        };
        let order = self.root_order.unwrap_or(2 * self.d.unwrap());
        let field = CycloField::new(order).map_err(|e| self.err(pos, e.to_string()))?;
        let ring =
            PolyRing::new(n as usize + 2, field).map_err(|e| self.err(pos, e.to_string()))?;
        self.ring = Some(ring);
        if let Some((fpos, text)) = self.f.clone() {
            self.parse_poly(fpos, &text)?;
        }
        Ok(())
    }

    fn poly_list(&mut self) -> Result<Vec<String>, ProblemError> {
        self.cur.expect('[')?;
        let (start, inner) = self.cur.until(&[']']);
        if self.cur.peek() != Some(']') {
            return Err(self.err(start, "unterminated `[`"));
        }
        self.cur.pos += 1;
        let mut out = Vec::new();
        let mut offset = start;
        for item in inner.split(';') {
            let (pos, text) = trimmed(offset, item);
            if text.is_empty() {
                return Err(self.err(pos, "empty polynomial in list"));
            }
            self.parse_poly(pos, text)?;
            out.push(text.to_string());
            offset += item.len() + 1;
        }
        Ok(out)
    }

    fn check_new_name(&self, pos: usize, name: &str) -> Result<(), ProblemError> {
        if self.cycles.iter().any(|c| c.name() == name) {
            return Err(self.err(pos, format!("duplicate cycle name `{name}`")));
        }
        if HEADER_KEYS.contains(&name) || QUERY_WORDS.contains(&name) || name == "cycle" {
            return Err(self.err(pos, format!("`{name}` is reserved")));
        }
        Ok(())
    }

    fn block(&mut self, name: String, open: usize) -> Result<CycleDef, ProblemError> {
        let (mut coeff, mut f, mut g) = (None, None, None);
        loop {
            self.cur.skip_space();
            match self.cur.peek() {
                Some(';') => {
                    self.cur.pos += 1;
                    continue;
                }
                Some('}') => {
                    self.cur.pos += 1;
                    break;
                }
                None => return Err(self.err(open, "unterminated cycle block")),
                _ => {}
            }
            let Some((kpos, key)) = self.cur.ident() else {
                return Err(self.err(self.cur.pos, "expected `coeff`, `f`, `g` or `}`"));
            };
            let dup = match key {
                "coeff" => {
                    self.cur.expect('=')?;
                    let (start, raw) = self.cur.until(&[';', '\n', '}']);
                    let (pos, text) = trimmed(start, raw);
                    let v = text
                        .parse::<i64>()
                        .map_err(|_| self.err(pos, "`coeff` must be an integer"))?;
                    coeff.replace(v).is_some()
                }
                "f" => {
                    self.cur.expect('=')?;
                    f.replace((kpos, self.poly_list()?)).is_some()
                }
                "g" => {
                    self.cur.expect('=')?;
                    g.replace((kpos, self.poly_list()?)).is_some()
                }
                other => {
                    return Err(self.err(kpos, format!("unknown key `{other}` in cycle block")))
                }
            };
            if dup {
                return Err(self.err(kpos, format!("duplicate key `{key}` in cycle block")));
            }
        }
        let expected = self.n.unwrap() as usize / 2 + 1;
        let (Some((fpos, f)), Some((gpos, g))) = (f, g) else {
            return Err(self.err(open, format!("cycle `{name}` needs both `f` and `g`")));
        };
        if f.len() != expected {
            return Err(self.err(
                fpos,
                format!(
                    "arity mismatch: f has {} entries, expected {expected}",
                    f.len()
                ),
            ));
        }
        if g.len() != f.len() {
            return Err(self.err(
                gpos,
                format!(
                    "arity mismatch: g has {} entries, f has {}",
                    g.len(),
                    f.len()
                ),
            ));
        }
        Ok(CycleDef::Block {
            name,
            coeff: coeff.unwrap_or(1),
            f,
            g,
        })
    }

    fn combination(&mut self, name: String) -> Result<CycleDef, ProblemError> {
        let (start, raw) = self.cur.until(&['\n']);
        let mut terms = Vec::new();
        let mut rest = raw;
        let mut pos = start;
        let mut sign = 1i64;
        let mut first = true;
        loop {
            let t = rest.trim_start();
            pos += rest.len() - t.len();
            rest = t;
            if rest.is_empty() {
                break;
            }
            if !first || rest.starts_with(['+', '-']) {
                match rest.chars().next() {
                    Some('+') => sign = 1,
                    Some('-') => sign = -1,
                    _ => return Err(self.err(pos, "expected `+` or `-`")),
                }
                rest = &rest[1..];
                pos += 1;
                let t = rest.trim_start();
                pos += rest.len() - t.len();
                rest = t;
            }
            let digits = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            let mut k = 1i64;
            if digits > 0 {
                k = rest[..digits]
                    .parse()
                    .map_err(|_| self.err(pos, "coefficient out of range"))?;
                let after = rest[digits..].trim_start();
                if !after.starts_with('*') {
                    return Err(self.err(pos + digits, "expected `*` after coefficient"));
                }
                let skip = rest.len() - after.len() + 1;
                pos += skip;
                rest = &rest[skip..];
                let t = rest.trim_start();
                pos += rest.len() - t.len();
                rest = t;
            }
            let len = rest
                .find(|c: char| !(c == '_' || c.is_ascii_alphanumeric()))
                .unwrap_or(rest.len());
            if len == 0 {
                return Err(self.err(pos, "expected a cycle name"));
            }
            let term = &rest[..len];
            if !self.cycles.iter().any(|c| c.name() == term) {
                return Err(self.err(pos, format!("unknown cycle `{term}`")));
            }
            terms.push((sign * k, term.to_string()));
            pos += len;
            rest = &rest[len..];
            first = false;
        }
        if terms.is_empty() {
            return Err(self.err(start, "empty cycle combination"));
        }
        Ok(CycleDef::Combination { name, terms })
    }

    fn query(&mut self, pos: usize, word: &str) -> Result<Query, ProblemError> {
        let (start, raw) = self.cur.until(&['\n']);
        let (apos, args) = trimmed(start, raw);
        let words: Vec<&str> = args.split_whitespace().collect();
        let arity = |lo: usize, hi: usize| {
            if words.len() < lo || words.len() > hi {
                Err(self.err(pos, format!("wrong number of arguments for `{word}`")))
            } else {
                Ok(())
            }
        };
        let q = match word {
            "validate" => {
                arity(1, 1)?;
                Query::Validate(words[0].into())
            }
            "class" => {
                arity(1, 1)?;
                Query::Class(words[0].into())
            }
            "intersect" => {
                arity(2, 2)?;
                Query::Intersect(words[0].into(), words[1].into())
            }
            "tangent" => {
                arity(1, 2)?;
                Query::Tangent(words[0].into(), words.get(1).map(|s| s.to_string()))
            }
            _ => {
                arity(2, usize::MAX)?;
                let name = words[0];
                let (ppos, poly) = trimmed(apos + name.len(), &args[name.len()..]);
                self.parse_poly(ppos, poly)?;
                Query::Period(name.into(), poly.into())
            }
        };
        Ok(q)
    }

    fn run(mut self) -> Result<ProblemFile, ProblemError> {
        loop {
            self.cur.skip_space();
            if self.cur.peek().is_none() {
                break;
            }
            let Some((pos, word)) = self.cur.ident() else {
                return Err(self.err(self.cur.pos, "expected a key, `cycle` or a query"));
            };
            if HEADER_KEYS.contains(&word) {
                self.header_line(pos, word)?;
                continue;
            }
            if word == "cycle" {
                self.close_header(pos)?;
                self.cur.skip_inline_space();
                let Some((npos, name)) = self.cur.ident() else {
                    return Err(self.err(self.cur.pos, "expected a cycle name"));
                };
                self.check_new_name(npos, name)?;
                self.cur.skip_inline_space();
                let def = match self.cur.peek() {
                    Some('{') => {
                        let open = self.cur.pos;
                        self.cur.pos += 1;
                        self.block(name.to_string(), open)?
                    }
                    Some('=') => {
                        self.cur.pos += 1;
                        self.combination(name.to_string())?
                    }
                    _ => return Err(self.err(self.cur.pos, "expected `{` or `=`")),
                };
                self.cycles.push(def);
                continue;
            }
            if QUERY_WORDS.contains(&word) {
                self.close_header(pos)?;
                let q = self.query(pos, word)?;
                self.queries.push((pos, q));
                continue;
            }
            return Err(self.err(pos, format!("unknown key `{word}`")));
        }
        self.close_header(self.cur.src.len())?;
        let names: BTreeSet<&str> = self.cycles.iter().map(|c| c.name()).collect();
        for (pos, q) in &self.queries {
            let refs: Vec<&String> = match q {
                Query::Validate(a) | Query::Class(a) | Query::Period(a, _) => vec![a],
                Query::Intersect(a, b) => vec![a, b],
                Query::Tangent(a, b) => std::iter::once(a).chain(b.as_ref()).collect(),
            };
            if let Some(missing) = refs.into_iter().find(|r| !names.contains(r.as_str())) {
                return Err(self.err(*pos, format!("unknown cycle `{missing}`")));
            }
        }
        Ok(ProblemFile {
            header: Header {
                n: self.n.unwrap(),
                d: self.d.unwrap(),
                root_order: self.root_order,
                f: self.f.map(|(_, t)| t),
            },
            cycles: self.cycles,
            queries: self.queries.into_iter().map(|(_, q)| q).collect(),
        })
    }
}

pub fn parse_problem(bytes: &[u8]) -> Result<ProblemFile, ProblemError> {
    let src = std::str::from_utf8(bytes).map_err(|e| {
        let before = &bytes[..e.valid_up_to()];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let col = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        ProblemError {
            line,
            col,
            message: "input is not valid UTF-8".into(),
        }
    })?;
    let cleaned = strip_comments(src);
    Parser {
        cur: Cursor {
            src: &cleaned,
            pos: 0,
        },
        n: None,
        d: None,
        root_order: None,
        f: None,
        ring: None,
        cycles: Vec::new(),
        queries: Vec::new(),
    }
    .run()
}

/// Parses every polynomial and resolves cycle combinations.
pub fn load(file: ProblemFile) -> hodgeci_core::Result<Problem> {
    let field = CycloField::new(file.header.root_order())?;
    let ring = PolyRing::new(file.header.n as usize + 2, field)?;
    let f = file
        .header
        .f
        .as_deref()
        .map(|t| ring.parse(t))
        .transpose()?;
    let mut cycles: Vec<(String, CitCycle)> = Vec::new();
    for def in &file.cycles {
        let cycle = match def {
            CycleDef::Block { coeff, f, g, .. } => {
                let parse = |v: &Vec<String>| {
                    v.iter()
                        .map(|t| ring.parse(t))
                        .collect::<Result<Vec<_>, _>>()
                };
                CitCycle::single(*coeff, parse(f)?, parse(g)?)
            }
            CycleDef::Combination { terms, .. } => {
                let mut acc = CitCycle {
                    summands: Vec::new(),
                };
                for (k, name) in terms {
                    let c = &cycles.iter().find(|(n, _)| n == name).expect("checked").1;
                    acc = acc.plus(&c.scaled(*k));
                }
                acc
            }
        };
        cycles.push((def.name().to_string(), cycle));
    }
    Ok(Problem {
        file,
        ring,
        f,
        cycles,
    })
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = &self.header;
        writeln!(out, "n = {}", h.n)?;
        writeln!(out, "d = {}", h.d)?;
        if let Some(r) = h.root_order {
            writeln!(out, "root_order = {r}")?;
        }
        if let Some(f) = &h.f {
            writeln!(out, "F = {f}")?;
        }
        for c in &self.cycles {
            match c {
                CycleDef::Block { name, coeff, f, g } => {
                    writeln!(out, "\ncycle {name} {{")?;
                    writeln!(out, "  coeff = {coeff}")?;
                    writeln!(out, "  f = [{}]", f.join("; "))?;
                    writeln!(out, "  g = [{}]", g.join("; "))?;
                    writeln!(out, "}}")?;
                }
                CycleDef::Combination { name, terms } => {
                    let mut s = String::new();
                    for (i, (k, t)) in terms.iter().enumerate() {
                        match (i, *k < 0) {
                            (0, true) => s.push('-'),
                            (0, false) => {}
                            (_, true) => s.push_str(" - "),
                            (_, false) => s.push_str(" + "),
                        }
                        let _ = write!(s, "{}*{t}", k.unsigned_abs());
                    }
                    writeln!(out, "\ncycle {name} = {s}")?;
                }
            }
        }
        if !self.queries.is_empty() {
            writeln!(out)?;
        }
        for q in &self.queries {
            match q {
                Query::Validate(a) => writeln!(out, "validate {a}")?,
                Query::Class(a) => writeln!(out, "class {a}")?,
                Query::Period(a, p) => writeln!(out, "period {a} {p}")?,
                Query::Intersect(a, b) => writeln!(out, "intersect {a} {b}")?,
                Query::Tangent(a, None) => writeln!(out, "tangent {a}")?,
                Query::Tangent(a, Some(b)) => writeln!(out, "tangent {a} {b}")?,
            }
        }
        Ok(())
    }
}
