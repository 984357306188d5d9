//! The job file format.
//!
//! ```text
//! # comment
//! ring P(1,2) char 32003
//! ideal I = x(1,1)^3*x(2,0) - x(1,1)^3*x(2,1) + x(1,0)^3*x(2,2),
//!           x10^2*x20^2 + x11^2*x21^2 + x10*x11*x22^2
//! ```
//!
//! A custom ring is written
//! `ring custom degrees [(1,0),(1,0),(-2,1),(0,1)] primes [[0,1],[2,3]]`.
//! Its variables are `y0, y1, ...` (also accepted as `x0` or `x(k)`).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ring::{Multidegree, Polynomial, Ring, RingError, RingRef, DEFAULT_CHARACTERISTIC};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown variable `{name}`")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("ideal `{name}`, generator {index}: {source}")]
    Inhomogeneous { name: String, index: usize, source: RingError },
    #[error("no `ring` line before the first ideal")]
    NoRing,
    #[error("nothing to resolve: no ideal given")]
    NoIdeal,
    #[error("ideal `{0}` is not defined")]
    UnknownIdeal(String),
    #[error("expected {expected} entries in `{text}`, got {got}")]
    DegreeLength { text: String, expected: usize, got: usize },
    #[error("bad VIRTRES_CHAR value `{0}`")]
    BadCharacteristic(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A named list of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedIdeal {
    pub name: String,
    pub generators: Vec<Polynomial>,
    /// Line of the `ideal` keyword.
    pub line: usize,
}

/// Parsed contents of a job file.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub ring_source: String,
    pub ring: RingRef,
    pub ideals: Vec<NamedIdeal>,
}

impl PartialEq for JobSpec {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring
            && self.ideals.len() == other.ideals.len()
            && self
                .ideals
                .iter()
                .zip(&other.ideals)
                .all(|(a, b)| a.name == b.name && a.generators == b.generators)
    }
}

impl JobSpec {
    /// The ideal called `name`, or the first one when `name` is `None`.
    pub fn ideal(&self, name: Option<&str>) -> Result<&NamedIdeal, ParseError> {
        match name {
            None => self.ideals.first().ok_or(ParseError::NoIdeal),
            Some(n) => self
                .ideals
                .iter()
                .find(|i| i.name == n)
                .ok_or_else(|| ParseError::UnknownIdeal(n.to_string())),
        }
    }

    /// Text that parses back to an equal job.
    pub fn render(&self) -> String {
        let mut s = self.ring.describe();
        s.push('\n');
        for id in &self.ideals {
            let gens: Vec<String> = id.generators.iter().map(|g| g.display(&self.ring)).collect();
            s.push_str(&format!("ideal {} = {}\n", id.name, gens.join(",\n    ")));
        }
        s
    }
}

impl fmt::Display for JobSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let st = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[st..i].iter().collect();
                let v = s.parse::<i64>().map_err(|_| ParseError::Syntax {
                    line: ln + 1,
                    col,
                    msg: format!("integer `{s}` out of range"),
                })?;
                out.push(Token { tok: Tok::Int(v), line: ln + 1, col });
            } else if c.is_ascii_alphabetic() || c == '_' {
                let st = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[st..i].iter().collect()), line: ln + 1, col });
            } else if "()[],=+-*^:".contains(c) {
                out.push(Token { tok: Tok::Sym(c), line: ln + 1, col });
                i += 1;
            } else {
                return Err(ParseError::Syntax { line: ln + 1, col, msg: format!("unexpected character `{c}`") });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    last_line: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => (self.last_line, 1),
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError::Syntax { line, col, msg: msg.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Ident(kw.into())) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{kw}`"))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat_sym('-');
        match self.next() {
            Some(Tok::Int(v)) => Ok(if neg { -v } else { v }),
            _ => {
                self.pos -= 1;
                self.err("expected an integer")
            }
        }
    }

    /// `(a,b,...)` or `[a,b,...]`
    fn int_list(&mut self, open: char, close: char) -> Result<Vec<i64>, ParseError> {
        self.expect_sym(open)?;
        let mut v = Vec::new();
        if self.eat_sym(close) {
            return Ok(v);
        }
        loop {
            v.push(self.int()?);
            if self.eat_sym(close) {
                return Ok(v);
            }
            self.expect_sym(',')?;
        }
    }

    fn ring(&mut self, default_char: u32) -> Result<Ring, ParseError> {
        self.expect_keyword("ring")?;
        let ring = match self.next() {
            Some(Tok::Ident(s)) if s == "P" => {
                let dims = self.int_list('(', ')')?;
                if dims.iter().any(|&d| d < 0) {
                    return self.err("dimensions must be nonnegative");
                }
                let p = self.characteristic(default_char)?;
                Ring::product(&dims.iter().map(|&d| d as usize).collect::<Vec<_>>(), p)?
            }
            Some(Tok::Ident(s)) if s == "custom" => {
                self.expect_keyword("degrees")?;
                self.expect_sym('[')?;
                let mut degs = Vec::new();
                if !self.eat_sym(']') {
                    loop {
                        let d = self.int_list('(', ')')?;
                        degs.push(Multidegree::from(d.iter().map(|&x| x as i32).collect::<Vec<_>>()));
                        if self.eat_sym(']') {
                            break;
                        }
                        self.expect_sym(',')?;
                    }
                }
                let mut primes = Vec::new();
                if self.peek() == Some(&Tok::Ident("primes".into())) {
                    self.pos += 1;
                    self.expect_sym('[')?;
                    if !self.eat_sym(']') {
                        loop {
                            let p = self.int_list('[', ']')?;
                            primes.push(p.iter().map(|&x| x as usize).collect());
                            if self.eat_sym(']') {
                                break;
                            }
                            self.expect_sym(',')?;
                        }
                    }
                }
                let p = self.characteristic(default_char)?;
                Ring::custom(degs, primes, p)?
            }
            _ => {
                self.pos -= 1;
                return self.err("expected `P(...)` or `custom`");
            }
        };
        Ok(ring)
    }

    fn characteristic(&mut self, default_char: u32) -> Result<u32, ParseError> {
        if self.peek() == Some(&Tok::Ident("char".into())) {
            self.pos += 1;
            let p = self.int()?;
            u32::try_from(p).map_err(|_| RingError::NotPrime(p.unsigned_abs()).into())
        } else {
            Ok(default_char)
        }
    }

    fn at_statement_start(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "ideal" || s == "ring")
    }

    fn expr(&mut self, ring: &Ring) -> Result<Polynomial, ParseError> {
        let mut acc = Polynomial::zero();
        let mut sign = if self.eat_sym('-') {
            -1
        } else {
            self.eat_sym('+');
            1
        };
        loop {
            let t = self.product(ring)?;
            acc = if sign > 0 { acc.add(&t, ring) } else { acc.sub(&t, ring) };
            if self.eat_sym('+') {
                sign = 1;
            } else if self.eat_sym('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self, ring: &Ring) -> Result<Polynomial, ParseError> {
        let mut acc = self.power(ring)?;
        while self.eat_sym('*') {
            let f = self.power(ring)?;
            acc = acc.mul(&f, ring);
        }
        Ok(acc)
    }

    fn power(&mut self, ring: &Ring) -> Result<Polynomial, ParseError> {
        let base = self.atom(ring)?;
        if self.eat_sym('^') {
            let e = self.int()?;
            if !(0..=1000).contains(&e) {
                return self.err("exponent out of range");
            }
            return Ok(base.pow(e as u32, ring));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &Ring) -> Result<Polynomial, ParseError> {
        let (line, col) = self.here();
        match self.next() {
            Some(Tok::Int(v)) => Ok(Polynomial::constant(ring, v)),
            Some(Tok::Sym('(')) => {
                let e = self.expr(ring)?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                let idx = if self.peek() == Some(&Tok::Sym('(')) {
                    let args = self.int_list('(', ')')?;
                    match args.as_slice() {
                        [i, j] if *i >= 0 && *j >= 0 => ring.var_index(*i as usize, *j as usize),
                        [k] if *k >= 0 && (*k as usize) < ring.nvars() && !ring.is_product() => {
                            Some(*k as usize)
                        }
                        _ => None,
                    }
                    .ok_or_else(|| ParseError::UnknownVariable {
                        name: format!("{name}({})", args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")),
                        line,
                        col,
                    })?
                } else {
                    bare_variable(ring, &name)
                        .ok_or(ParseError::UnknownVariable { name, line, col })?
                };
                Ok(Polynomial::var(ring, idx))
            }
            _ => {
                self.pos -= 1;
                self.err("expected a number, variable or `(`")
            }
        }
    }
}

fn bare_variable(ring: &Ring, name: &str) -> Option<usize> {
    if let Some(k) = ring.var_by_name(name) {
        return Some(k);
    }
    if !ring.is_product() {
        // x3 as an alias of y3
        let rest = name.strip_prefix('x')?;
        let k: usize = rest.parse().ok()?;
        return (k < ring.nvars()).then_some(k);
    }
    None
}

/// The characteristic used when a ring line has no `char` clause.
pub fn default_characteristic() -> Result<u32, ParseError> {
    match std::env::var("VIRTRES_CHAR") {
        Ok(s) => s.trim().parse().map_err(|_| ParseError::BadCharacteristic(s)),
        Err(_) => Ok(DEFAULT_CHARACTERISTIC),
    }
}

/// Parse a job file.
pub fn parse_job(text: &str) -> Result<JobSpec, ParseError> {
    parse_job_with(text, default_characteristic()?)
}

pub fn parse_job_with(text: &str, default_char: u32) -> Result<JobSpec, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks: &toks, pos: 0, last_line: text.lines().count().max(1) };
    if p.peek().is_none() {
        return Err(ParseError::NoRing);
    }
    if p.peek() != Some(&Tok::Ident("ring".into())) {
        return Err(ParseError::NoRing);
    }
    let start = p.pos;
    let ring = p.ring(default_char)?;
    let ring_source = toks[start..p.pos]
        .iter()
        .map(|t| match &t.tok {
            Tok::Ident(s) => s.clone(),
            Tok::Int(v) => v.to_string(),
            Tok::Sym(c) => c.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ");
    let mut ideals = Vec::new();
    while p.peek().is_some() {
        let (line, _) = p.here();
        p.expect_keyword("ideal")?;
        let name = match p.next() {
            Some(Tok::Ident(n)) => n,
            _ => {
                p.pos -= 1;
                return p.err("expected an ideal name");
            }
        };
        p.expect_sym('=')?;
        let mut gens = Vec::new();
        if !p.at_statement_start() && p.peek().is_some() {
            loop {
                gens.push(p.expr(&ring)?);
                if !p.eat_sym(',') {
                    break;
                }
            }
        }
        if p.peek().is_some() && !p.at_statement_start() {
            return p.err("expected `,` or a new statement");
        }
        for (index, g) in gens.iter().enumerate() {
            if !g.is_zero() {
                g.multidegree(&ring).map_err(|source| ParseError::Inhomogeneous {
                    name: name.clone(),
                    index,
                    source,
                })?;
            }
        }
        ideals.push(NamedIdeal { name, generators: gens, line });
    }
    Ok(JobSpec { ring_source, ring: Arc::new(ring), ideals })
}

/// Parse `a,b,c` into a multidegree of length `r`.
pub fn parse_degree(text: &str, r: usize) -> Result<Multidegree, ParseError> {
    let v = parse_int_list(text)?;
    if v.len() != r {
        return Err(ParseError::DegreeLength { text: text.into(), expected: r, got: v.len() });
    }
    Ok(Multidegree::from(v.iter().map(|&x| x as i32).collect::<Vec<_>>()))
}

pub fn parse_int_list(text: &str) -> Result<Vec<i64>, ParseError> {
    text.split(',')
        .map(|s| {
            s.trim().parse::<i64>().map_err(|_| ParseError::Syntax {
                line: 1,
                col: 1,
                msg: format!("bad integer list `{text}`"),
            })
        })
        .collect()
}

/// Parse `lo:hi` where both sides are comma vectors.
pub fn parse_window(text: &str, r: usize) -> Result<(Multidegree, Multidegree), ParseError> {
    let (lo, hi) = text.split_once(':').ok_or_else(|| ParseError::Syntax {
        line: 1,
        col: 1,
        msg: format!("window `{text}` must look like lo:hi"),
    })?;
    Ok((parse_degree(lo, r)?, parse_degree(hi, r)?))
}
