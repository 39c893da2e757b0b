//! Problem files and transform maps.
//!
//! ```text
//! # comment
//! ring x1..x6, t1..t10;
//! order degrevlex tx;
//! ideal J = x1*x2*x3, x1*x2*x4, 1/2*x1^2 - (x2 + x3)^2;
//! transform x4 -> x1 + x4, x6 -> x3 + x6;
//! ```
//!
//! Transform map files hold one assignment per line (`x4 -> x1 + x4`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{
    Block, Monomial, MonomialOrder, OrderKind, OrderedRing, Polynomial, Precedence, Rational,
    RingSpec,
};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const SYMBOLS: [&str; 12] = ["->", "..", ";", ",", "=", "+", "-", "*", "^", "(", ")", "/"];

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let bytes = line.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let column = i + 1;
            let at = |tok| Token {
                tok,
                line: ln + 1,
                column,
            };
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(at(Tok::Int(line[start..i].parse().unwrap())));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(at(Tok::Ident(line[start..i].to_string())));
            } else if let Some(sym) = SYMBOLS.iter().find(|s| line[i..].starts_with(**s)) {
                i += sym.len();
                out.push(at(Tok::Sym(sym)));
            } else {
                return Err(Error::Parse {
                    line: ln + 1,
                    column,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// position reported for errors at end of input
    eof: (usize, usize),
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let toks = tokenize(text)?;
        let eof = text
            .lines()
            .enumerate()
            .last()
            .map(|(i, l)| (i + 1, l.len() + 1))
            .unwrap_or((1, 1));
        Ok(Parser { toks, pos: 0, eof })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.eof);
        Err(Error::Parse {
            line,
            column,
            message: message.into(),
        })
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.error(format!("expected `{sym}`"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error("expected an identifier"),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn var(&mut self, spec: &RingSpec) -> Result<usize> {
        let save = self.pos;
        let name = self.ident()?;
        match spec.parse_var(&name) {
            Some(p) if !matches!(spec.var_at(p).block, Block::Aux) => Ok(p),
            _ => {
                self.pos = save;
                self.error(format!("unknown variable `{name}`"))
            }
        }
    }

    fn sum(&mut self, ring: &OrderedRing) -> Result<Polynomial> {
        self.eat("+");
        let mut acc = self.product(ring)?;
        loop {
            if self.eat("+") {
                acc = acc.add(&self.product(ring)?, ring);
            } else if self.eat("-") {
                acc = acc.sub(&self.product(ring)?, ring);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self, ring: &OrderedRing) -> Result<Polynomial> {
        let mut acc = self.power(ring)?;
        while self.eat("*") {
            acc = acc.mul(&self.power(ring)?, ring);
        }
        Ok(acc)
    }

    fn power(&mut self, ring: &OrderedRing) -> Result<Polynomial> {
        if self.eat("-") {
            return Ok(self.power(ring)?.neg());
        }
        let base = self.atom(ring)?;
        if self.eat("^") {
            let e = self.int()?;
            let e: u32 = match e.try_into() {
                Ok(e) => e,
                Err(_) => return self.error("exponent too large"),
            };
            Ok(base.pow(e, ring))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self, ring: &OrderedRing) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let num = self.int()?;
                let den = if self.eat("/") {
                    let d = self.int()?;
                    if d.is_zero() {
                        self.pos -= 1;
                        return self.error("zero denominator");
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Polynomial::constant(ring, Rational::new(num, den)))
            }
            Some(Tok::Ident(_)) => {
                let p = self.var(&ring.spec)?;
                Ok(Polynomial::var(ring, p))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let p = self.sum(ring)?;
                self.expect(")")?;
                Ok(p)
            }
            _ => self.error("expected a number, variable or `(`"),
        }
    }

    /// `x1..x6` or a single variable; returns (block letter, first, last).
    fn var_range(&mut self) -> Result<(char, usize, usize)> {
        let save = self.pos;
        let split = |s: &str| -> Option<(char, usize)> {
            let c = s.chars().next()?;
            let n: usize = s[1..].parse().ok()?;
            (matches!(c, 'x' | 't') && n >= 1).then_some((c, n))
        };
        let a = self.ident()?;
        let Some((ca, na)) = split(&a) else {
            self.pos = save;
            return self.error(format!("`{a}` is not a ring variable (x<i> or t<j>)"));
        };
        if self.eat("..") {
            let save = self.pos;
            let b = self.ident()?;
            match split(&b) {
                Some((cb, nb)) if cb == ca && nb >= na => Ok((ca, na, nb)),
                _ => {
                    self.pos = save;
                    self.error(format!("bad variable range `{a}..{b}`"))
                }
            }
        } else {
            Ok((ca, na, na))
        }
    }
}

/// One `var -> linear form` assignment of a transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub var: usize,
    pub image: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedIdeal {
    pub name: String,
    pub gens: Vec<Polynomial>,
}

/// A parsed problem. Polynomials are kept in canonical DegRevLex (x>t) form
/// over `ring`; generator listing order is preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub ring: RingSpec,
    pub ideals: Vec<NamedIdeal>,
    pub order: Option<MonomialOrder>,
    pub transform: Vec<Assignment>,
}

impl ProblemFile {
    pub fn canonical_ring(&self) -> OrderedRing {
        OrderedRing::new(self.ring, MonomialOrder::degrevlex())
    }

    pub fn ideal(&self, name: Option<&str>) -> Result<&NamedIdeal> {
        match name {
            None => self
                .ideals
                .first()
                .ok_or_else(|| Error::Invalid("problem declares no ideal".into())),
            Some(n) => self
                .ideals
                .iter()
                .find(|i| i.name == n)
                .ok_or_else(|| Error::Invalid(format!("no ideal named `{n}`"))),
        }
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut p = Parser::new(text)?;
    let mut ring: Option<RingSpec> = None;
    let mut ideals = Vec::new();
    let mut order = None;
    let mut transform = Vec::new();
    while !p.at_end() {
        let kw = p.ident()?;
        match kw.as_str() {
            "ring" => {
                if ring.is_some() {
                    p.pos -= 1;
                    return p.error("ring declared twice");
                }
                let (mut xs, mut ts) = (0, 0);
                loop {
                    let save = p.pos;
                    let (c, a, b) = p.var_range()?;
                    let count = if c == 'x' { &mut xs } else { &mut ts };
                    if a != *count + 1 {
                        p.pos = save;
                        return p.error(format!(
                            "{c}-variables must be declared contiguously from {c}1"
                        ));
                    }
                    *count = b;
                    if !p.eat(",") {
                        break;
                    }
                }
                p.expect(";")?;
                if xs == 0 {
                    return p.error("ring needs at least one x-variable");
                }
                ring = Some(RingSpec::new(xs, ts));
            }
            "order" => {
                let kind = match p.ident()?.as_str() {
                    "lex" => OrderKind::Lex,
                    "degrevlex" => OrderKind::DegRevLex,
                    other => {
                        p.pos -= 1;
                        return p.error(format!("unknown order `{other}`"));
                    }
                };
                let precedence = if p.eat(";") {
                    p.pos -= 1;
                    Precedence::XBeforeT
                } else {
                    parse_precedence(&mut p)?
                };
                p.expect(";")?;
                order = Some(MonomialOrder::new(kind, precedence));
            }
            "ideal" => {
                let Some(spec) = ring else {
                    p.pos -= 1;
                    return p.error("`ring` must come before `ideal`");
                };
                let oring = OrderedRing::new(spec, MonomialOrder::degrevlex());
                let name = p.ident()?;
                p.expect("=")?;
                let mut gens = Vec::new();
                loop {
                    gens.push(p.sum(&oring)?);
                    if !p.eat(",") {
                        break;
                    }
                }
                p.expect(";")?;
                ideals.push(NamedIdeal { name, gens });
            }
            "transform" => {
                let Some(spec) = ring else {
                    p.pos -= 1;
                    return p.error("`ring` must come before `transform`");
                };
                loop {
                    transform.push(parse_assignment(&mut p, &spec)?);
                    if !p.eat(",") {
                        break;
                    }
                }
                p.expect(";")?;
            }
            other => {
                p.pos -= 1;
                return p.error(format!("unknown statement `{other}`"));
            }
        }
    }
    let ring = ring.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing `ring` declaration".into(),
    })?;
    Ok(ProblemFile {
        ring,
        ideals,
        order,
        transform,
    })
}

fn parse_precedence(p: &mut Parser) -> Result<Precedence> {
    match p.ident()?.as_str() {
        "xt" => Ok(Precedence::XBeforeT),
        "tx" => Ok(Precedence::TBeforeX),
        other => {
            p.pos -= 1;
            p.error(format!("unknown precedence `{other}` (xt or tx)"))
        }
    }
}

fn parse_assignment(p: &mut Parser, spec: &RingSpec) -> Result<Assignment> {
    let oring = OrderedRing::new(*spec, MonomialOrder::degrevlex());
    let var = p.var(spec)?;
    p.expect("->")?;
    let image = p.sum(&oring)?;
    let block = spec.var_at(var).block;
    let linear_in_block = image.terms().iter().all(|(_, m)| {
        m.degree() == 1
            && m.exponents()
                .iter()
                .position(|&e| e == 1)
                .is_some_and(|q| spec.var_at(q).block == block)
    });
    if !linear_in_block {
        p.pos -= 1;
        return p.error(format!(
            "image of {} must be a linear form in its own block",
            spec.var_name(var)
        ));
    }
    Ok(Assignment { var, image })
}

/// Parses a line-based transform map (`x4 -> x1 + x4` per line).
pub fn parse_transform_map(text: &str, spec: &RingSpec) -> Result<Vec<Assignment>> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    while !p.at_end() {
        out.push(parse_assignment(&mut p, spec)?);
        // optional separators
        while p.eat(";") || p.eat(",") {}
    }
    Ok(out)
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring x1..x{}", self.ring.x_count)?;
        if self.ring.t_count > 0 {
            write!(f, ", t1..t{}", self.ring.t_count)?;
        }
        writeln!(f, ";")?;
        if let Some(o) = self.order {
            writeln!(f, "order {};", o.short_name())?;
        }
        let ring = self.canonical_ring();
        for ideal in &self.ideals {
            write!(f, "ideal {} = ", ideal.name)?;
            for (i, g) in ideal.gens.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", g.reorder(&ring).display(&self.ring))?;
            }
            writeln!(f, ";")?;
        }
        if !self.transform.is_empty() {
            write!(f, "transform ")?;
            for (i, a) in self.transform.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(
                    f,
                    "{} -> {}",
                    self.ring.var_name(a.var),
                    display_linear(&a.image, &self.ring)
                )?;
            }
            writeln!(f, ";")?;
        }
        Ok(())
    }
}

/// Linear forms printed with ascending variable index (`x1 + x4`).
pub fn display_linear(p: &Polynomial, spec: &RingSpec) -> String {
    let mut terms: Vec<(Rational, Monomial)> = p.terms().to_vec();
    terms.sort_by_key(|(_, m)| std::cmp::Reverse(m.clone()));
    Polynomial::from_sorted_terms(terms)
        .display(spec)
        .to_string()
}
