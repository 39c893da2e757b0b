use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::monomial::{Bidegree, Monomial};
use super::order::OrderedRing;
use super::ring::{Rational, RingSpec};
use crate::error::{Error, Result};

pub type Term = (Rational, Monomial);

/// Sparse polynomial; terms strictly decreasing in the order it was built
/// under, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(ring: &OrderedRing, c: Rational) -> Self {
        Self::monomial(c, Monomial::one(ring.nvars()))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(c, m)],
            }
        }
    }

    pub fn var(ring: &OrderedRing, pos: usize) -> Self {
        Self::monomial(Rational::one(), Monomial::var(ring.nvars(), pos))
    }

    /// Builds the canonical form: sorted under `ring`, like terms combined.
    pub fn from_terms(ring: &OrderedRing, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.1, &a.1));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some((lc, lm)) if *lm == m => *lc += c,
                _ => {
                    if let Some((lc, _)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((c, m));
                }
            }
        }
        if matches!(out.last(), Some((c, _)) if c.is_zero()) {
            out.pop();
        }
        Polynomial { terms: out }
    }

    /// Wraps terms already strictly decreasing with nonzero coefficients.
    pub(crate) fn from_sorted_terms(terms: Vec<Term>) -> Self {
        Polynomial { terms }
    }

    /// Same terms, re-sorted under another order.
    pub fn reorder(&self, ring: &OrderedRing) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.cmp(&b.1, &a.1));
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn check_ring(&self, spec: &RingSpec) -> Result<()> {
        self.terms.iter().try_for_each(|(_, m)| m.check_ring(spec))
    }

    /// Total degree when homogeneous, `None` otherwise (and for zero).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.1.degree();
        self.terms
            .iter()
            .all(|(_, m)| m.degree() == d)
            .then_some(d)
    }

    /// Common bidegree of all terms, `None` if not bihomogeneous.
    pub fn bidegree(&self, spec: &RingSpec) -> Result<Option<Bidegree>> {
        let Some((_, lm)) = self.terms.first() else {
            return Ok(None);
        };
        let b = lm.bidegree(spec)?;
        for (_, m) in &self.terms[1..] {
            if m.bidegree(spec)? != b {
                return Ok(None);
            }
        }
        Ok(Some(b))
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(c, m)| (-c, m.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(a, n)| (a * c, n.mul(m)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Polynomial, ring: &OrderedRing) -> Self {
        self.add_scaled(other, &Rational::one(), None, ring)
    }

    pub fn sub(&self, other: &Polynomial, ring: &OrderedRing) -> Self {
        self.add_scaled(other, &-Rational::one(), None, ring)
    }

    /// `self + c * m * other` by a single merge pass.
    pub fn add_scaled(
        &self,
        other: &Polynomial,
        c: &Rational,
        m: Option<&Monomial>,
        ring: &OrderedRing,
    ) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(bc, bm)| {
                let mono = match m {
                    Some(m) => bm.mul(m),
                    None => bm.clone(),
                };
                (bc * c, mono)
            })
            .peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ring.cmp(&x.1, &y.1),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (ac, am) = a.next().unwrap();
                    let (bc, _) = b.next().unwrap();
                    let s = ac + bc;
                    if !s.is_zero() {
                        out.push((s, am.clone()));
                    }
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn mul(&self, other: &Polynomial, ring: &OrderedRing) -> Self {
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero();
        for (c, m) in &small.terms {
            acc = acc.add_scaled(big, c, Some(m), ring);
        }
        acc
    }

    pub fn pow(&self, k: u32, ring: &OrderedRing) -> Self {
        let mut acc = Polynomial::constant(ring, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self, ring);
        }
        acc
    }

    /// Re-embeds into a ring with a different number of variables (aux block
    /// added or dropped); callers must ensure dropped exponents are zero.
    pub fn resize(&self, ring: &OrderedRing) -> Self {
        let n = ring.nvars();
        Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(c, m)| (c.clone(), m.resize(n)))
                .collect(),
        )
    }

    pub fn display<'a>(&'a self, spec: &'a RingSpec) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, spec }
    }
}

pub(crate) fn require_monomial(p: &Polynomial, index: usize) -> Result<&Monomial> {
    if p.is_monomial() {
        Ok(&p.terms[0].1)
    } else {
        Err(Error::NotMonomial {
            index,
            terms: p.len(),
        })
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    spec: &'a RingSpec,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", m.display(self.spec))?;
            } else {
                write!(f, "{a}*{}", m.display(self.spec))?;
            }
        }
        Ok(())
    }
}
