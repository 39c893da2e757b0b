//! Hilbert series of `S/I` (graded) and of `T/I` for monomial `I`
//! (bigraded), by pivot recursion on monomial ideals.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{initial_ideal, minimalize_monomials, IdealGens};
use crate::poly::{Monomial, MonomialOrder, OrderedRing};

/// Integer polynomial in `u` (t-grading) and `s` (x-grading), keyed by
/// `(u-exponent, s-exponent)`; no zero coefficients are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Poly2(BTreeMap<(u32, u32), BigInt>);

impl Poly2 {
    pub fn one() -> Self {
        Poly2(BTreeMap::from([((0, 0), BigInt::one())]))
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        self.0.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.0
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        let e = self.0.entry(key).or_default();
        *e += c;
        if e.is_zero() {
            self.0.remove(&key);
        }
    }

    fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&k, c) in &other.0 {
            out.add_term(k, c.clone());
        }
        out
    }

    fn shift(&self, w: (u32, u32)) -> Poly2 {
        Poly2(
            self.0
                .iter()
                .map(|(&(a, b), c)| ((a + w.0, b + w.1), c.clone()))
                .collect(),
        )
    }

    fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::default();
        for (&(a, b), c) in &self.0 {
            for (&(a2, b2), c2) in &other.0 {
                out.add_term((a + a2, b + b2), c * c2);
            }
        }
        out
    }

    /// `1 - u^a s^b`.
    fn one_minus(w: (u32, u32)) -> Poly2 {
        let mut p = Poly2::one();
        p.add_term(w, -BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Quotient by `(1 - u)` (`axis` 0) or `(1 - s)` (`axis` 1), if exact.
    fn div_one_minus(&self, axis: usize) -> Option<Poly2> {
        // group by the other exponent; each group must sum to zero
        let mut groups: BTreeMap<u32, BTreeMap<u32, BigInt>> = BTreeMap::new();
        for (&(a, b), c) in &self.0 {
            let (key, e) = if axis == 0 { (b, a) } else { (a, b) };
            groups.entry(key).or_default().insert(e, c.clone());
        }
        let mut out = Poly2::default();
        for (key, row) in groups {
            let mut running = BigInt::zero();
            let top = *row.keys().last().unwrap();
            for e in 0..=top {
                if let Some(c) = row.get(&e) {
                    running += c;
                }
                if e == top {
                    if !running.is_zero() {
                        return None;
                    }
                } else if !running.is_zero() {
                    let k = if axis == 0 { (e, key) } else { (key, e) };
                    out.add_term(k, running.clone());
                }
            }
        }
        Some(out)
    }
}

/// Per-variable weight `(u-exponent, s-exponent)`.
type Weights = Vec<(u32, u32)>;

struct PivotRecursion<'a> {
    weights: &'a Weights,
    memo: HashMap<Vec<Monomial>, Poly2>,
}

fn weight_of(weights: &Weights, m: &Monomial) -> (u32, u32) {
    m.exponents()
        .iter()
        .zip(weights)
        .fold((0, 0), |(a, b), (&e, &(wa, wb))| (a + e * wa, b + e * wb))
}

/// Minimal generators in a canonical (sorted) order.
fn minimal(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

impl PivotRecursion<'_> {
    /// Numerator of the series of `R/I` over `Π (1 - w(x_i))`.
    fn numerator(&mut self, gens: Vec<Monomial>) -> Poly2 {
        if gens.is_empty() {
            return Poly2::one();
        }
        if gens.iter().any(Monomial::is_one) {
            return Poly2::default();
        }
        if let Some(p) = self.memo.get(&gens) {
            return p.clone();
        }
        let n = gens[0].nvars();
        let mut freq = vec![0usize; n];
        for g in &gens {
            for (v, &e) in g.exponents().iter().enumerate() {
                if e > 0 {
                    freq[v] += 1;
                }
            }
        }
        // most frequent variable, ties to the lowest index
        let pivot = (0..n)
            .filter(|&v| freq[v] >= 2)
            .max_by(|&a, &b| freq[a].cmp(&freq[b]).then(b.cmp(&a)));
        let result = match pivot {
            None => gens.iter().fold(Poly2::one(), |acc, g| {
                acc.mul(&Poly2::one_minus(weight_of(self.weights, g)))
            }),
            Some(p) => {
                let x = Monomial::var(n, p);
                let mut plus: Vec<Monomial> =
                    gens.iter().filter(|g| !x.divides(g)).cloned().collect();
                plus.push(x.clone());
                let colon: Vec<Monomial> = gens
                    .iter()
                    .map(|g| g.div(&x).unwrap_or_else(|| g.clone()))
                    .collect();
                let a = self.numerator(minimal(plus));
                let b = self.numerator(minimal(colon));
                a.add(&b.shift(self.weights[p]))
            }
        };
        self.memo.insert(gens, result.clone());
        result
    }
}

fn numerator_of(gens: &[Monomial], weights: &Weights) -> Poly2 {
    let mut rec = PivotRecursion {
        weights,
        memo: HashMap::new(),
    };
    rec.numerator(minimal(gens.to_vec()))
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `numerator(s) / (1 - s)^denom_power`, reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    /// Coefficient of `s^i` at index `i`; trailing zeros trimmed.
    pub numerator: Vec<BigInt>,
    pub denom_power: u32,
}

impl HilbertSeries {
    fn from_poly2(p: &Poly2, denom_power: u32) -> Self {
        let mut p = p.clone();
        let mut denom_power = denom_power;
        while denom_power > 0 && !p.is_zero() {
            match p.div_one_minus(1) {
                Some(q) => {
                    p = q;
                    denom_power -= 1;
                }
                None => break,
            }
        }
        let top = p.0.keys().map(|&(_, b)| b).max();
        let mut numerator = vec![BigInt::zero(); top.map_or(0, |t| t as usize + 1)];
        for (&(_, b), c) in &p.0 {
            numerator[b as usize] += c;
        }
        if p.is_zero() {
            denom_power = 0;
        }
        HilbertSeries {
            numerator,
            denom_power,
        }
    }

    /// Hilbert function value in degree `d`.
    pub fn coefficient(&self, d: u32) -> BigInt {
        if self.denom_power == 0 {
            return self.numerator.get(d as usize).cloned().unwrap_or_default();
        }
        let r = self.denom_power as i64;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(i, _)| *i as u32 <= d)
            .map(|(i, c)| c * binomial(d as i64 - i as i64 + r - 1, r - 1))
            .sum()
    }

    pub fn numerator_string(&self) -> String {
        poly_string(self.numerator.iter().enumerate().map(|(i, c)| (c, vec![("s", i as u32)])))
    }

    pub fn denominator_string(&self) -> String {
        match self.denom_power {
            0 => "1".into(),
            1 => "(1-s)".into(),
            k => format!("(1-s)^{k}"),
        }
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / {}", self.numerator_string(), self.denominator_string())
    }
}

impl Serialize for HilbertSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HilbertSeries", 3)?;
        let coeffs: Vec<String> = self.numerator.iter().map(BigInt::to_string).collect();
        st.serialize_field("numerator", &coeffs)?;
        st.serialize_field("denom_power", &self.denom_power)?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}

fn poly_string<'a, I: Iterator<Item = (&'a BigInt, Vec<(&'static str, u32)>)>>(terms: I) -> String {
    let mut out = String::new();
    for (c, vars) in terms {
        if c.is_zero() {
            continue;
        }
        let mono: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let mag = c.abs();
        let body = match (mono.is_empty(), mag.is_one()) {
            (true, _) => mag.to_string(),
            (false, true) => mono.join("*"),
            (false, false) => format!("{}*{}", mag, mono.join("*")),
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Bigraded series `numerator(u, s) / ((1-u)^u_power (1-s)^s_power)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedSeries {
    pub numerator: Poly2,
    pub u_power: u32,
    pub s_power: u32,
}

impl BigradedSeries {
    fn reduced(mut numerator: Poly2, mut u_power: u32, mut s_power: u32) -> Self {
        for axis in [0, 1] {
            loop {
                let power = if axis == 0 { &mut u_power } else { &mut s_power };
                if *power == 0 || numerator.is_zero() {
                    break;
                }
                match numerator.div_one_minus(axis) {
                    Some(q) => {
                        numerator = q;
                        *power -= 1;
                    }
                    None => break,
                }
            }
        }
        if numerator.is_zero() {
            u_power = 0;
            s_power = 0;
        }
        BigradedSeries {
            numerator,
            u_power,
            s_power,
        }
    }

    /// Dimension of the `(k, j)` component.
    pub fn coefficient(&self, k: u32, j: u32) -> BigInt {
        let factor = |d: i64, p: u32| -> BigInt {
            if p == 0 {
                if d == 0 { BigInt::one() } else { BigInt::zero() }
            } else {
                binomial(d + p as i64 - 1, p as i64 - 1)
            }
        };
        self.numerator
            .0
            .iter()
            .filter(|(&(a, b), _)| a <= k && b <= j)
            .map(|(&(a, b), c)| {
                c * factor(k as i64 - a as i64, self.u_power)
                    * factor(j as i64 - b as i64, self.s_power)
            })
            .sum()
    }

    pub fn numerator_string(&self) -> String {
        poly_string(
            self.numerator
                .0
                .iter()
                .map(|(&(a, b), c)| (c, vec![("u", a), ("s", b)])),
        )
    }

    pub fn denominator_string(&self) -> String {
        let part = |v: &str, p: u32| match p {
            0 => String::new(),
            1 => format!("(1-{v})"),
            k => format!("(1-{v})^{k}"),
        };
        let d = format!("{}{}", part("u", self.u_power), part("s", self.s_power));
        if d.is_empty() {
            "1".into()
        } else {
            d
        }
    }
}

impl fmt::Display for BigradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / {}", self.numerator_string(), self.denominator_string())
    }
}

impl Serialize for BigradedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BigradedSeries", 4)?;
        let terms: Vec<(u32, u32, String)> = self
            .numerator
            .0
            .iter()
            .map(|(&(a, b), c)| (a, b, c.to_string()))
            .collect();
        st.serialize_field("numerator", &terms)?;
        st.serialize_field("u_power", &self.u_power)?;
        st.serialize_field("s_power", &self.s_power)?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}

/// Series of a monomial quotient, every variable in degree one.
pub fn hs_monomial(gens: &[Monomial], nvars: usize) -> HilbertSeries {
    let weights: Weights = vec![(0, 1); nvars];
    HilbertSeries::from_poly2(&numerator_of(gens, &weights), nvars as u32)
}

/// `HS(S/I)` for homogeneous `I`, read off an initial ideal.
pub fn hs_quotient(ideal: &IdealGens) -> Result<HilbertSeries> {
    for (index, g) in ideal.gens.iter().enumerate() {
        if g.homogeneous_degree().is_none() {
            return Err(Error::NotHomogeneous { index });
        }
    }
    let n = ideal.ring.nvars();
    let monos = if ideal.is_monomial() {
        ideal.monomials()?
    } else {
        initial_ideal(ideal, MonomialOrder::degrevlex()).monomials()?
    };
    Ok(hs_monomial(&monos, n))
}

/// Bigraded series of `T/I`, `deg t_j = (1,0)` and `deg x_i = (0,1)`.
pub fn hs_bigraded(ideal: &IdealGens) -> Result<BigradedSeries> {
    let spec = ideal.ring.spec;
    if spec.aux_count != 0 {
        return Err(Error::AuxInBidegree);
    }
    let monos = ideal.monomials()?;
    let mut weights: Weights = vec![(0, 1); spec.nvars()];
    for v in spec.t_range() {
        weights[v] = (1, 0);
    }
    let num = numerator_of(&monos, &weights);
    Ok(BigradedSeries::reduced(
        num,
        spec.t_count as u32,
        spec.x_count as u32,
    ))
}

/// Counts monomials of each total degree `<= max_degree` outside the ideal.
pub fn standard_monomial_counts(
    ring: &OrderedRing,
    gens: &[Monomial],
    max_degree: u32,
) -> Vec<u64> {
    let gens = minimalize_monomials(ring, gens.to_vec());
    let n = ring.nvars();
    let mut counts = vec![0u64; max_degree as usize + 1];
    let mut layer = vec![Monomial::one(n)];
    for d in 0..=max_degree {
        counts[d as usize] = layer
            .iter()
            .filter(|m| !gens.iter().any(|g| g.divides(m)))
            .count() as u64;
        if d == max_degree {
            break;
        }
        let mut next = Vec::new();
        for m in &layer {
            // extend only by variables at or after the last used one
            let last = m.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
            for v in last..n {
                next.push(m.mul(&Monomial::var(n, v)));
            }
        }
        layer = next;
    }
    counts
}
