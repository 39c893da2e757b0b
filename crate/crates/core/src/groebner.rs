//! Normal forms, reduced Gröbner bases, elimination, initial ideals and
//! ideal powers.

use std::collections::HashSet;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{
    require_monomial, Monomial, MonomialOrder, OrderKind, OrderedRing, Polynomial, Rational,
    RingSpec, Term,
};

/// A generator list together with the ring and order it is canonicalized under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGens {
    pub ring: OrderedRing,
    pub gens: Vec<Polynomial>,
}

impl IdealGens {
    /// Zero generators are dropped; the rest are re-sorted under `ring`.
    pub fn new(ring: OrderedRing, gens: Vec<Polynomial>) -> Self {
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.reorder(&ring))
            .collect();
        IdealGens { ring, gens }
    }

    pub fn from_monomials(ring: OrderedRing, monos: Vec<Monomial>) -> Self {
        let gens = monos
            .into_iter()
            .map(|m| Polynomial::monomial(Rational::one(), m))
            .collect();
        IdealGens { ring, gens }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.ring.spec
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(Polynomial::is_monomial)
    }

    /// The generators as monomials; errors on any non-monomial generator.
    pub fn monomials(&self) -> Result<Vec<Monomial>> {
        self.gens
            .iter()
            .enumerate()
            .map(|(i, g)| require_monomial(g, i).cloned())
            .collect()
    }

    /// Common total degree of all generators.
    pub fn generator_degree(&self) -> Result<u32> {
        let mut degree = None;
        for (index, g) in self.gens.iter().enumerate() {
            let d = g
                .homogeneous_degree()
                .ok_or(Error::NotHomogeneous { index })?;
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(Error::NotEquigenerated),
                _ => {}
            }
        }
        degree.ok_or(Error::ZeroIdeal)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        IdealGens::new(self.ring.with_order(order), self.gens.clone())
    }
}

/// Reduced Gröbner basis: monic, sorted ascending by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub ring: OrderedRing,
    pub elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn into_ideal(self) -> IdealGens {
        IdealGens {
            ring: self.ring,
            gens: self.elements,
        }
    }

    /// Membership test by reduction to zero.
    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, &self.elements, &self.ring).is_zero()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Exponent-support bitmask; a quick necessary condition for divisibility.
fn support_mask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |acc, (i, _)| acc | (1 << (i % 64)))
}

struct Reducer<'a> {
    ring: &'a OrderedRing,
    /// (leading monomial, its mask, inverse leading coefficient, polynomial)
    divisors: Vec<(Monomial, u64, Rational, &'a Polynomial)>,
}

impl<'a> Reducer<'a> {
    fn new<I: IntoIterator<Item = &'a Polynomial>>(ring: &'a OrderedRing, basis: I) -> Self {
        let divisors = basis
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                let (c, m) = g.leading_term().unwrap();
                (m.clone(), support_mask(m), c.recip(), g)
            })
            .collect();
        Reducer { ring, divisors }
    }

    fn find(&self, m: &Monomial) -> Option<(Monomial, Rational, &'a Polynomial)> {
        let mask = support_mask(m);
        self.divisors.iter().find_map(|(lm, lmask, inv, g)| {
            if lmask & !mask != 0 {
                return None;
            }
            m.div(lm).map(|q| (q, inv.clone(), *g))
        })
    }

    /// Full reduction: no term of the result is divisible by a leading monomial.
    fn reduce(&self, f: &Polynomial) -> Polynomial {
        let mut rem: Vec<Term> = Vec::new();
        let mut work = f.clone();
        while let Some((c, m)) = work.leading_term() {
            match self.find(m) {
                Some((q, inv, g)) => {
                    let factor = -(c * &inv);
                    work = work.add_scaled(g, &factor, Some(&q), self.ring);
                }
                None => {
                    let mut terms = work.into_terms();
                    // peel off every leading term that cannot be reduced
                    let mut split = 1;
                    while split < terms.len() && self.find(&terms[split].1).is_none() {
                        split += 1;
                    }
                    let tail = terms.split_off(split);
                    rem.extend(terms);
                    work = Polynomial::from_sorted_terms(tail);
                }
            }
        }
        Polynomial::from_sorted_terms(rem)
    }
}

/// Remainder of `f` on division by `basis` under `ring`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ring: &OrderedRing) -> Polynomial {
    Reducer::new(ring, basis).reduce(&f.reorder(ring))
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger's algorithm with the normal selection strategy and the
/// Gebauer–Möller installation of the coprime and chain criteria.
pub fn reduced_groebner(ideal: &IdealGens) -> GroebnerBasis {
    groebner_in(&ideal.ring, &ideal.gens)
}

pub(crate) fn groebner_in(ring: &OrderedRing, gens: &[Polynomial]) -> GroebnerBasis {
    groebner_truncated(ring, gens, |_| true)
}

/// Buchberger restricted to S-pairs whose lcm satisfies `keep`.
///
/// For input homogeneous in a grading where `keep` is a degree bound, the
/// output agrees with the reduced basis in all degrees within the bound.
pub fn groebner_truncated<F: Fn(&Monomial) -> bool>(
    ring: &OrderedRing,
    gens: &[Polynomial],
    keep: F,
) -> GroebnerBasis {
    let mut input: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.reorder(ring).monic())
        .collect();
    // deterministic insertion order: ascending leading monomial
    input.sort_by(|a, b| {
        ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .then_with(|| a.len().cmp(&b.len()))
    });

    let mut polys: Vec<Polynomial> = Vec::new();
    let mut lms: Vec<Monomial> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for f in input {
        let h = Reducer::new(ring, active.iter().map(|&i| &polys[i])).reduce(&f);
        if h.is_zero() {
            continue;
        }
        insert(ring, h.monic(), &mut polys, &mut lms, &mut active, &mut pairs);
    }

    while let Some(pos) = select_pair(ring, &pairs) {
        let pair = pairs.swap_remove(pos);
        if !keep(&pair.lcm) {
            continue;
        }
        let s = s_polynomial(ring, &polys[pair.i], &polys[pair.j], &pair.lcm);
        let h = Reducer::new(ring, active.iter().map(|&i| &polys[i])).reduce(&s);
        if h.is_zero() {
            continue;
        }
        insert(ring, h.monic(), &mut polys, &mut lms, &mut active, &mut pairs);
    }

    let basis: Vec<Polynomial> = active.iter().map(|&i| polys[i].clone()).collect();
    interreduce(ring, basis)
}

fn select_pair(ring: &OrderedRing, pairs: &[Pair]) -> Option<usize> {
    (0..pairs.len()).min_by(|&a, &b| {
        let (p, q) = (&pairs[a], &pairs[b]);
        ring.cmp(&p.lcm, &q.lcm)
            .then(p.i.cmp(&q.i))
            .then(p.j.cmp(&q.j))
    })
}

fn s_polynomial(ring: &OrderedRing, f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let uf = lcm.div(f.leading_monomial().unwrap()).unwrap();
    let ug = lcm.div(g.leading_monomial().unwrap()).unwrap();
    // both monic
    let a = f.mul_term(&Rational::one(), &uf);
    a.add_scaled(g, &-Rational::one(), Some(&ug), ring)
}

fn insert(
    ring: &OrderedRing,
    h: Polynomial,
    polys: &mut Vec<Polynomial>,
    lms: &mut Vec<Monomial>,
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
) {
    let hi = polys.len();
    let hm = h.leading_monomial().unwrap().clone();
    polys.push(h);
    lms.push(hm.clone());

    // candidate pairs (g, h), chain criterion among themselves
    let cands: Vec<Pair> = active
        .iter()
        .map(|&g| Pair {
            i: g,
            j: hi,
            lcm: lms[g].lcm(&hm),
        })
        .collect();
    let mut keep: Vec<bool> = vec![true; cands.len()];
    for a in 0..cands.len() {
        if lms[cands[a].i].is_coprime(&hm) {
            continue;
        }
        for b in 0..cands.len() {
            if a == b || !keep[b] {
                continue;
            }
            if cands[b].lcm.divides(&cands[a].lcm)
                && (cands[b].lcm != cands[a].lcm || b < a)
            {
                keep[a] = false;
                break;
            }
        }
    }
    let new_pairs: Vec<Pair> = cands
        .into_iter()
        .zip(keep)
        .filter(|(p, k)| *k && !lms[p.i].is_coprime(&hm))
        .map(|(p, _)| p)
        .collect();

    // prune old pairs whose lcm is strictly dominated through h
    pairs.retain(|p| {
        !(hm.divides(&p.lcm)
            && lms[p.i].lcm(&hm) != p.lcm
            && lms[p.j].lcm(&hm) != p.lcm)
    });
    pairs.extend(new_pairs);

    active.retain(|&g| !hm.divides(&lms[g]));
    active.push(hi);
    let _ = ring;
}

/// Minimalizes, fully auto-reduces and sorts a Gröbner basis.
fn interreduce(ring: &OrderedRing, basis: Vec<Polynomial>) -> GroebnerBasis {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hm = h.leading_monomial().unwrap();
            j != i && hm.divides(lm) && (hm != lm || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut elements: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p);
            let head = minimal[i].leading_term().unwrap().clone();
            let tail = Polynomial::from_sorted_terms(minimal[i].terms()[1..].to_vec());
            let tail = Reducer::new(ring, others).reduce(&tail);
            let mut terms = vec![head];
            terms.extend(tail.into_terms());
            Polynomial::from_sorted_terms(terms).monic()
        })
        .collect();
    elements.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    GroebnerBasis {
        ring: ring.clone(),
        elements,
    }
}

/// Intersection with the subring without aux variables.
///
/// Uses the internal order: lex on the aux block, then DegRevLex (with the
/// caller's block precedence) on the rest. The result is the reduced basis
/// of the intersection under that DegRevLex.
pub fn eliminate(ideal: &IdealGens) -> Result<IdealGens> {
    let spec = ideal.ring.spec;
    if spec.aux_count == 0 {
        return Err(Error::NoAuxVariable);
    }
    let rest_order = MonomialOrder::new(OrderKind::DegRevLex, ideal.ring.order.precedence);
    let elim_ring = OrderedRing::new(spec, rest_order.eliminating());
    let gb = groebner_in(&elim_ring, &ideal.gens);
    let target = OrderedRing::new(spec.without_aux(), rest_order);
    let aux = spec.aux_range();
    let gens: Vec<Polynomial> = gb
        .elements
        .into_iter()
        .filter(|g| {
            g.leading_monomial().unwrap().exponents()[aux.clone()]
                .iter()
                .all(|&e| e == 0)
        })
        .map(|g| g.resize(&target))
        .collect();
    Ok(IdealGens {
        ring: target,
        gens,
    })
}

/// Minimal monomial generators, in ascending order under `ring`.
pub fn minimalize_monomials(ring: &OrderedRing, monos: Vec<Monomial>) -> Vec<Monomial> {
    let mut sorted = monos;
    sorted.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| ring.cmp(a, b)));
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| ring.cmp(a, b));
    out
}

/// All `k`-fold products of the generators.
///
/// Exact duplicates are removed; monomial ideals are additionally reduced to
/// their minimal generators.
pub fn ideal_power(ideal: &IdealGens, k: u32) -> Result<IdealGens> {
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    let ring = &ideal.ring;
    if ideal.is_monomial() {
        let base = ideal.monomials()?;
        let mut acc = base.clone();
        for _ in 1..k {
            let prod: Vec<Monomial> = acc
                .iter()
                .flat_map(|a| base.iter().map(move |b| a.mul(b)))
                .collect();
            acc = minimalize_monomials(ring, prod);
        }
        if k == 1 {
            acc = minimalize_monomials(ring, acc);
        }
        return Ok(IdealGens::from_monomials(ring.clone(), acc));
    }
    // products over multisets of generator indices (non-decreasing index tuples)
    let mut acc: Vec<(usize, Polynomial)> = ideal
        .gens
        .iter()
        .enumerate()
        .map(|(i, g)| (i, g.clone()))
        .collect();
    for _ in 1..k {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for (last, p) in &acc {
            for (i, g) in ideal.gens.iter().enumerate().skip(*last) {
                let q = p.mul(g, ring);
                if !q.is_zero() && seen.insert(q.clone()) {
                    next.push((i, q));
                }
            }
        }
        acc = next;
    }
    let mut seen = HashSet::new();
    let gens = acc
        .into_iter()
        .map(|(_, p)| p)
        .filter(|p| seen.insert(p.clone()))
        .collect();
    Ok(IdealGens {
        ring: ring.clone(),
        gens,
    })
}

/// Product of two ideals in the same ring.
pub fn ideal_product(a: &IdealGens, b: &IdealGens) -> IdealGens {
    let ring = &a.ring;
    let mut seen = HashSet::new();
    let gens = a
        .gens
        .iter()
        .flat_map(|f| b.gens.iter().map(move |g| f.mul(g, ring)))
        .filter(|p| !p.is_zero() && seen.insert(p.clone()))
        .collect();
    IdealGens {
        ring: ring.clone(),
        gens,
    }
}

/// Minimal monomial generators of the initial ideal under `order`.
pub fn initial_ideal(ideal: &IdealGens, order: MonomialOrder) -> IdealGens {
    let ring = ideal.ring.with_order(order);
    if ideal.is_monomial() {
        let monos = ideal.monomials().expect("checked monomial");
        return IdealGens::from_monomials(ring.clone(), minimalize_monomials(&ring, monos));
    }
    let gb = groebner_in(&ring, &ideal.gens);
    IdealGens::from_monomials(ring, gb.leading_monomials())
}
