//! Rees presentation ideals, the G + B split of an initial ideal, and the
//! threshold criterion for linear powers.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::groebner::{eliminate, groebner_in, groebner_truncated, GroebnerBasis, IdealGens};
use crate::transform::BiTransform;
use crate::poly::{Bidegree, Monomial, MonomialOrder, OrderedRing, Polynomial, Rational, RingSpec};

/// Multiset of bidegrees, kept sorted.
pub type Census = BTreeMap<Bidegree, usize>;

pub fn census_of<'a, I: IntoIterator<Item = &'a Monomial>>(spec: &RingSpec, monos: I) -> Census {
    let mut c = Census::new();
    for m in monos {
        *c.entry(m.bidegree(spec).expect("no aux in T")).or_default() += 1;
    }
    c
}

pub fn format_census(c: &Census) -> String {
    c.iter()
        .map(|(b, n)| format!("{b}:{n}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// `R(I) = T/P` for an equigenerated `I = (f_1..f_m)` in `S = K[x_1..x_r]`.
#[derive(Debug, Clone)]
pub struct ReesPresentation {
    /// The `f_j` in `S`, in listing order; `t_j` corresponds to `f_j`.
    pub base: IdealGens,
    pub d: u32,
    /// Reduced Gröbner basis of `P` in `T = K[x, t]`.
    pub p: GroebnerBasis,
    /// Bidegrees of a minimal generating set of `P`.
    pub census: Census,
    /// Bidegrees of the reduced Gröbner basis elements.
    pub gb_census: Census,
}

impl ReesPresentation {
    pub fn t_ring(&self) -> &OrderedRing {
        &self.p.ring
    }

    pub fn m(&self) -> usize {
        self.base.len()
    }

    pub fn spec(&self) -> RingSpec {
        self.p.ring.spec
    }

    /// The presentation ideal re-based under another order on `T`.
    pub fn in_order(&self, order: MonomialOrder) -> ReesPresentation {
        if order == self.p.ring.order {
            return self.clone();
        }
        let ring = self.p.ring.with_order(order);
        let p = groebner_in(&ring, &self.p.elements);
        let gb_census = element_census(&p);
        ReesPresentation {
            base: self.base.clone(),
            d: self.d,
            p,
            census: self.census.clone(),
            gb_census,
        }
    }
}

fn element_census(gb: &GroebnerBasis) -> Census {
    let mut c = Census::new();
    for g in &gb.elements {
        let b = g
            .bidegree(&gb.ring.spec)
            .expect("no aux in T")
            .expect("presentation ideal is bihomogeneous");
        *c.entry(b).or_default() += 1;
    }
    c
}

/// Kernel of `T -> S[y]`, `t_j -> f_j y`, by eliminating `y` from
/// `(t_j - y f_j)`; the result is re-based as a reduced basis under `order`.
pub fn rees_presentation(base: &IdealGens, order: MonomialOrder) -> Result<ReesPresentation> {
    let s_spec = *base.spec();
    if s_spec.t_count != 0 || s_spec.aux_count != 0 {
        return Err(Error::Invalid(
            "base ideal must live in the x-variables only".into(),
        ));
    }
    for (index, g) in base.gens.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::ZeroGenerator { index });
        }
    }
    let d = base.generator_degree()?;
    let m = base.len();

    let t_spec = RingSpec::new(s_spec.x_count, m);
    let ya_spec = t_spec.with_aux(1);
    let ya_ring = OrderedRing::new(ya_spec, order.without_elimination());
    let y = ya_spec.aux_range().start;
    let y_mono = Monomial::var(ya_spec.nvars(), y);

    let gens: Vec<Polynomial> = base
        .gens
        .iter()
        .enumerate()
        .map(|(j, f)| {
            let f = embed(f, &ya_ring);
            let t = Polynomial::var(&ya_ring, s_spec.x_count + j);
            t.add_scaled(&f, &-Rational::one(), Some(&y_mono), &ya_ring)
        })
        .collect();
    let kernel = eliminate(&IdealGens::new(ya_ring, gens))?;
    let t_ring = OrderedRing::new(t_spec, order.without_elimination());
    let p = if kernel.ring == t_ring {
        GroebnerBasis {
            ring: kernel.ring,
            elements: kernel.gens,
        }
    } else {
        groebner_in(&t_ring, &kernel.gens)
    };
    let gb_census = element_census(&p);
    let census = minimal_generator_census(&p);
    Ok(ReesPresentation {
        base: base.clone(),
        d,
        p,
        census,
        gb_census,
    })
}

/// Embeds a polynomial of `S` into a ring with the same x-block.
pub(crate) fn embed(f: &Polynomial, ring: &OrderedRing) -> Polynomial {
    let n = ring.nvars();
    Polynomial::from_terms(
        ring,
        f.terms()
            .iter()
            .map(|(c, m)| (c.clone(), m.resize(n)))
            .collect(),
    )
}

/// Minimal-generator count of `P` in each bidegree.
///
/// A basis element of total degree `δ` is a new minimal generator iff its
/// leading monomial is not in the initial ideal of the ideal generated by
/// the basis elements of degree `< δ`; that initial ideal is read off a
/// Gröbner basis truncated at degree `δ`.
pub fn minimal_generator_census(gb: &GroebnerBasis) -> Census {
    let ring = &gb.ring;
    let spec = ring.spec;
    let mut degrees: Vec<u32> = gb
        .elements
        .iter()
        .map(|g| g.leading_monomial().unwrap().degree())
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut census = Census::new();
    for &delta in &degrees {
        let lower: Vec<Polynomial> = gb
            .elements
            .iter()
            .filter(|g| g.leading_monomial().unwrap().degree() < delta)
            .cloned()
            .collect();
        let lower_lms = if lower.is_empty() {
            Vec::new()
        } else {
            groebner_truncated(ring, &lower, |m| m.degree() <= delta).leading_monomials()
        };
        for g in &gb.elements {
            let lm = g.leading_monomial().unwrap();
            if lm.degree() == delta && !lower_lms.iter().any(|h| h.divides(lm)) {
                *census
                    .entry(lm.bidegree(&spec).expect("no aux in T"))
                    .or_default() += 1;
            }
        }
    }
    census
}

/// `in(g(P)) = G + B`: generators of x-degree at most one versus the rest.
#[derive(Debug, Clone)]
pub struct LinearSplit {
    pub spec: RingSpec,
    pub g: Vec<Monomial>,
    pub b: Vec<Monomial>,
    pub source_order: MonomialOrder,
    pub transform: Option<BiTransform>,
}

impl LinearSplit {
    pub fn b_census(&self) -> Census {
        census_of(&self.spec, self.b.iter())
    }

    pub fn b_strings(&self) -> Vec<String> {
        self.b
            .iter()
            .map(|m| m.display(&self.spec).to_string())
            .collect()
    }
}

/// Partitions the minimal generators of a monomial initial ideal in `T`.
pub fn split_linear(in_gp: &IdealGens, transform: Option<BiTransform>) -> Result<LinearSplit> {
    let spec = in_gp.ring.spec;
    let monos = in_gp.monomials()?;
    let (g, b): (Vec<Monomial>, Vec<Monomial>) =
        monos.into_iter().partition(|m| m.xdeg(&spec) <= 1);
    Ok(LinearSplit {
        spec,
        g,
        b,
        source_order: in_gp.ring.order,
        transform,
    })
}

/// `t^α · m` for which no generator of `G` divides the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub b_element: Monomial,
    pub alpha: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub spec: RingSpec,
    pub passes: bool,
    pub k0: Option<u32>,
    pub d: u32,
    /// Largest t-degree among `B` (0 when `B` is empty).
    pub t_max: u32,
    pub g_count: usize,
    pub b: Vec<Monomial>,
    pub failures: Vec<Witness>,
}

impl CriterionReport {
    /// `reg(name^k) = dk for all k >= k0`, when the criterion passes.
    pub fn conclusion(&self, name: &str) -> Option<String> {
        let k0 = self.k0.filter(|_| self.passes)?;
        Some(format!(
            "reg({name}^k) = {}k for all k >= {k0}",
            self.d
        ))
    }

    pub fn witness_strings(&self) -> Vec<String> {
        let t0 = self.spec.x_count;
        self.failures
            .iter()
            .map(|w| {
                let mut e = vec![0u32; self.spec.nvars()];
                e[t0..t0 + w.alpha.len()].copy_from_slice(&w.alpha);
                let alpha = Monomial::from_exponents(e);
                format!(
                    "{} * {}",
                    w.b_element.display(&self.spec),
                    alpha.display(&self.spec)
                )
            })
            .collect()
    }
}

/// Exponent vectors of length `parts` summing to `total`, first coordinate
/// descending (so `e_1` comes first).
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// For every `m_i` in `B` of t-degree `t_i` and every `|α| = t_max + 1 - t_i`,
/// checks that some generator of `G` divides `t^α m_i`. On success the
/// threshold is `t_max + 1` (or 1 when `B` is empty).
pub fn criterion(split: &LinearSplit, m: usize, d: u32) -> CriterionReport {
    let spec = split.spec;
    let t_max = split.b.iter().map(|b| b.tdeg(&spec)).max().unwrap_or(0);
    let mut failures = Vec::new();
    for b in &split.b {
        let need = t_max + 1 - b.tdeg(&spec);
        for alpha in compositions(need, m) {
            let mut e = b.exponents().to_vec();
            for (j, a) in alpha.iter().enumerate() {
                e[spec.x_count + j] += a;
            }
            let prod = Monomial::from_exponents(e);
            if !split.g.iter().any(|g| g.divides(&prod)) {
                failures.push(Witness {
                    b_element: b.clone(),
                    alpha,
                });
            }
        }
    }
    let passes = failures.is_empty();
    let k0 = if split.b.is_empty() {
        Some(1)
    } else if passes {
        Some(t_max + 1)
    } else {
        None
    };
    CriterionReport {
        spec,
        passes,
        k0,
        d,
        t_max,
        g_count: split.g.len(),
        b: split.b.clone(),
        failures,
    }
}

/// Checks on a finite slice that `in(g(P))` and `(G)` agree in bidegree
/// `(k, j)`: every monomial of that bidegree divisible by an element of `B`
/// is already divisible by an element of `G`.
pub fn slice_agrees(split: &LinearSplit, k: u32, j: u32) -> bool {
    let spec = split.spec;
    split.b.iter().all(|b| {
        let bd = b.bidegree(&spec).unwrap();
        if bd.tdeg > k || bd.xdeg > j {
            return true;
        }
        let (dt, dx) = (k - bd.tdeg, j - bd.xdeg);
        compositions(dt, spec.t_count).iter().all(|alpha| {
            compositions(dx, spec.x_count).iter().all(|beta| {
                let mut e = b.exponents().to_vec();
                for (i, v) in beta.iter().enumerate() {
                    e[i] += v;
                }
                for (i, v) in alpha.iter().enumerate() {
                    e[spec.x_count + i] += v;
                }
                let prod = Monomial::from_exponents(e);
                split.g.iter().any(|g| g.divides(&prod))
            })
        })
    })
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    num_integer::binomial(n, k)
}

/// The k-th strand of a bigraded free module `⊕ T(-a,-b)^mult` as a graded
/// free S-module: each summand contributes `S(-b)^N`, `N = C(m-1+k-a, m-1)`,
/// when `k >= a`. Aggregated by `b`, ascending.
pub fn strand_of_free(shifts: &[(u32, u32, u64)], k: u32, m: u32) -> Vec<(u32, u64)> {
    assert!(m >= 1, "strand needs at least one t-variable");
    let mut acc: BTreeMap<u32, u64> = BTreeMap::new();
    for &(a, b, mult) in shifts {
        if k < a {
            continue;
        }
        let n = binomial((m - 1 + k - a) as u64, (m - 1) as u64);
        if n * mult > 0 {
            *acc.entry(b).or_default() += mult * n;
        }
    }
    acc.into_iter().collect()
}

/// Upper bound `n·d + (t-1)·L` for `reg(I^n)`, where `t` is the largest
/// x-degree among the generators of `in(P)` and `L = min(#generators, #vars)`
/// bounds the projective dimension of `T/in(P)`.
pub fn xreg_bound(in_p: &IdealGens, n: u32, d: u32) -> Result<u64> {
    let spec = in_p.ring.spec;
    let monos = in_p.monomials()?;
    let t = monos.iter().map(|m| m.xdeg(&spec)).max().unwrap_or(1).max(1);
    let l = monos.len().min(spec.nvars()) as u64;
    Ok(n as u64 * d as u64 + (t as u64 - 1) * l)
}
