//! Brute-force oracles shared by the integration tests. None of them go
//! through Gröbner bases, the pivot recursion, or the lcm-lattice code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linres::groebner::{normal_form, GroebnerBasis, IdealGens};
use linres::linalg::rank_small;
use linres::poly::{rat, Monomial, MonomialOrder, OrderedRing, Polynomial, Rational, RingSpec};

pub fn mono(e: &[u32]) -> Monomial {
    Monomial::from_exponents(e.to_vec())
}

/// All exponent vectors of length `n` with entries summing to `d`, by
/// filtering the full box `[0, d]^n`.
pub fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = (d as usize + 1).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut e = Vec::with_capacity(n);
        for _ in 0..n {
            e.push((c % (d as usize + 1)) as u32);
            c /= d as usize + 1;
        }
        if e.iter().sum::<u32>() == d {
            out.push(e);
        }
    }
    out
}

/// Monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Monomials of bidegree `(k, j)` in `T = K[x_1..x_r, t_1..t_m]`.
pub fn monomials_of_bidegree(spec: &RingSpec, k: u32, j: u32) -> Vec<Monomial> {
    let xs = monomials_of_degree(spec.x_count, j);
    let ts = monomials_of_degree(spec.t_count, k);
    let mut out = Vec::new();
    for x in &xs {
        for t in &ts {
            let mut e = x.exponents().to_vec();
            e.extend_from_slice(t.exponents());
            out.push(Monomial::from_exponents(e));
        }
    }
    out
}

pub fn in_monomial_ideal(gens: &[Monomial], m: &Monomial) -> bool {
    gens.iter().any(|g| g.divides(m))
}

/// Counts degree-`d` monomials outside the monomial ideal.
pub fn standard_count(gens: &[Monomial], n: usize, d: u32) -> u64 {
    monomials_of_degree(n, d)
        .iter()
        .filter(|m| !in_monomial_ideal(gens, m))
        .count() as u64
}

/// Graded Betti numbers of `S/I` from the Taylor complex: in multidegree
/// `b` the complex has basis `{F : lcm(F) = b}` with the usual alternating
/// differential; its homology at `|F| = i` is `β_{i,b}(S/I)`.
pub fn taylor_betti_quotient(gens: &[Monomial]) -> BTreeMap<(u32, u32), u64> {
    let g = gens.len();
    assert!(g <= 16);
    let n = gens.first().map_or(0, Monomial::nvars);
    let mut by_lcm: HashMap<Monomial, Vec<u32>> = HashMap::new();
    for mask in 0u32..(1 << g) {
        let mut l = Monomial::one(n);
        for (i, gi) in gens.iter().enumerate() {
            if mask & (1 << i) != 0 {
                l = l.lcm(gi);
            }
        }
        by_lcm.entry(l).or_default().push(mask);
    }
    let mut out = BTreeMap::new();
    for (b, subsets) in by_lcm {
        let mut by_size: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for s in subsets {
            by_size.entry(s.count_ones()).or_default().push(s);
        }
        for v in by_size.values_mut() {
            v.sort_unstable();
        }
        let rank = |i: u32| -> usize {
            // ∂ : C_i -> C_{i-1}
            let (Some(rows), Some(cols)) = (by_size.get(&i), i.checked_sub(1).and_then(|p| by_size.get(&p)))
            else {
                return 0;
            };
            let m: Vec<Vec<i64>> = rows
                .iter()
                .map(|&f| {
                    let mut row = vec![0i64; cols.len()];
                    let mut sign = 1;
                    for v in 0..g {
                        if f & (1 << v) != 0 {
                            if let Ok(c) = cols.binary_search(&(f & !(1 << v))) {
                                row[c] = sign;
                            }
                            sign = -sign;
                        }
                    }
                    row
                })
                .collect();
            rank_small(&m)
        };
        for (&i, faces) in &by_size {
            let h = faces.len() - rank(i) - rank(i + 1);
            if h > 0 {
                *out.entry((i, b.degree())).or_default() += h as u64;
            }
        }
    }
    out
}

/// Incremental row echelon form over the rationals on sparse vectors.
#[derive(Default)]
pub struct Echelon {
    /// pivot column -> normalized row (pivot entry 1)
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl Echelon {
    /// Adds `v`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, mut v: BTreeMap<usize, Rational>) -> bool {
        v.retain(|_, c| !c.is_zero());
        while let Some((&col, c)) = v.iter().find(|(col, _)| self.rows.contains_key(col)) {
            let c = c.clone();
            let row = &self.rows[&col];
            for (&k, r) in row {
                let e = v.entry(k).or_insert_with(Rational::zero);
                *e -= &c * r;
                if e.is_zero() {
                    v.remove(&k);
                }
            }
        }
        let Some((&pivot, c)) = v.iter().next() else {
            return false;
        };
        let inv = c.recip();
        for val in v.values_mut() {
            *val *= &inv;
        }
        self.rows.insert(pivot, v);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Dense-index a polynomial's terms through `index`.
pub fn vectorize(p: &Polynomial, index: &mut HashMap<Monomial, usize>) -> BTreeMap<usize, Rational> {
    let mut v = BTreeMap::new();
    for (c, m) in p.terms() {
        let n = index.len();
        let i = *index.entry(m.clone()).or_insert(n);
        v.insert(i, c.clone());
    }
    v
}

/// Spanning set of the degree-`d` part of the ideal generated by the
/// homogeneous `gens`.
pub fn degree_slice(ring: &OrderedRing, gens: &[Polynomial], d: u32) -> Vec<Polynomial> {
    let n = ring.nvars();
    let mut out = Vec::new();
    for g in gens {
        let gd = g.homogeneous_degree().expect("homogeneous");
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(n, d - gd) {
            out.push(g.mul_term(&Rational::one(), &m));
        }
    }
    out
}

/// `dim (I ∩ K[non-aux])_d` by linear algebra: vectors of `I_d` are echeloned
/// with the aux-containing coordinates first, so the rows whose pivot lies
/// outside the aux block span the intersection.
pub fn eliminated_dimension(ring: &OrderedRing, gens: &[Polynomial], d: u32) -> usize {
    let spec = ring.spec;
    let aux = spec.aux_range();
    let slice = degree_slice(ring, gens, d);
    // aux-containing monomials get the small indices
    let mut monos: Vec<Monomial> = slice
        .iter()
        .flat_map(|p| p.terms().iter().map(|(_, m)| m.clone()))
        .collect();
    monos.sort();
    monos.dedup();
    monos.sort_by_key(|m| m.exponents()[aux.clone()].iter().all(|&e| e == 0));
    let mut index: HashMap<Monomial, usize> =
        monos.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let first_free = index
        .iter()
        .filter(|(m, _)| m.exponents()[aux.clone()].iter().all(|&e| e == 0))
        .map(|(_, &i)| i)
        .min()
        .unwrap_or(usize::MAX);
    let mut ech = Echelon::default();
    for p in &slice {
        ech.insert(vectorize(p, &mut index));
    }
    ech.rows.keys().filter(|&&k| k >= first_free).count()
}

/// `dim J_d` for homogeneous `gens` in `ring`.
pub fn ideal_dimension(ring: &OrderedRing, gens: &[Polynomial], d: u32) -> usize {
    let mut index = HashMap::new();
    let mut ech = Echelon::default();
    for p in degree_slice(ring, gens, d) {
        ech.insert(vectorize(&p, &mut index));
    }
    ech.rank()
}

/// Leading monomials of `P_{(k,j)}`, where `P` is the kernel of
/// `t^α x^β ↦ f^α x^β`, found without any Gröbner basis: a monomial μ is a
/// leading monomial of the kernel iff its image depends on the images of
/// the monomials below μ.
pub fn kernel_initial_monomials(
    base: &[Polynomial],
    s_ring: &OrderedRing,
    t_ring: &OrderedRing,
    k: u32,
    j: u32,
) -> Vec<Monomial> {
    let spec = t_ring.spec;
    let mut cols = monomials_of_bidegree(&spec, k, j);
    cols.sort_by(|a, b| t_ring.cmp(a, b));
    let mut powers: HashMap<Vec<u32>, Polynomial> = HashMap::new();
    let mut index = HashMap::new();
    let mut ech = Echelon::default();
    let mut out = Vec::new();
    for mu in cols {
        let e = mu.exponents();
        let alpha = e[spec.t_range()].to_vec();
        let image = powers
            .entry(alpha.clone())
            .or_insert_with(|| {
                let mut acc = Polynomial::constant(s_ring, Rational::one());
                for (i, &a) in alpha.iter().enumerate() {
                    if a > 0 {
                        acc = acc.mul(&base[i].pow(a, s_ring), s_ring);
                    }
                }
                acc
            })
            .clone();
        let x = Monomial::from_exponents(e[spec.x_range()].to_vec());
        let v = vectorize(&image.mul_term(&Rational::one(), &x), &mut index);
        if !ech.insert(v) {
            out.push(mu);
        }
    }
    out
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner(gb: &GroebnerBasis) -> bool {
    let ring = &gb.ring;
    let els = &gb.elements;
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            let (a, b) = (els[i].leading_monomial().unwrap(), els[j].leading_monomial().unwrap());
            let l = a.lcm(b);
            let fa = els[i].mul_term(&els[i].leading_coeff().unwrap().recip(), &l.div(a).unwrap());
            let fb = els[j].mul_term(&els[j].leading_coeff().unwrap().recip(), &l.div(b).unwrap());
            let s = fa.sub(&fb, ring);
            if !normal_form(&s, els, ring).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Monic, and no term of any element divisible by another leading monomial.
pub fn is_reduced(gb: &GroebnerBasis) -> bool {
    let lms = gb.leading_monomials();
    gb.elements.iter().enumerate().all(|(i, g)| {
        g.leading_coeff().unwrap().is_one()
            && g.terms().iter().all(|(_, m)| {
                lms.iter()
                    .enumerate()
                    .all(|(j, l)| j == i || !l.divides(m))
            })
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random homogeneous polynomial of degree `d` with small integer
/// coefficients and at most `terms` terms.
pub fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    ring: &OrderedRing,
    d: u32,
    terms: usize,
) -> Polynomial {
    let monos = monomials_of_degree(ring.nvars(), d);
    let mut t = Vec::new();
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            t.push((rat(c), m));
        }
    }
    Polynomial::from_terms(ring, t)
}

pub fn random_ideal(
    rng: &mut ChaCha8Rng,
    ring: &OrderedRing,
    count: usize,
    max_degree: u32,
) -> IdealGens {
    let gens = (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=max_degree);
            random_homogeneous(rng, ring, d, 3)
        })
        .filter(|g| !g.is_zero())
        .collect();
    IdealGens::new(ring.clone(), gens)
}

pub fn random_monomials(rng: &mut ChaCha8Rng, n: usize, count: usize, max_exp: u32) -> Vec<Monomial> {
    (0..count)
        .map(|_| {
            let mut e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            if e.iter().all(|&v| v == 0) {
                e[rng.gen_range(0..n)] = 1;
            }
            Monomial::from_exponents(e)
        })
        .collect()
}

pub fn ring(x: usize, t: usize, order: MonomialOrder) -> OrderedRing {
    OrderedRing::new(RingSpec::new(x, t), order)
}

/// Image of `p ∈ K[x, t]` under `t_j ↦ f_j`, in `S = K[x]`.
pub fn substitute_t(p: &Polynomial, base: &[Polynomial], s_ring: &OrderedRing, spec: &RingSpec) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (c, m) in p.terms() {
        let e = m.exponents();
        let mut term = Polynomial::monomial(c.clone(), Monomial::from_exponents(e[spec.x_range()].to_vec()));
        for (j, &a) in e[spec.t_range()].iter().enumerate() {
            if a > 0 {
                term = term.mul(&base[j].pow(a, s_ring), s_ring);
            }
        }
        acc = acc.add(&term, s_ring);
    }
    acc
}

/// Series coefficient `dim_K (S/I)_d` from an Euler characteristic
/// `Σ_j χ_j s^j` over `(1-s)^n`.
pub fn coefficient_from_euler(chi: &BTreeMap<u32, i64>, n: u64, d: u32) -> i64 {
    chi.iter()
        .filter(|(&j, _)| j <= d)
        .map(|(&j, &c)| c * linres::rees::binomial(n - 1 + (d - j) as u64, n - 1) as i64)
        .sum()
}

/// First ideal of a problem text, in its ring under `order`.
pub fn parse_ideal(text: &str, order: MonomialOrder) -> IdealGens {
    let pf = linres::parse::parse_problem(text).expect("problem parses");
    IdealGens::new(OrderedRing::new(pf.ring, order), pf.ideals[0].gens.clone())
}

pub fn preset_ideal(name: &str) -> IdealGens {
    let pf = linres::presets::preset(name).expect("preset parses");
    IdealGens::new(pf.canonical_ring(), pf.ideals[0].gens.clone())
}
