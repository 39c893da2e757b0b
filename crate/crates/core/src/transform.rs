//! Block-wise linear changes of coordinates `g = g1 x g2` on `T = K[x, t]`
//! and a seeded search for sparse upper-triangular ones.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{groebner_in, IdealGens};
use crate::parse::{display_linear, Assignment};
use crate::poly::{Monomial, MonomialOrder, OrderedRing, Polynomial, Rational, RingSpec};
use crate::rees::{criterion, split_linear, CriterionReport, ReesPresentation};

/// Square matrix over the rationals; column `j` is the image of variable `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        Matrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::TransformShape {
                    rows: n,
                    cols: r.len(),
                    block: n,
                });
            }
        }
        Ok(Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Rational) {
        self.entries[row * self.n + col] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let v = self.get(i, j);
                match i.cmp(&j) {
                    std::cmp::Ordering::Equal => v.is_one(),
                    std::cmp::Ordering::Greater => v.is_zero(),
                    std::cmp::Ordering::Less => true,
                }
            })
        })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out[i * n + j] += a * b;
                    }
                }
            }
        }
        Matrix { n, entries: out }
    }

    pub fn determinant(&self) -> Rational {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pivot;
                let (top, rest) = a.split_at_mut(r);
                for (x, p) in rest[0].iter_mut().zip(&top[col]).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.entries[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::SingularTransform)?;
            a.swap(p, col);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        Ok(Matrix {
            n,
            entries: a.into_iter().flat_map(|r| r[n..].to_vec()).collect(),
        })
    }
}

/// `g = g1 x g2` in `GL_r(K) x GL_m(K)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiTransform {
    pub x_map: Matrix,
    pub t_map: Matrix,
}

impl BiTransform {
    pub fn identity(spec: &RingSpec) -> Self {
        BiTransform {
            x_map: Matrix::identity(spec.x_count),
            t_map: Matrix::identity(spec.t_count),
        }
    }

    pub fn new(x_map: Matrix, t_map: Matrix) -> Result<Self> {
        for m in [&x_map, &t_map] {
            if m.determinant().is_zero() {
                return Err(Error::SingularTransform);
            }
        }
        Ok(BiTransform { x_map, t_map })
    }

    /// Builds a transform from `var -> linear form` assignments; unlisted
    /// variables map to themselves.
    pub fn from_assignments(spec: &RingSpec, assignments: &[Assignment]) -> Result<Self> {
        let mut g = BiTransform::identity(spec);
        for a in assignments {
            let (block_start, mat) = if spec.x_range().contains(&a.var) {
                (0, &mut g.x_map)
            } else if spec.t_range().contains(&a.var) {
                (spec.x_count, &mut g.t_map)
            } else {
                return Err(Error::Invalid(format!(
                    "cannot transform {}",
                    spec.var_name(a.var)
                )));
            };
            let col = a.var - block_start;
            for row in 0..mat.size() {
                mat.set(row, col, Rational::zero());
            }
            for (c, m) in a.image.terms() {
                let pos = m.exponents().iter().position(|&e| e == 1).unwrap();
                if pos < block_start || pos >= block_start + mat.size() {
                    return Err(Error::Invalid(format!(
                        "image of {} leaves its block",
                        spec.var_name(a.var)
                    )));
                }
                mat.set(pos - block_start, col, c.clone());
            }
        }
        BiTransform::new(g.x_map, g.t_map)
    }

    pub fn is_identity(&self) -> bool {
        self.x_map.is_identity() && self.t_map.is_identity()
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(BiTransform {
            x_map: self.x_map.inverse()?,
            t_map: self.t_map.inverse()?,
        })
    }

    fn check_shape(&self, spec: &RingSpec) -> Result<()> {
        for (m, block) in [(&self.x_map, spec.x_count), (&self.t_map, spec.t_count)] {
            if m.size() != block {
                return Err(Error::TransformShape {
                    rows: m.size(),
                    cols: m.size(),
                    block,
                });
            }
        }
        Ok(())
    }

    /// Image of every variable of `ring` as a linear form.
    fn images(&self, ring: &OrderedRing) -> Vec<Option<Polynomial>> {
        let spec = ring.spec;
        let mut out = vec![None; spec.nvars()];
        for (mat, start) in [(&self.x_map, 0), (&self.t_map, spec.x_count)] {
            for col in 0..mat.size() {
                let identity = (0..mat.size()).all(|row| {
                    let v = mat.get(row, col);
                    if row == col {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                });
                if identity {
                    continue;
                }
                let terms = (0..mat.size())
                    .filter(|&row| !mat.get(row, col).is_zero())
                    .map(|row| {
                        (
                            mat.get(row, col).clone(),
                            Monomial::var(spec.nvars(), start + row),
                        )
                    })
                    .collect();
                out[start + col] = Some(Polynomial::from_terms(ring, terms));
            }
        }
        out
    }

    /// Substitutes the images of the variables into `f`.
    pub fn apply_poly(&self, f: &Polynomial, ring: &OrderedRing) -> Polynomial {
        let images = self.images(ring);
        Substituter::new(ring, &images).apply(f)
    }

    /// `var -> image` lines for every non-identity column, in variable order.
    pub fn assignments_text(&self, spec: &RingSpec) -> Vec<String> {
        let ring = OrderedRing::new(*spec, MonomialOrder::degrevlex());
        self.images(&ring)
            .into_iter()
            .enumerate()
            .filter_map(|(v, im)| {
                im.map(|p| format!("{} -> {}", spec.var_name(v), display_linear(&p, spec)))
            })
            .collect()
    }
}

struct Substituter<'a> {
    ring: &'a OrderedRing,
    images: &'a [Option<Polynomial>],
    powers: HashMap<(usize, u32), Polynomial>,
}

impl<'a> Substituter<'a> {
    fn new(ring: &'a OrderedRing, images: &'a [Option<Polynomial>]) -> Self {
        Substituter {
            ring,
            images,
            powers: HashMap::new(),
        }
    }

    fn power(&mut self, var: usize, e: u32) -> Polynomial {
        if let Some(p) = self.powers.get(&(var, e)) {
            return p.clone();
        }
        let base = self.images[var].as_ref().unwrap();
        let p = if e == 1 {
            base.clone()
        } else {
            self.power(var, e - 1).mul(base, self.ring)
        };
        self.powers.insert((var, e), p.clone());
        p
    }

    fn apply(&mut self, f: &Polynomial) -> Polynomial {
        let n = self.ring.nvars();
        let mut acc = Polynomial::zero();
        for (c, m) in f.terms() {
            let mut fixed = vec![0u32; n];
            let mut moving = Vec::new();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if self.images[v].is_some() {
                    moving.push((v, e));
                } else {
                    fixed[v] = e;
                }
            }
            let mut term = Polynomial::monomial(c.clone(), Monomial::from_exponents(fixed));
            for (v, e) in moving {
                let p = self.power(v, e);
                term = term.mul(&p, self.ring);
            }
            acc = acc.add(&term, self.ring);
        }
        acc
    }
}

/// `g(I)`: every generator with `x_i`, `t_j` replaced by their images.
pub fn apply_bitransform(ideal: &IdealGens, g: &BiTransform) -> Result<IdealGens> {
    let spec = ideal.ring.spec;
    if spec.aux_count != 0 {
        return Err(Error::Invalid(
            "transforms act on K[x, t] only, not on auxiliary variables".into(),
        ));
    }
    g.check_shape(&spec)?;
    for m in [&g.x_map, &g.t_map] {
        if m.determinant().is_zero() {
            return Err(Error::SingularTransform);
        }
    }
    let images = g.images(&ideal.ring);
    let mut sub = Substituter::new(&ideal.ring, &images);
    let gens = ideal.gens.iter().map(|f| sub.apply(f)).collect();
    Ok(IdealGens::new(ideal.ring.clone(), gens))
}

impl fmt::Display for BiTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = RingSpec::new(self.x_map.size(), self.t_map.size());
        let lines = self.assignments_text(&spec);
        if lines.is_empty() {
            write!(f, "identity")
        } else {
            write!(f, "{}", lines.join(", "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    /// Upper unitriangular with a few off-diagonal entries per block.
    SparseTriangular,
    /// Every variable maps to a random combination of its whole block.
    Dense,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub max_candidates: usize,
    pub max_off_diag_per_block: usize,
    #[serde(serialize_with = "serialize_pool")]
    pub coefficient_pool: Vec<Rational>,
    pub mode: SearchMode,
    /// Candidates evaluated per batch; the winner is decided per batch.
    pub batch_size: usize,
}

fn serialize_pool<S: serde::Serializer>(
    pool: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(pool.iter().map(|c| c.to_string()))
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            max_candidates: 64,
            max_off_diag_per_block: 2,
            coefficient_pool: vec![Rational::one()],
            mode: SearchMode::SparseTriangular,
            batch_size: 8,
        }
    }
}

/// Generates the deterministic candidate sequence for `cfg`.
pub fn candidate_transforms(spec: &RingSpec, cfg: &SearchConfig) -> Vec<BiTransform> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out: Vec<BiTransform> = Vec::with_capacity(cfg.max_candidates);
    let pool: Vec<Rational> = if cfg.coefficient_pool.is_empty() {
        vec![Rational::one()]
    } else {
        cfg.coefficient_pool.clone()
    };
    // bounded retries so a tiny candidate space cannot loop forever
    let mut attempts = 0usize;
    while out.len() < cfg.max_candidates && attempts < 64 * cfg.max_candidates.max(1) {
        attempts += 1;
        let g = match cfg.mode {
            SearchMode::SparseTriangular => BiTransform {
                x_map: sparse_block(&mut rng, spec.x_count, cfg.max_off_diag_per_block, &pool),
                t_map: sparse_block(&mut rng, spec.t_count, cfg.max_off_diag_per_block, &pool),
            },
            SearchMode::Dense => BiTransform {
                x_map: dense_block(&mut rng, spec.x_count, &pool),
                t_map: dense_block(&mut rng, spec.t_count, &pool),
            },
        };
        if g.is_identity() || out.contains(&g) {
            continue;
        }
        if cfg.mode == SearchMode::Dense
            && (g.x_map.determinant().is_zero() || g.t_map.determinant().is_zero())
        {
            continue;
        }
        out.push(g);
    }
    out
}

fn sparse_block(rng: &mut ChaCha8Rng, n: usize, max_off: usize, pool: &[Rational]) -> Matrix {
    let mut m = Matrix::identity(n);
    if n < 2 {
        return m;
    }
    let mut slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let count = rng.gen_range(0..=max_off.min(slots.len()));
    slots.shuffle(rng);
    for &(i, j) in &slots[..count] {
        m.set(i, j, pool.choose(rng).unwrap().clone());
    }
    m
}

fn dense_block(rng: &mut ChaCha8Rng, n: usize, pool: &[Rational]) -> Matrix {
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let c: i64 = rng.gen_range(-3..=3);
            let base = pool.choose(rng).unwrap();
            m.set(i, j, base * Rational::from_integer(c.into()));
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateLog {
    pub index: usize,
    pub transform: String,
    pub passes: bool,
    pub k0: Option<u32>,
    pub g_count: usize,
    pub b_count: usize,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub best: Option<BiTransform>,
    pub report: Option<CriterionReport>,
    pub log: Vec<CandidateLog>,
}

fn evaluate(
    rees: &ReesPresentation,
    order: MonomialOrder,
    g: &BiTransform,
) -> Result<CriterionReport> {
    let ring = rees.t_ring().with_order(order);
    let transformed = apply_bitransform(&IdealGens::new(ring.clone(), rees.p.elements.clone()), g)?;
    let gb = groebner_in(&ring, &transformed.gens);
    let split = split_linear(
        &IdealGens::from_monomials(ring, gb.leading_monomials()),
        Some(g.clone()),
    )?;
    Ok(criterion(&split, rees.m(), rees.d))
}

/// Evaluates `candidates` batch by batch; returns the first batch's passing
/// candidate with the smallest threshold (lowest index among ties).
pub fn search_among(
    rees: &ReesPresentation,
    order: MonomialOrder,
    candidates: &[BiTransform],
    batch_size: usize,
) -> Result<SearchOutcome> {
    let mut log = Vec::new();
    for (batch_no, batch) in candidates.chunks(batch_size.max(1)).enumerate() {
        let base = batch_no * batch_size.max(1);
        let results: Vec<Result<CriterionReport>> =
            batch.par_iter().map(|g| evaluate(rees, order, g)).collect();
        let mut winner: Option<(u32, usize, CriterionReport)> = None;
        for (offset, (g, res)) in batch.iter().zip(results).enumerate() {
            let report = res?;
            log.push(CandidateLog {
                index: base + offset,
                transform: g.to_string(),
                passes: report.passes,
                k0: report.k0,
                g_count: report.g_count,
                b_count: report.b.len(),
            });
            if let Some(k0) = report.k0.filter(|_| report.passes) {
                if winner.as_ref().is_none_or(|(best, _, _)| k0 < *best) {
                    winner = Some((k0, offset, report));
                }
            }
        }
        if let Some((_, offset, report)) = winner {
            return Ok(SearchOutcome {
                best: Some(batch[offset].clone()),
                report: Some(report),
                log,
            });
        }
    }
    Ok(SearchOutcome {
        best: None,
        report: None,
        log,
    })
}

/// Seeded search for a transform under which the criterion passes.
pub fn search_transform(
    rees: &ReesPresentation,
    order: MonomialOrder,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let candidates = candidate_transforms(&rees.spec(), cfg);
    search_among(rees, order, &candidates, cfg.batch_size)
}
