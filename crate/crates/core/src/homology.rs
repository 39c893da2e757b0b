//! Graded Betti numbers of monomial ideals from the reduced homology of
//! upper Koszul simplicial complexes over the lcm lattice.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::{minimalize_monomials, IdealGens};
use crate::linalg::rank_small;
use crate::poly::Monomial;

/// A simplicial complex on at most 32 vertices, faces stored as bitmasks.
///
/// `faces` empty is the void complex; `faces == [0]` is the irrelevant
/// complex `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertex_count: usize,
    faces: Vec<u32>,
}

impl SimplicialComplex {
    /// Downward closure of `facets`.
    pub fn from_facets(vertex_count: usize, facets: &[u32]) -> Self {
        let mut set = HashSet::new();
        for &f in facets {
            // all submasks of f
            let mut s = f;
            loop {
                set.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        let mut faces: Vec<u32> = set.into_iter().collect();
        faces.sort_by_key(|&f| (f.count_ones(), f));
        SimplicialComplex {
            vertex_count,
            faces,
        }
    }

    pub fn void(vertex_count: usize) -> Self {
        SimplicialComplex {
            vertex_count,
            faces: Vec::new(),
        }
    }

    pub fn faces(&self) -> &[u32] {
        &self.faces
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: u32) -> bool {
        self.faces.binary_search_by_key(&(face.count_ones(), face), |&f| (f.count_ones(), f)).is_ok()
    }

    /// Faces with `dim + 1` vertices, ascending as bitmasks.
    fn faces_of_dim(&self, dim: i32) -> Vec<u32> {
        let size = (dim + 1) as u32;
        self.faces
            .iter()
            .copied()
            .filter(|f| f.count_ones() == size)
            .collect()
    }

    /// Rank of `∂_dim : C_dim -> C_{dim-1}` with the alternating sign
    /// convention on vertices in increasing order.
    fn boundary_rank(&self, dim: i32) -> usize {
        if dim < 0 {
            return 0;
        }
        let rows_faces = self.faces_of_dim(dim);
        let cols_faces = self.faces_of_dim(dim - 1);
        if rows_faces.is_empty() || cols_faces.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<i64>> = rows_faces
            .iter()
            .map(|&f| {
                let mut row = vec![0i64; cols_faces.len()];
                let mut sign = 1;
                for v in 0..self.vertex_count {
                    if f & (1 << v) != 0 {
                        let g = f & !(1 << v);
                        let c = cols_faces.binary_search(&g).expect("closed under faces");
                        row[c] = sign;
                        sign = -sign;
                    }
                }
                row
            })
            .collect();
        rank_small(&rows)
    }

    /// `dim H̃_i(Δ; Q)`, for `i >= -1`.
    pub fn reduced_homology(&self, i: i32) -> usize {
        let n = self.faces_of_dim(i).len();
        if n == 0 {
            return 0;
        }
        n - self.boundary_rank(i) - self.boundary_rank(i + 1)
    }

    pub fn dimension(&self) -> Option<i32> {
        self.faces.last().map(|f| f.count_ones() as i32 - 1)
    }
}

/// `K^b(I) = { squarefree τ : x^{b - τ} ∈ I }`.
pub fn koszul_subcomplex(gens: &[Monomial], b: &Monomial) -> SimplicialComplex {
    let n = b.nvars();
    assert!(n <= 32, "at most 32 variables");
    let support: Vec<usize> = (0..n).filter(|&i| b.exponents()[i] > 0).collect();
    let mut faces = Vec::new();
    // enumerate subsets of the support
    for sub in 0u32..(1u32 << support.len()) {
        let mut e = b.exponents().to_vec();
        let mut mask = 0u32;
        for (k, &v) in support.iter().enumerate() {
            if sub & (1 << k) != 0 {
                e[v] -= 1;
                mask |= 1 << v;
            }
        }
        let m = Monomial::from_exponents(e);
        if gens.iter().any(|g| g.divides(&m)) {
            faces.push(mask);
        }
    }
    faces.sort_by_key(|&f| (f.count_ones(), f));
    SimplicialComplex {
        vertex_count: n,
        faces,
    }
}

/// `β_{i,j}` keyed by `(i, j)`; zero entries are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(u32, u32), u64>,
}

impl BettiTable {
    pub fn get(&self, i: u32, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `max { j - i : β_{i,j} != 0 }`.
    pub fn regularity(&self) -> Option<i64> {
        self.entries
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .max()
    }

    pub fn projective_dimension(&self) -> Option<u32> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Shifts the table of `I` to that of `S/I` (adds `β_{0,0} = 1`).
    pub fn quotient(&self) -> BettiTable {
        let mut entries: BTreeMap<(u32, u32), u64> =
            self.entries.iter().map(|(&(i, j), &v)| ((i + 1, j), v)).collect();
        entries.insert((0, 0), 1);
        BettiTable { entries }
    }

    /// `Σ_i (-1)^i β_{i,j}` per degree `j`, i.e. the numerator of the
    /// Hilbert series over `(1-s)^n` when this is the table of `S/I`.
    pub fn euler_characteristic(&self) -> BTreeMap<u32, i64> {
        let mut out: BTreeMap<u32, i64> = BTreeMap::new();
        for (&(i, j), &v) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *out.entry(j).or_default() += sign * v as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Rows are `j - i`, columns `i`, as in the usual Betti diagram.
    pub fn render(&self) -> String {
        let Some(pd) = self.projective_dimension() else {
            return "zero\n".into();
        };
        let lo = self.entries.keys().map(|&(i, j)| j as i64 - i as i64).min().unwrap();
        let hi = self.regularity().unwrap();
        let width = self
            .entries
            .values()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(pd.to_string().len());
        let mut out = String::new();
        out.push_str(&format!("{:>4} ", ""));
        for i in 0..=pd {
            out.push_str(&format!(" {:>width$}", i));
        }
        out.push('\n');
        for r in lo..=hi {
            out.push_str(&format!("{:>4}:", r));
            for i in 0..=pd {
                let v = self.get(i, (r + i as i64) as u32);
                let cell = if v == 0 { "-".to_string() } else { v.to_string() };
                out.push_str(&format!(" {:>width$}", cell));
            }
            out.push('\n');
        }
        out
    }
}

/// Every join of a nonempty subset of `gens`, each exactly once.
pub fn lcm_lattice(gens: &[Monomial]) -> Vec<Monomial> {
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for l in &frontier {
            for g in gens {
                let j = l.lcm(g);
                if !seen.contains(&j) {
                    seen.insert(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort();
    out
}

fn checked_monomials(ideal: &IdealGens) -> Result<Vec<Monomial>> {
    let monos = ideal.monomials()?;
    if monos.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    Ok(minimalize_monomials(&ideal.ring, monos))
}

/// Graded Betti numbers `β_{i,j}(I)` of a monomial ideal over the rationals.
pub fn betti_table(ideal: &IdealGens) -> Result<BettiTable> {
    let gens = checked_monomials(ideal)?;
    Ok(betti_of_monomials(&gens))
}

pub fn betti_of_monomials(gens: &[Monomial]) -> BettiTable {
    let lattice = lcm_lattice(gens);
    let parts: Vec<Vec<(u32, u32, u64)>> = lattice
        .par_iter()
        .map(|b| {
            let k = koszul_subcomplex(gens, b);
            let top = k.dimension().unwrap_or(-1);
            (-1..=top)
                .filter_map(|d| {
                    let h = k.reduced_homology(d);
                    (h > 0).then_some(((d + 1) as u32, b.degree(), h as u64))
                })
                .collect()
        })
        .collect();
    let mut table = BettiTable::default();
    for (i, j, v) in parts.into_iter().flatten() {
        *table.entries.entry((i, j)).or_default() += v;
    }
    table
}

/// `reg(I) = max { j - i : β_{i,j}(I) != 0 }`.
pub fn regularity_mon(ideal: &IdealGens) -> Result<i64> {
    betti_table(ideal)?.regularity().ok_or(Error::ZeroIdeal)
}
