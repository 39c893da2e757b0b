use std::fmt;

use serde::{Deserialize, Serialize};

use super::ring::RingSpec;
use crate::error::{Error, Result};

/// Dense exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

/// `(t-degree, x-degree)`, i.e. `deg t_j = (1,0)` and `deg x_i = (0,1)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct Bidegree {
    pub tdeg: u32,
    pub xdeg: u32,
}

impl Bidegree {
    pub fn new(tdeg: u32, xdeg: u32) -> Self {
        Bidegree { tdeg, xdeg }
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.tdeg + rhs.tdeg, self.xdeg + rhs.xdeg)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tdeg, self.xdeg)
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, pos: usize) -> Self {
        let mut e = vec![0; nvars];
        e[pos] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn check_ring(&self, ring: &RingSpec) -> Result<()> {
        if self.0.len() == ring.nvars() {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                expected: ring.nvars(),
                found: self.0.len(),
            })
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn bidegree(&self, ring: &RingSpec) -> Result<Bidegree> {
        self.check_ring(ring)?;
        if ring.aux_range().any(|i| self.0[i] != 0) {
            return Err(Error::AuxInBidegree);
        }
        Ok(Bidegree {
            tdeg: self.0[ring.t_range()].iter().sum(),
            xdeg: self.0[ring.x_range()].iter().sum(),
        })
    }

    pub fn xdeg(&self, ring: &RingSpec) -> u32 {
        self.0[ring.x_range()].iter().sum()
    }

    pub fn tdeg(&self, ring: &RingSpec) -> u32 {
        self.0[ring.t_range()].iter().sum()
    }

    /// Re-embeds into a ring with a different aux block; extra aux exponents are dropped.
    pub fn resize(&self, nvars: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(nvars, 0);
        Monomial(e)
    }

    pub fn display<'a>(&'a self, ring: &'a RingSpec) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, ring }
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    ring: &'a RingSpec,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        // t-block first, matching how bidegrees are written (t-degree, x-degree)
        let order = self
            .ring
            .t_range()
            .chain(self.ring.x_range())
            .chain(self.ring.aux_range());
        let mut first = true;
        for pos in order {
            let e = self.mono.0[pos];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.ring.var_name(pos))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
