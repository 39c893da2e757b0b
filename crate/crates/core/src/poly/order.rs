use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::ring::RingSpec;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// Which block comes first in the variable sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Precedence {
    XBeforeT,
    TBeforeX,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum AuxPosition {
    /// Aux variables (if any) sit at the end of the variable sequence.
    #[default]
    None,
    /// Aux block compared lexicographically before everything else.
    AuxFirst,
}

/// A term order on the two-block ring.
///
/// DegRevLex is a single order on the whole variable sequence
/// (`x1..xr, t1..tm` or `t1..tm, x1..xr`), not a product order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Precedence,
    pub aux: AuxPosition,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: Precedence) -> Self {
        MonomialOrder {
            kind,
            precedence,
            aux: AuxPosition::None,
        }
    }

    pub fn lex() -> Self {
        Self::new(OrderKind::Lex, Precedence::XBeforeT)
    }

    pub fn degrevlex() -> Self {
        Self::new(OrderKind::DegRevLex, Precedence::XBeforeT)
    }

    /// The internal elimination order: aux block lex first, this order on the rest.
    pub fn eliminating(self) -> Self {
        MonomialOrder {
            aux: AuxPosition::AuxFirst,
            ..self
        }
    }

    pub fn without_elimination(self) -> Self {
        MonomialOrder {
            aux: AuxPosition::None,
            ..self
        }
    }

    pub fn short_name(&self) -> String {
        let kind = match self.kind {
            OrderKind::Lex => "lex",
            OrderKind::DegRevLex => "degrevlex",
        };
        let prec = match self.precedence {
            Precedence::XBeforeT => "xt",
            Precedence::TBeforeX => "tx",
        };
        format!("{kind} {prec}")
    }

    /// Variable positions in decreasing precedence, and the length of the
    /// lexicographic elimination prefix.
    pub fn sequence(&self, ring: &RingSpec) -> (Vec<usize>, usize) {
        let mut seq = Vec::with_capacity(ring.nvars());
        if self.aux == AuxPosition::AuxFirst {
            seq.extend(ring.aux_range());
        }
        match self.precedence {
            Precedence::XBeforeT => {
                seq.extend(ring.x_range());
                seq.extend(ring.t_range());
            }
            Precedence::TBeforeX => {
                seq.extend(ring.t_range());
                seq.extend(ring.x_range());
            }
        }
        let prefix = if self.aux == AuxPosition::AuxFirst {
            ring.aux_count
        } else {
            seq.extend(ring.aux_range());
            0
        };
        (seq, prefix)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            OrderKind::Lex => "Lex",
            OrderKind::DegRevLex => "DegRevLex",
        };
        let prec = match self.precedence {
            Precedence::XBeforeT => "x>t",
            Precedence::TBeforeX => "t>x",
        };
        write!(f, "{kind} ({prec})")
    }
}

/// A ring together with a fixed term order; the comparison context for polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedRing {
    pub spec: RingSpec,
    pub order: MonomialOrder,
    seq: Vec<usize>,
    prefix: usize,
}

impl OrderedRing {
    pub fn new(spec: RingSpec, order: MonomialOrder) -> Self {
        let (seq, prefix) = order.sequence(&spec);
        OrderedRing {
            spec,
            order,
            seq,
            prefix,
        }
    }

    pub fn nvars(&self) -> usize {
        self.spec.nvars()
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        OrderedRing::new(self.spec, order)
    }

    /// Checked comparison; rejects monomials from a different ring.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        a.check_ring(&self.spec)?;
        b.check_ring(&self.spec)?;
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison used on hot paths.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        for &p in &self.seq[..self.prefix] {
            match ea[p].cmp(&eb[p]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        let rest = &self.seq[self.prefix..];
        match self.order.kind {
            OrderKind::Lex => {
                for &p in rest {
                    match ea[p].cmp(&eb[p]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                let da: u32 = rest.iter().map(|&p| ea[p]).sum();
                let db: u32 = rest.iter().map(|&p| eb[p]).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &p in rest.iter().rev() {
                    match ea[p].cmp(&eb[p]) {
                        Ordering::Equal => {}
                        // smaller exponent in the last differing variable wins
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}
