use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact coefficients. Always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Variable blocks of `K[x_1..x_r, t_1..t_m, y..]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    X,
    T,
    Aux,
}

/// A variable identified by its block and its 0-based index inside the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub block: Block,
    pub index: usize,
}

impl Var {
    pub fn x(index: usize) -> Self {
        Var { block: Block::X, index }
    }

    pub fn t(index: usize) -> Self {
        Var { block: Block::T, index }
    }

    pub fn aux(index: usize) -> Self {
        Var { block: Block::Aux, index }
    }
}

/// Shape of the two-block ring plus internal elimination variables.
///
/// Exponent vectors are laid out as `[x_1..x_r, t_1..t_m, aux..]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub x_count: usize,
    pub t_count: usize,
    pub aux_count: usize,
}

impl RingSpec {
    pub fn new(x_count: usize, t_count: usize) -> Self {
        RingSpec {
            x_count,
            t_count,
            aux_count: 0,
        }
    }

    pub fn with_aux(self, aux_count: usize) -> Self {
        RingSpec { aux_count, ..self }
    }

    pub fn nvars(&self) -> usize {
        self.x_count + self.t_count + self.aux_count
    }

    pub fn x_range(&self) -> std::ops::Range<usize> {
        0..self.x_count
    }

    pub fn t_range(&self) -> std::ops::Range<usize> {
        self.x_count..self.x_count + self.t_count
    }

    pub fn aux_range(&self) -> std::ops::Range<usize> {
        self.x_count + self.t_count..self.nvars()
    }

    /// Position of `var` in the dense exponent vector.
    pub fn position(&self, var: Var) -> Result<usize> {
        let (base, len) = match var.block {
            Block::X => (0, self.x_count),
            Block::T => (self.x_count, self.t_count),
            Block::Aux => (self.x_count + self.t_count, self.aux_count),
        };
        if var.index < len {
            Ok(base + var.index)
        } else {
            Err(Error::Invalid(format!(
                "variable {} is not in the ring",
                VarName(var, self.aux_count)
            )))
        }
    }

    pub fn var_at(&self, pos: usize) -> Var {
        if pos < self.x_count {
            Var::x(pos)
        } else if pos < self.x_count + self.t_count {
            Var::t(pos - self.x_count)
        } else {
            Var::aux(pos - self.x_count - self.t_count)
        }
    }

    pub fn var_name(&self, pos: usize) -> String {
        VarName(self.var_at(pos), self.aux_count).to_string()
    }

    /// Looks up a variable by its printed name (`x3`, `t10`, `y`).
    pub fn parse_var(&self, name: &str) -> Option<usize> {
        let (block, rest) = match name.as_bytes().first()? {
            b'x' => (Block::X, &name[1..]),
            b't' => (Block::T, &name[1..]),
            b'y' => (Block::Aux, &name[1..]),
            _ => return None,
        };
        let index = if block == Block::Aux && rest.is_empty() && self.aux_count == 1 {
            0
        } else {
            let one_based: usize = rest.parse().ok()?;
            one_based.checked_sub(1)?
        };
        self.position(Var { block, index }).ok()
    }

    /// The same ring with the auxiliary block dropped.
    pub fn without_aux(&self) -> RingSpec {
        RingSpec {
            aux_count: 0,
            ..*self
        }
    }
}

struct VarName(Var, usize);

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Var { block, index } = self.0;
        match block {
            Block::X => write!(f, "x{}", index + 1),
            Block::T => write!(f, "t{}", index + 1),
            Block::Aux if self.1 == 1 => write!(f, "y"),
            Block::Aux => write!(f, "y{}", index + 1),
        }
    }
}
