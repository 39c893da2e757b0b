//! Exact polynomial arithmetic over the rationals in `K[x, t]`, with an
//! optional auxiliary block used for elimination.

mod monomial;
mod order;
mod polynomial;
mod ring;

pub use monomial::{Bidegree, Monomial, MonomialDisplay};
pub use order::{AuxPosition, MonomialOrder, OrderKind, OrderedRing, Precedence};
pub(crate) use polynomial::require_monomial;
pub use polynomial::{PolyDisplay, Polynomial, Term};
pub use ring::{Block, Rational, RingSpec, Var};

use num_bigint::BigInt;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
