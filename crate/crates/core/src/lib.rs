//! Decides whether high powers of an equigenerated ideal have a linear
//! resolution, using the initial ideal of its Rees presentation, and checks
//! the answer against monomial Betti numbers and Hilbert series.

pub mod error;
pub mod groebner;
pub mod poly;

pub use error::{Error, Result};
pub mod parse;
pub mod presets;
pub mod rees;
pub mod transform;
pub mod homology;
pub mod linalg;
pub mod hilbert;
pub mod pipeline;
