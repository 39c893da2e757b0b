//! Built-in example ideals.

use crate::error::{Error, Result};
use crate::parse::{parse_problem, ProblemFile};

/// Terai's ideal: the Stanley–Reisner ideal of the six-vertex triangulation
/// of the real projective plane.
pub const TERAI_J: &str = "\
ring x1..x6;
ideal J = x1*x2*x3, x1*x2*x4, x1*x3*x5, x1*x4*x6, x1*x5*x6, x2*x3*x6,
          x2*x4*x5, x2*x5*x6, x3*x4*x5, x3*x4*x6;
";

/// Conca's ideal: 3-minors of a generic symmetric 4x4 matrix with zero
/// diagonal.
///
/// The generators are listed in the order that fixes the `t_j` indexing
/// used by [`CONCA_J1_TRANSFORM`]; [`CONCA_J1_PRINTED`] has the same
/// polynomials in their customary listing order.
pub const CONCA_J1: &str = "\
ring x1..x6;
ideal J1 = 2*x1*x2*x4, 2*x2*x3*x6,
           x1*x3*x4 + x1*x2*x5 - x1^2*x6,
           -x3*x4^2 + x2*x4*x5 + x1*x4*x6,
           x3*x4*x6 + x2*x5*x6 - x1*x6^2,
           -x2*x3*x4 + x2^2*x5 - x1*x2*x6,
           -x3^2*x4 + x2*x3*x5 + x1*x3*x6,
           -x3*x4*x5 + x2*x5^2 - x1*x5*x6,
           2*x1*x3*x5, 2*x4*x5*x6;
";

/// Position in [`CONCA_J1_PRINTED`] of the `j`-th generator of [`CONCA_J1`].
pub const CONCA_J1_FROM_PRINTED: [usize; 10] = [0, 2, 4, 8, 5, 6, 7, 9, 1, 3];

pub const CONCA_J1_PRINTED: &str = "\
ring x1..x6;
ideal J1 = 2*x1*x2*x4, 2*x1*x3*x5, 2*x2*x3*x6, 2*x4*x5*x6,
           x1*x3*x4 + x1*x2*x5 - x1^2*x6,
           x3*x4*x6 + x2*x5*x6 - x1*x6^2,
           -x2*x3*x4 + x2^2*x5 - x1*x2*x6,
           -x3^2*x4 + x2*x3*x5 + x1*x3*x6,
           -x3*x4^2 + x2*x4*x5 + x1*x4*x6,
           -x3*x4*x5 + x2*x5^2 - x1*x5*x6;
";

/// Transform that makes the criterion pass for `terai-J` (DegRevLex, t>x).
pub const TERAI_J_TRANSFORM: &str = "x4 -> x1 + x4\nx6 -> x3 + x6\n";

/// Transform that makes the criterion pass for `conca-J1` (DegRevLex, t>x).
pub const CONCA_J1_TRANSFORM: &str = "x4 -> x2 + x4\nx6 -> x1 + x6\nt8 -> t7 + t8\n";

pub const PRESET_NAMES: [&str; 3] = ["terai-J", "conca-J1", "conca-J1-printed"];

pub fn preset_text(name: &str) -> Result<&'static str> {
    match name {
        "terai-J" => Ok(TERAI_J),
        "conca-J1" => Ok(CONCA_J1),
        "conca-J1-printed" => Ok(CONCA_J1_PRINTED),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

pub fn preset(name: &str) -> Result<ProblemFile> {
    parse_problem(preset_text(name)?)
}
