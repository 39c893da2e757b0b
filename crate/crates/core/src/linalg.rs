//! Exact ranks over the rationals.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::Rational;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_integer(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest.iter_mut() {
            let f = row[col].clone();
            for c in col..ncols {
                let v = &pivot[col] * &row[c] - &f * &pivot[c];
                // exact by Sylvester's identity
                row[c] = v / &prev;
            }
        }
        prev = top[rank][col].clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of a small-entry matrix; entries are expected in `{-1, 0, 1}` but any
/// `i64` works.
pub fn rank_small(rows: &[Vec<i64>]) -> usize {
    rank_integer(
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    )
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank_rational(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        let pivot: Vec<Rational> = rows[rank].iter().map(|v| v * &inv).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in col..ncols {
                if !pivot[c].is_zero() {
                    row[c] -= &f * &pivot[c];
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
