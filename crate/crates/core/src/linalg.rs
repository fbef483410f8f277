//! Exact Gaussian elimination over the Gaussian rationals.

use crate::scalar::GaussianRational;

/// Rank of a dense matrix by fraction-free-enough elimination with exact
/// scalar arithmetic. Rows may have any (equal) length.
pub fn rank(mut m: Vec<Vec<GaussianRational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    debug_assert!(m.iter().all(|r| r.len() == cols));
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inv().expect("pivot is nonzero");
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..cols {
                m[r][c] = &m[r][c] - &(&factor * &m[rank][c]);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
