//! Dense exact linear algebra over ℚ.
//!
//! Basis matrices here are block diagonal up to permutation (every family is
//! homogeneous for the letter multidegree in the shuffle case), so elimination
//! only touches the nonzero columns of the pivot row.

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type Matrix = Vec<Vec<Rational>>;

fn eliminate(
    rows: &mut [Vec<Rational>],
    pivot_row: usize,
    col: usize,
    targets: impl Iterator<Item = usize>,
) {
    let support: Vec<usize> = rows[pivot_row]
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, _)| j)
        .collect();
    for r in targets {
        if r == pivot_row || rows[r][col].is_zero() {
            continue;
        }
        let factor = rows[r][col].clone();
        for &j in &support {
            let delta = &factor * &rows[pivot_row][j];
            rows[r][j] -= delta;
        }
    }
}

/// Inverse of a square matrix, `None` if singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut rows: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "square matrix expected");
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        if !inv.is_one() {
            for x in rows[col].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        eliminate(&mut rows, col, col, 0..n);
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of an arbitrary rectangular matrix.
pub fn rank(m: &Matrix) -> usize {
    let mut rows = m.clone();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let len = rows.len();
        eliminate(&mut rows, rank, col, rank + 1..len);
        rank += 1;
    }
    rank
}
