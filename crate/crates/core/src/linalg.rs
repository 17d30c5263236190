//! Exact linear algebra over ℚ.

use num_traits::{One, Zero};

use crate::cyclonum::BigRat;

/// Reduced row echelon form of an augmented system `[A | b]`.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Nonzero rows; the last entry of each is the right-hand side.
    pub rows: Vec<Vec<BigRat>>,
    /// Pivot column of each row, ascending.
    pub pivots: Vec<usize>,
    /// False when some row reads `0 = c` with `c ≠ 0`.
    pub consistent: bool,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-reduces `rows`, each of length `vars + 1`, pivoting on the first nonzero entry.
pub fn echelon(mut rows: Vec<Vec<BigRat>>, vars: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..vars {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = BigRat::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let consistent = rows[r..].iter().all(|row| row[vars].is_zero());
    rows.truncate(r);
    Echelon {
        rows,
        pivots,
        consistent,
    }
}

/// Rank of a matrix with `cols` columns.
pub fn rank(rows: &[Vec<BigRat>], cols: usize) -> usize {
    let aug: Vec<Vec<BigRat>> = rows
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.push(BigRat::zero());
            v
        })
        .collect();
    if aug.is_empty() {
        return 0;
    }
    echelon(aug, cols).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRat {
        BigRat::from_integer(n.into())
    }

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1
        let e = echelon(vec![vec![q(1), q(1), q(3)], vec![q(1), q(-1), q(1)]], 2);
        assert!(e.consistent);
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(e.rows[0][2], q(2));
        assert_eq!(e.rows[1][2], q(1));
    }

    #[test]
    fn detects_inconsistency_and_rank() {
        let e = echelon(vec![vec![q(1), q(2), q(1)], vec![q(2), q(4), q(3)]], 2);
        assert!(!e.consistent);
        assert_eq!(e.rank(), 1);
        assert_eq!(rank(&[vec![q(1), q(2)], vec![q(2), q(4)]], 2), 1);
    }
}
