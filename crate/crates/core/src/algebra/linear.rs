//! Deterministic exact elimination.

use num_traits::{One, Zero};

use super::rational::Rational;
use super::AlgebraError;

/// Dense row-major matrix of rationals.
pub type Matrix = Vec<Vec<Rational>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Consistent {
        particular: Vec<Rational>,
        /// Basis of the kernel, one vector per free column in increasing
        /// column order.
        nullspace: Vec<Vec<Rational>>,
    },
    /// `certificate` is a row vector `c` with `c A = 0` and `c b != 0`.
    Inconsistent { certificate: Vec<Rational> },
}

fn check_rect(matrix: &[Vec<Rational>], cols: usize) -> Result<(), AlgebraError> {
    match matrix.iter().find(|row| row.len() != cols) {
        Some(row) => Err(AlgebraError::DimensionMismatch { expected: cols, found: row.len() }),
        None => Ok(()),
    }
}

/// Reduces `rows` in place to reduced row echelon form over the first `cols`
/// columns (any further columns ride along). Pivots are chosen in the
/// leftmost column with a nonzero entry, using the smallest such row index.
/// Returns the pivot columns.
pub fn rref_in_place(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for v in rows[r].iter_mut() {
                *v *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut rows = matrix.to_vec();
    rref_in_place(&mut rows, cols).len()
}

/// Kernel basis of a matrix with `cols` columns.
pub fn nullspace(matrix: &[Vec<Rational>], cols: usize) -> Result<Vec<Vec<Rational>>, AlgebraError> {
    let rhs = vec![Rational::zero(); matrix.len()];
    match solve_linear(matrix, cols, &rhs)? {
        LinearSolution::Consistent { nullspace, .. } => Ok(nullspace),
        LinearSolution::Inconsistent { .. } => unreachable!("homogeneous systems are consistent"),
    }
}

/// Solves `A v = b` exactly. `cols` is passed explicitly so that matrices with
/// no rows still have a well defined unknown count.
pub fn solve_linear(
    matrix: &[Vec<Rational>],
    cols: usize,
    rhs: &[Rational],
) -> Result<LinearSolution, AlgebraError> {
    check_rect(matrix, cols)?;
    if rhs.len() != matrix.len() {
        return Err(AlgebraError::DimensionMismatch { expected: matrix.len(), found: rhs.len() });
    }
    let n = matrix.len();
    // [A | b | I]: the identity block records the row operations so that a
    // contradictory row doubles as its own certificate.
    let mut rows: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .enumerate()
        .map(|(i, (row, b))| {
            let mut out = row.clone();
            out.push(b.clone());
            out.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            out
        })
        .collect();
    let pivots = rref_in_place(&mut rows, cols);

    for row in &rows[pivots.len()..] {
        if !row[cols].is_zero() {
            return Ok(LinearSolution::Inconsistent { certificate: row[cols + 1..].to_vec() });
        }
    }

    let mut particular = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][cols].clone();
    }
    let mut nullspace = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    for free in 0..cols {
        if pivot_iter.peek() == Some(&&free) {
            pivot_iter.next();
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &c) in pivots.iter().enumerate() {
            if c < free {
                v[c] = -rows[r][free].clone();
            }
        }
        nullspace.push(v);
    }
    Ok(LinearSolution::Consistent { particular, nullspace })
}

pub fn mat_vec(matrix: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    matrix
        .iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn identity_system() {
        let sol = solve_linear(&m(&[&[1, 0], &[0, 1]]), 2, &[rat(1), rat(2)]).unwrap();
        assert_eq!(
            sol,
            LinearSolution::Consistent { particular: vec![rat(1), rat(2)], nullspace: vec![] }
        );
    }

    #[test]
    fn zero_row_has_full_nullspace() {
        match solve_linear(&m(&[&[0, 0]]), 2, &[rat(0)]).unwrap() {
            LinearSolution::Consistent { nullspace, .. } => assert_eq!(nullspace.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rank_deficient_contradiction() {
        let a = m(&[&[1, 1], &[2, 2]]);
        let b = [rat(1), rat(3)];
        match solve_linear(&a, 2, &b).unwrap() {
            LinearSolution::Inconsistent { certificate } => {
                // c A = 0, c b != 0
                for col in 0..2 {
                    let s = certificate.iter().zip(&a).fold(rat(0), |acc, (c, row)| acc + c * &row[col]);
                    assert!(s.is_zero());
                }
                let cb = certificate.iter().zip(&b).fold(rat(0), |acc, (c, v)| acc + c * v);
                assert!(!cb.is_zero());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch() {
        let ragged = vec![vec![rat(1), rat(2)], vec![rat(1)]];
        assert!(solve_linear(&ragged, 2, &[rat(0), rat(0)]).is_err());
        assert!(solve_linear(&m(&[&[1, 2]]), 2, &[rat(0), rat(0)]).is_err());
    }

    #[test]
    fn nullspace_vectors_are_in_kernel() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = nullspace(&a, 4).unwrap();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(mat_vec(&a, &v).iter().all(Zero::is_zero));
        }
        assert_eq!(rank(&a), 2);
    }
}
