//! Dense Gaussian elimination over exact rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// A solution set of a linear system: one particular solution per right-hand
/// side, plus a basis of the nullspace of the coefficient matrix.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub particular: Vec<Vec<BigRational>>,
    pub nullspace: Vec<Vec<BigRational>>,
}

/// Row-reduces `[A | B]` and solves `A x = b` for each column `b` of `rhs`
/// (given as a list of columns). Returns `None` if any system is inconsistent.
///
/// `column_order` permutes the order in which unknowns are tried as pivots;
/// different orders select different particular solutions.
pub fn solve_columns(
    a: &[Vec<BigRational>],
    rhs: &[Vec<BigRational>],
    column_order: Option<&[usize]>,
) -> Option<SolutionSet> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let k = rhs.len();
    let order: Vec<usize> = match column_order {
        Some(o) => o.to_vec(),
        None => (0..cols).collect(),
    };
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = order.iter().map(|&j| a[i][j].clone()).collect();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut m, cols);
    for row in m.iter().skip(pivots.len()) {
        if row[cols..].iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    let mut particular = vec![vec![BigRational::zero(); cols]; k];
    for (r, &pc) in pivots.iter().enumerate() {
        for (t, sol) in particular.iter_mut().enumerate() {
            sol[order[pc]] = m[r][cols + t].clone();
        }
    }
    let mut nullspace = Vec::new();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; cols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigRational::zero(); cols];
        v[order[free]] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[order[pc]] = -m[r][free].clone();
        }
        nullspace.push(v);
    }
    Some(SolutionSet { particular, nullspace })
}

/// Reduced row echelon form on the first `ncols` columns, in place.
/// Returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (d, s) in row.iter_mut().zip(&pivot_row) {
                    if !s.is_zero() {
                        *d = &*d - &f * s;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &[Vec<BigRational>]) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.to_vec();
    rref(&mut m, cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn solves_and_reports_nullspace() {
        // x + y = 2, 2x + 2y = 4
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        let s = solve_columns(&a, &[vec![q(2), q(4)]], None).unwrap();
        assert_eq!(s.nullspace.len(), 1);
        let x = &s.particular[0];
        assert_eq!(&x[0] + &x[1], q(2));
        assert!(solve_columns(&a, &[vec![q(1), q(3)]], None).is_none());
        let s2 = solve_columns(&a, &[vec![q(2), q(4)]], Some(&[1, 0])).unwrap();
        assert_eq!(s2.particular[0], vec![q(0), q(2)]);
    }
}
