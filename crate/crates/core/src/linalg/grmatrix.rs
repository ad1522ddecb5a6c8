use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use super::intmat::IntegerMatrix;
use super::rational::solve_columns;
use crate::error::{Error, Result};
use crate::grouprings::{
    FiniteAbelianGroup, GroupRingElement, IntElement, Integers, RatElement, Rationals, ScalarRing,
};

/// A matrix with entries in a group ring `S[G]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingMatrix<R: ScalarRing> {
    group: FiniteAbelianGroup,
    ring: R,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<GroupRingElement<R>>>,
}

pub type IntGrMatrix = GroupRingMatrix<Integers>;
pub type RatGrMatrix = GroupRingMatrix<Rationals>;

impl<R: ScalarRing> GroupRingMatrix<R> {
    pub fn new(
        group: &FiniteAbelianGroup,
        ring: &R,
        rows: usize,
        cols: usize,
        entries: Vec<Vec<GroupRingElement<R>>>,
    ) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::BadSize(format!("expected a {rows}x{cols} matrix")));
        }
        if entries.iter().flatten().any(|e| e.group() != group || e.ring() != ring) {
            return Err(Error::Mismatch("matrix entries over different group rings".into()));
        }
        Ok(GroupRingMatrix {
            group: group.clone(),
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(group: &FiniteAbelianGroup, ring: &R, rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            group: group.clone(),
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![vec![GroupRingElement::zero(group, ring); cols]; rows],
        }
    }

    pub fn identity(group: &FiniteAbelianGroup, ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(group, ring, n, n);
        for i in 0..n {
            m.entries[i][i] = GroupRingElement::one(group, ring);
        }
        m
    }

    pub fn diagonal(group: &FiniteAbelianGroup, ring: &R, d: Vec<GroupRingElement<R>>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(group, ring, n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.entries[i][i] = x;
        }
        m
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement<R> {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GroupRingElement<R>) {
        assert!(x.group() == &self.group && x.ring() == &self.ring);
        self.entries[i][j] = x;
    }

    pub fn entries(&self) -> &[Vec<GroupRingElement<R>>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(&self.group, &self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] = out.entries[i][j].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        self.zip_map(other, |a, b| a.add_ref(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        self.zip_map(other, |a, b| a.sub_ref(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.neg_ref())
    }

    pub fn scale(&self, x: &GroupRingElement<R>) -> Self {
        self.map(|a| a.mul_ref(x))
    }

    pub fn map(&self, f: impl Fn(&GroupRingElement<R>) -> GroupRingElement<R>) -> Self {
        GroupRingMatrix {
            group: self.group.clone(),
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    fn zip_map(
        &self,
        other: &Self,
        f: impl Fn(&GroupRingElement<R>, &GroupRingElement<R>) -> GroupRingElement<R>,
    ) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[i][j] = f(&self.entries[i][j], &other.entries[i][j]);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.group, &self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j][i] = self.entries[i][j].clone();
            }
        }
        out
    }

    /// Transpose with `tau` applied to every entry.
    pub fn tau_transpose(&self) -> Self {
        self.transpose().map(|x| x.tau())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        GroupRingMatrix {
            group: self.group.clone(),
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        out.entries.extend(other.entries.iter().cloned());
        out.rows += other.rows;
        out
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = self.clone();
        for (r, o) in out.entries.iter_mut().zip(&other.entries) {
            r.extend(o.iter().cloned());
        }
        out.cols += other.cols;
        out
    }

    /// Block matrix over the scalars: block `(p, q)` is the regular matrix of
    /// entry `(p, q)`, so coordinate `q|G| + h` is the coefficient of `h` in
    /// the q-th component.
    pub fn expand(&self) -> Vec<Vec<R::Elem>> {
        let n = self.group.order();
        let mut out = vec![vec![self.ring.zero(); self.cols * n]; self.rows * n];
        for (p, row) in self.entries.iter().enumerate() {
            for (q, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let reg = x.regular_matrix();
                for (a, rrow) in reg.into_iter().enumerate() {
                    for (b, v) in rrow.into_iter().enumerate() {
                        out[p * n + a][q * n + b] = v;
                    }
                }
            }
        }
        out
    }

    /// Determinant by the division-free Berkowitz recursion.
    pub fn det(&self) -> GroupRingElement<R> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let zero = GroupRingElement::zero(&self.group, &self.ring);
        let one = GroupRingElement::one(&self.group, &self.ring);
        if n == 0 {
            return one;
        }
        let a = &self.entries;
        // p holds det(x I - A_k) for the leading k x k block, highest degree first.
        let mut p = vec![one.clone(), a[0][0].neg_ref()];
        for k in 1..n {
            // A_{k+1} = [[A_k, c], [r, a_kk]]
            let c: Vec<_> = (0..k).map(|i| a[i][k].clone()).collect();
            let r: Vec<_> = (0..k).map(|j| a[k][j].clone()).collect();
            let mut col = vec![one.clone(), a[k][k].neg_ref()];
            let mut v = c;
            for _ in 0..k {
                let rv = r
                    .iter()
                    .zip(&v)
                    .fold(zero.clone(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)));
                col.push(rv.neg_ref());
                v = (0..k)
                    .map(|i| (0..k).fold(zero.clone(), |acc, j| acc.add_ref(&a[i][j].mul_ref(&v[j]))))
                    .collect();
            }
            // Toeplitz product: new_p[i] = sum_j col[i - j] * p[j]
            let mut np = vec![zero.clone(); k + 2];
            for (i, out) in np.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate() {
                    if i >= j && i - j < col.len() {
                        *out = out.add_ref(&col[i - j].mul_ref(pj));
                    }
                }
            }
            p = np;
        }
        let constant = p[n].clone();
        if n.is_multiple_of(2) {
            constant
        } else {
            constant.neg_ref()
        }
    }

    /// Determinant by Laplace expansion along the first row; for testing.
    pub fn det_cofactor(&self) -> GroupRingElement<R> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return GroupRingElement::one(&self.group, &self.ring);
        }
        let mut acc = GroupRingElement::zero(&self.group, &self.ring);
        let rest: Vec<usize> = (1..n).collect();
        for j in 0..n {
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = self.entries[0][j].mul_ref(&self.submatrix(&rest, &cols).det_cofactor());
            acc = if j % 2 == 0 {
                acc.add_ref(&term)
            } else {
                acc.sub_ref(&term)
            };
        }
        acc
    }

    /// Determinants of all `k x k` submatrices, row subsets outermost, each
    /// in lexicographic order.
    pub fn all_minors(&self, k: usize) -> Result<Vec<GroupRingElement<R>>> {
        if k > self.rows || k > self.cols {
            return Err(Error::BadSize(format!(
                "minor size {k} exceeds the {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let rs = subsets(self.rows, k);
        let cs = subsets(self.cols, k);
        let mut out = Vec::with_capacity(rs.len() * cs.len());
        for r in &rs {
            for c in &cs {
                out.push(self.submatrix(r, c).det());
            }
        }
        Ok(out)
    }
}

/// All k-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl IntGrMatrix {
    pub fn from_int_rows(group: &FiniteAbelianGroup, rows: Vec<Vec<IntElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::new(group, &Integers, r, c, rows)
    }

    pub fn expand_integer(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows_with_cols(self.expand(), self.cols * self.group.order())
    }

    pub fn to_rational(&self) -> RatGrMatrix {
        GroupRingMatrix {
            group: self.group.clone(),
            ring: Rationals,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x.to_rational()).collect())
                .collect(),
        }
    }
}

/// How `equivariant_solve` picks among solutions.
pub enum SolveChoice<'a> {
    /// Pivot on unknowns in natural order, free unknowns zero.
    Canonical,
    /// Random pivot order and a random nullspace component.
    Randomized(&'a mut dyn rand::RngCore),
}

/// Solves `A X = B` over `Q[G]` through the expanded rational system.
/// Returns `None` when no solution exists.
pub fn equivariant_solve(a: &RatGrMatrix, b: &RatGrMatrix, choice: SolveChoice<'_>) -> Option<RatGrMatrix> {
    assert_eq!(a.rows, b.rows, "row count mismatch");
    assert_eq!(a.group, b.group, "group mismatch");
    let g = &a.group;
    let n = g.order();
    let ea = a.expand();
    let eb = b.expand();
    let unknowns = a.cols * n;
    // Column h of the expanded B is the coefficient vector of B_j * h; only
    // the identity column (h = 0) of each block is a right-hand side.
    let rhs: Vec<Vec<BigRational>> = (0..b.cols)
        .map(|j| eb.iter().map(|row| row[j * n + g.identity()].clone()).collect())
        .collect();
    let (sol, rng) = match choice {
        SolveChoice::Canonical => (solve_columns(&ea, &rhs, None)?, None),
        SolveChoice::Randomized(rng) => {
            let mut order: Vec<usize> = (0..unknowns).collect();
            order.shuffle(rng);
            (solve_columns(&ea, &rhs, Some(&order))?, Some(rng))
        }
    };
    let mut columns = sol.particular;
    if let Some(rng) = rng {
        for col in columns.iter_mut() {
            for v in &sol.nullspace {
                let c = BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3)));
                for (x, y) in col.iter_mut().zip(v) {
                    *x += &c * y;
                }
            }
        }
    }
    let mut x = RatGrMatrix::zeros(g, &Rationals, a.cols, b.cols);
    for (j, col) in columns.into_iter().enumerate() {
        for q in 0..a.cols {
            let coeffs = col[q * n..(q + 1) * n].to_vec();
            x.entries[q][j] = RatElement::from_parts(g.clone(), Rationals, coeffs);
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n)
    }

    fn im(g: &FiniteAbelianGroup, rows: &[Vec<Vec<i64>>]) -> IntGrMatrix {
        IntGrMatrix::from_int_rows(
            g,
            rows.iter()
                .map(|r| r.iter().map(|x| IntElement::from_ints(g, x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_examples() {
        let g = c(2);
        assert_eq!(
            IntGrMatrix::identity(&g, &Integers, 3).det(),
            IntElement::one(&g, &Integers)
        );
        let a = im(&g, &[vec![vec![2, 5]]]);
        assert_eq!(a.det(), IntElement::from_ints(&g, &[2, 5]));
        let d = im(&g, &[vec![vec![1, 1], vec![0, 0]], vec![vec![0, 0], vec![1, -1]]]);
        assert!(d.det().is_zero());
    }

    #[test]
    fn berkowitz_matches_cofactor() {
        let g = c(3);
        let a = im(
            &g,
            &[
                vec![vec![1, 2, 0], vec![0, 1, 1], vec![3, 0, 0]],
                vec![vec![-1, 0, 2], vec![2, 2, 0], vec![0, 0, 1]],
                vec![vec![0, 1, 0], vec![1, 0, -1], vec![4, 1, 1]],
            ],
        );
        assert_eq!(a.det(), a.det_cofactor());
    }

    #[test]
    fn minors_example() {
        let t = FiniteAbelianGroup::trivial();
        let a = im(
            &t,
            &[vec![vec![2], vec![0]], vec![vec![0], vec![3]], vec![vec![1], vec![1]]],
        );
        let m: Vec<BigInt> = a.all_minors(2).unwrap().iter().map(|x| x.coeff(0).clone()).collect();
        assert_eq!(m, vec![BigInt::from(6), BigInt::from(2), BigInt::from(-3)]);
        assert!(a.all_minors(3).is_err());
    }

    #[test]
    fn solve_examples() {
        let g = c(2);
        let a = im(&g, &[vec![vec![3, 1]]]).to_rational();
        let b = RatGrMatrix::identity(&g, &Rationals, 1);
        let x = equivariant_solve(&a, &b, SolveChoice::Canonical).unwrap();
        assert_eq!(x.get(0, 0), &RatElement::from_ratios(&g, &[(3, 8), (-1, 8)]));
        let zd = im(&g, &[vec![vec![1, 1]]]).to_rational();
        assert!(equivariant_solve(&zd, &b, SolveChoice::Canonical).is_none());
    }
}
