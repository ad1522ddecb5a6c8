use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(data: Vec<Vec<BigInt>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        IntegerMatrix { rows, cols, data }
    }

    /// Like `from_rows` but keeps the column count for empty row lists.
    pub fn from_rows_with_cols(data: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        IntegerMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn data(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.data[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.data[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_rows_with_cols(idx.iter().map(|&i| self.data[i].clone()).collect(), self.cols)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_rows_with_cols(
            self.data
                .iter()
                .map(|r| idx.iter().map(|&j| r[j].clone()).collect())
                .collect(),
            idx.len(),
        )
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Self::from_rows_with_cols(data, self.cols + other.cols)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                m.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &m[n - 1][n - 1]
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.data {
            let s: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", s.join(", "))?;
        }
        Ok(())
    }
}

/// `U * A * V = diag(s_1, ..., s_r, 0, ...)` with `s_i | s_{i+1}`, `s_i > 0`,
/// together with the inverses of the unimodular transforms.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    /// Diagonal entries, `min(rows, cols)` of them; zeros after `rank`.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithDecomposition {
    /// The nonzero invariant factors.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank]
    }
}

struct Snf {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

/// A unimodular 2x2 transform `[[p, q], [r, s]]` and its inverse.
struct Unimod {
    m: [BigInt; 4],
    inv: [BigInt; 4],
}

impl Unimod {
    /// Subtracts `q` times the first line from the second.
    fn subtract(q: BigInt) -> Unimod {
        Unimod {
            m: [BigInt::one(), BigInt::zero(), -&q, BigInt::one()],
            inv: [BigInt::one(), BigInt::zero(), q, BigInt::one()],
        }
    }
}

/// Nearest-integer quotient, so the remainder is at most `|a| / 2`.
fn rounded_quotient(b: &BigInt, a: &BigInt) -> BigInt {
    let (mut q, r) = b.div_mod_floor(a);
    if (&r * 2u32).abs() > a.abs() {
        q += 1;
    }
    q
}

fn combine_rows(m: &mut [Vec<BigInt>], i: usize, j: usize, t: &[BigInt; 4]) {
    let (ri, rj) = (m[i].clone(), m[j].clone());
    for (k, (x, y)) in ri.iter().zip(&rj).enumerate() {
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[i][k] = &t[0] * x + &t[1] * y;
        m[j][k] = &t[2] * x + &t[3] * y;
    }
}

fn combine_cols(m: &mut [Vec<BigInt>], i: usize, j: usize, t: &[BigInt; 4]) {
    // [col_i col_j] <- [col_i col_j] * t
    for row in m.iter_mut() {
        let (x, y) = (row[i].clone(), row[j].clone());
        if x.is_zero() && y.is_zero() {
            continue;
        }
        row[i] = &t[0] * &x + &t[2] * &y;
        row[j] = &t[1] * &x + &t[3] * &y;
    }
}

fn transpose2(t: &[BigInt; 4]) -> [BigInt; 4] {
    [t[0].clone(), t[2].clone(), t[1].clone(), t[3].clone()]
}

impl Snf {
    /// Rows i, j of A and U transform by `t`; U_inv columns by `t^{-1}`.
    fn row_op(&mut self, i: usize, j: usize, t: &Unimod) {
        combine_rows(&mut self.a, i, j, &t.m);
        combine_rows(&mut self.u, i, j, &t.m);
        combine_cols(&mut self.u_inv, i, j, &t.inv);
    }

    /// Columns i, j of A and V transform by `t^T`; V_inv rows by `(t^T)^{-1}`.
    fn col_op(&mut self, i: usize, j: usize, t: &Unimod) {
        let mt = transpose2(&t.m);
        let it = transpose2(&t.inv);
        combine_cols(&mut self.a, i, j, &mt);
        combine_cols(&mut self.v, i, j, &mt);
        combine_rows(&mut self.v_inv, i, j, &it);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
            for row in self.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in self.a.iter_mut().chain(self.v.iter_mut()) {
                row.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    IntegerMatrix::identity(n).data
}

/// Smith normal form with recorded transforms.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut s = Snf {
        a: a.data.clone(),
        u: identity_rows(rows),
        u_inv: identity_rows(rows),
        v: identity_rows(cols),
        v_inv: identity_rows(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &s.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        loop {
            // Euclidean steps on row and column t keep entries below the pivot size.
            let (mut bi, mut bj) = (t, t);
            for i in t + 1..rows {
                if !s.a[i][t].is_zero() && s.a[i][t].abs() < s.a[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t + 1..cols {
                if !s.a[t][j].is_zero() && s.a[t][j].abs() < s.a[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            s.swap_rows(t, bi);
            s.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                if !s.a[i][t].is_zero() {
                    let q = rounded_quotient(&s.a[i][t], &s.a[t][t]);
                    s.row_op(t, i, &Unimod::subtract(q));
                    clean &= s.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !s.a[t][j].is_zero() {
                    let q = rounded_quotient(&s.a[t][j], &s.a[t][t]);
                    s.col_op(t, j, &Unimod::subtract(q));
                    clean &= s.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let p = s.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let add = Unimod {
                        m: [BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::one()],
                        inv: [BigInt::one(), -BigInt::one(), BigInt::zero(), BigInt::one()],
                    };
                    s.row_op(t, i, &add);
                }
                None => break,
            }
        }
        if s.a[t][t].is_negative() {
            s.negate_row(t);
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..rows.min(cols)).map(|i| s.a[i][i].clone()).collect();
    let rank = diagonal.iter().take_while(|d| !d.is_zero()).count();
    SmithDecomposition {
        diagonal,
        rank,
        u: IntegerMatrix::from_rows_with_cols(s.u, rows),
        u_inv: IntegerMatrix::from_rows_with_cols(s.u_inv, rows),
        v: IntegerMatrix::from_rows_with_cols(s.v, cols),
        v_inv: IntegerMatrix::from_rows_with_cols(s.v_inv, cols),
    }
}
