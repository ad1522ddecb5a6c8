//! Howell normal form for row spans over `Z/l^N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{big_inv_mod, big_pow, valuation_int};

/// Canonical basis of a row span in `(Z/l^N)^n`.
///
/// Rows are in echelon order; each pivot is `l^s`, entries above a pivot
/// are reduced modulo it, and every span element whose first `c` entries
/// vanish is a combination of the rows with pivot column `>= c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HowellBasis {
    l: u64,
    precision: u32,
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
    /// `(column, valuation)` of each row's pivot.
    pivots: Vec<(usize, u32)>,
}

impl HowellBasis {
    pub fn prime(&self) -> u64 {
        self.l
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> BigInt {
        big_pow(self.l, self.precision)
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `log_l` of the number of elements in the span.
    pub fn log_size(&self) -> u64 {
        self.pivots.iter().map(|&(_, s)| u64::from(self.precision - s)).sum()
    }

    /// True iff `v` lies in the span.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length");
        let m = self.modulus();
        let mut w: Vec<BigInt> = v.iter().map(|x| x.mod_floor(&m)).collect();
        let mut next = 0;
        for (row, &(c, s)) in self.rows.iter().zip(&self.pivots) {
            if w[next..c].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let p = big_pow(self.l, s);
            if !w[c].is_multiple_of(&p) {
                return false;
            }
            let q = &w[c] / &p;
            if !q.is_zero() {
                for (x, r) in w.iter_mut().zip(row).skip(c) {
                    *x = (&*x - &q * r).mod_floor(&m);
                }
            }
            next = c + 1;
        }
        w[next..].iter().all(|x| x.is_zero())
    }

    /// Basis of the span of `self` together with `extra`.
    pub fn extend(&self, extra: &[Vec<BigInt>]) -> HowellBasis {
        let mut all = self.rows.clone();
        all.extend(extra.iter().cloned());
        howell_form(&all, self.ncols, self.l, self.precision)
    }

    /// A basis of the Z-lattice in `Z^n` formed by all integer vectors whose
    /// reduction lies in the span: the rows together with `l^N e_c` for
    /// every column without a pivot. The result is triangular.
    pub fn lattice_basis(&self) -> Vec<Vec<BigInt>> {
        let m = self.modulus();
        let mut out = Vec::new();
        let mut k = 0;
        for c in 0..self.ncols {
            if k < self.pivots.len() && self.pivots[k].0 == c {
                out.push(self.rows[k].clone());
                k += 1;
            } else {
                let mut e = vec![BigInt::zero(); self.ncols];
                e[c] = m.clone();
                out.push(e);
            }
        }
        out
    }
}

/// Howell form of the row span of `rows` (each of length `ncols`) over
/// `Z/l^n`.
pub fn howell_form(rows: &[Vec<BigInt>], ncols: usize, l: u64, n: u32) -> HowellBasis {
    let m = big_pow(l, n);
    let lb = BigInt::from(l);
    let mut work: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length");
            r.iter().map(|x| x.mod_floor(&m)).collect::<Vec<_>>()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let mut best: Option<(usize, u32)> = None;
        for (i, r) in work.iter().enumerate() {
            if let Some(v) = valuation_int(&r[c], l) {
                let v = v as u32;
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
        }
        let Some((pi, s)) = best else { continue };
        let mut prow = work.swap_remove(pi);
        // Normalize the pivot to l^s.
        let ps = big_pow(l, s);
        let unit = &prow[c] / &ps;
        let inv = big_inv_mod(&unit, &m).expect("unit part is invertible");
        for x in prow.iter_mut().skip(c) {
            *x = (&*x * &inv).mod_floor(&m);
        }
        for r in work.iter_mut() {
            if r[c].is_zero() {
                continue;
            }
            let q = &r[c] / &ps;
            for (x, p) in r.iter_mut().zip(&prow).skip(c) {
                *x = (&*x - &q * p).mod_floor(&m);
            }
        }
        if s > 0 {
            let f = num_traits::pow(lb.clone(), (n - s) as usize);
            let extra: Vec<BigInt> = prow.iter().map(|x| (x * &f).mod_floor(&m)).collect();
            work.push(extra);
        }
        work.retain(|r| r.iter().any(|x| !x.is_zero()));
        basis.push(prow);
        pivots.push((c, s));
    }
    // Reduce entries above each pivot.
    for i in 0..basis.len() {
        let (c, s) = pivots[i];
        let ps = big_pow(l, s);
        let (above, rest) = basis.split_at_mut(i);
        let prow = &rest[0];
        for r in above.iter_mut() {
            let q = r[c].div_floor(&ps);
            if !q.is_zero() {
                for (x, p) in r.iter_mut().zip(prow).skip(c) {
                    *x = (&*x - &q * p).mod_floor(&m);
                }
            }
        }
    }
    HowellBasis {
        l,
        precision: n,
        ncols,
        rows: basis,
        pivots,
    }
}

/// Generators of `{x in (Z/l^n)^k : x T = 0}` for a `k x m` matrix `T`
/// given by rows.
pub fn left_kernel(t: &[Vec<BigInt>], mcols: usize, l: u64, n: u32) -> HowellBasis {
    let k = t.len();
    let aug: Vec<Vec<BigInt>> = t
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let h = howell_form(&aug, mcols + k, l, n);
    let rows: Vec<Vec<BigInt>> = h
        .rows
        .iter()
        .zip(&h.pivots)
        .filter(|(_, &(c, _))| c >= mcols)
        .map(|(r, _)| r[mcols..].to_vec())
        .collect();
    howell_form(&rows, k, l, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn spec_examples() {
        let h = howell_form(&b(&[vec![3, 3], vec![0, 3]]), 2, 3, 2);
        assert_eq!(h.rows(), b(&[vec![3, 0], vec![0, 3]]).as_slice());
        assert!(h.contains(&b(&[vec![6, 3]])[0]));
        assert!(h.contains(&b(&[vec![0, 0]])[0]));
        let h1 = howell_form(&b(&[vec![3, 0]]), 2, 3, 2);
        assert!(!h1.contains(&b(&[vec![1, 0]])[0]));
        let id = howell_form(&b(&[vec![1, 0], vec![0, 1]]), 2, 5, 3);
        assert_eq!(id.rows(), b(&[vec![1, 0], vec![0, 1]]).as_slice());
        assert!(howell_form(&b(&[vec![0, 0]]), 2, 5, 3).is_empty());
    }

    #[test]
    fn howell_property_needs_extra_row() {
        // Span of (2, 1) over Z/4 contains (0, 2).
        let h = howell_form(&b(&[vec![2, 1]]), 2, 2, 2);
        assert_eq!(h.rows(), b(&[vec![2, 1], vec![0, 2]]).as_slice());
        assert_eq!(h.log_size(), 2);
    }

    #[test]
    fn kernel() {
        // x * [2] = 0 mod 4  =>  x in (2)
        let k = left_kernel(&b(&[vec![2]]), 1, 2, 2);
        assert_eq!(k.rows(), b(&[vec![2]]).as_slice());
        let k = left_kernel(&b(&[vec![1], vec![1]]), 1, 3, 1);
        assert_eq!(k.rows(), b(&[vec![1, 2]]).as_slice());
    }
}
