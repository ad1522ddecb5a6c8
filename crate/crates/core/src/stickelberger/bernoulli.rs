use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::binomial;

/// `B_0, ..., B_max` with `B_1 = -1/2`, built once.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    /// Fills the table from `sum_{j<=k} C(k+1, j) B_j = 0`.
    pub fn new(max: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(max + 1);
        values.push(BigRational::one());
        for k in 1..=max {
            let mut s = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                s += b * BigRational::from_integer(binomial(k as u64 + 1, j as u64));
            }
            values.push(-s / BigRational::from_integer(BigInt::from(k + 1)));
        }
        BernoulliTable { values }
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn number(&self, k: usize) -> &BigRational {
        &self.values[k]
    }

    /// `B_n(q) = sum_j C(n, j) B_j q^{n-j}`.
    pub fn polynomial(&self, n: usize, q: &BigRational) -> BigRational {
        // Horner in q, highest power first.
        let mut acc = BigRational::zero();
        for j in 0..=n {
            acc = acc * q + BigRational::from_integer(binomial(n as u64, j as u64)) * &self.values[j];
        }
        acc
    }
}

pub fn bernoulli_number(k: usize) -> BigRational {
    BernoulliTable::new(k).number(k).clone()
}

pub fn bernoulli_polynomial_eval(n: usize, q: &BigRational) -> BigRational {
    BernoulliTable::new(n).polynomial(n, q)
}
