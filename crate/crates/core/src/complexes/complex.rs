use num_bigint::BigInt;

use crate::arith::valuation_int;
use crate::error::{Error, Result};
use crate::grouprings::{FiniteAbelianGroup, IntElement, Integers};
use crate::linalg::{smith_normal_form, IntGrMatrix, IntegerMatrix};
use crate::modules::{finite_quotient_with_invariants, free_actions, ConcreteModule};

/// A bounded complex `0 -> F_k -> ... -> F_1 -> F_0 -> 0` of free
/// `Z[G]`-modules; `d_i : F_i -> F_{i-1}` is an `r_{i-1} x r_i` matrix acting
/// on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct PerfectComplex {
    l: u64,
    group: FiniteAbelianGroup,
    ranks: Vec<usize>,
    /// `differentials[i - 1]` is `d_i`.
    differentials: Vec<IntGrMatrix>,
}

/// Homology of one degree: the l-primary part as a module, and the
/// invariant factors of the full (integral) homology group.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeHomology {
    pub module: ConcreteModule,
    pub invariants: Vec<BigInt>,
}

impl DegreeHomology {
    /// `|H_i|` over the integers.
    pub fn order(&self) -> BigInt {
        self.invariants.iter().product()
    }

    pub fn is_l_power(&self, l: u64) -> bool {
        self.invariants.iter().all(|d| {
            let v = valuation_int(d, l).unwrap_or(0) as u32;
            d == &crate::arith::big_pow(l, v)
        })
    }
}

/// Outcome of [`validate_complex`].
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexDiagnostic {
    pub homology: Vec<DegreeHomology>,
    /// Per degree: the integral homology has l-power order.
    pub l_power: Vec<bool>,
}

impl PerfectComplex {
    /// Checks shapes and `d_{i} d_{i+1} = 0`.
    pub fn new(l: u64, group: FiniteAbelianGroup, ranks: Vec<usize>, differentials: Vec<IntGrMatrix>) -> Result<Self> {
        if !crate::arith::is_prime(l) {
            return Err(Error::InvalidArgument(format!("{l} is not prime")));
        }
        if ranks.is_empty() {
            return Err(Error::BadSize("a complex needs at least one term".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::BadSize(format!(
                "{} ranks need {} differentials, found {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.group() != &group {
                return Err(Error::Mismatch(format!("d_{} is over a different group", i + 1)));
            }
            if d.rows() != ranks[i] || d.cols() != ranks[i + 1] {
                return Err(Error::BadSize(format!(
                    "d_{} must be {}x{}, found {}x{}",
                    i + 1,
                    ranks[i],
                    ranks[i + 1],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for i in 1..differentials.len() {
            if !differentials[i - 1].mul(&differentials[i]).is_zero() {
                return Err(Error::NotAComplex(format!("d_{} d_{} is nonzero", i, i + 1)));
            }
        }
        Ok(PerfectComplex {
            l,
            group,
            ranks,
            differentials,
        })
    }

    /// `0 -> R^r -> R^s -> 0` in degrees 1, 0.
    pub fn two_term(l: u64, d: IntGrMatrix) -> Result<Self> {
        let g = d.group().clone();
        PerfectComplex::new(l, g, vec![d.rows(), d.cols()], vec![d])
    }

    pub fn prime(&self) -> u64 {
        self.l
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Highest degree `k`.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn differentials(&self) -> &[IntGrMatrix] {
        &self.differentials
    }

    /// `d_i` for `1 <= i <= k`.
    pub fn d(&self, i: usize) -> &IntGrMatrix {
        &self.differentials[i - 1]
    }

    /// Homology in degree `i`.
    pub fn homology_at(&self, i: usize) -> Result<DegreeHomology> {
        let n = self.group.order();
        let dim = self.ranks[i] * n;
        // Kernel of d_i, as the last columns of V in the Smith form.
        let (k_basis, k_coords, rank) = if i == 0 || dim == 0 {
            (IntegerMatrix::identity(dim), IntegerMatrix::identity(dim), 0)
        } else {
            let snf = smith_normal_form(&self.d(i).expand_integer());
            (snf.v, snf.v_inv, snf.rank)
        };
        let free: Vec<usize> = (rank..dim).collect();
        let kernel = k_basis.select_cols(&free);
        let coords = k_coords.select_rows(&free);
        let relations = if i < self.length() {
            coords.mul(&self.d(i + 1).expand_integer())
        } else {
            IntegerMatrix::zeros(free.len(), 0)
        };
        let actions: Vec<IntegerMatrix> = free_actions(&self.group, self.ranks[i])
            .iter()
            .map(|p| coords.mul(p).mul(&kernel))
            .collect();
        let (module, invariants) = finite_quotient_with_invariants(self.l, &self.group, &relations, &actions, false)?;
        Ok(DegreeHomology { module, invariants })
    }

    /// Appends an acyclic piece `R --u--> R` on top (degree `k+1` into a new
    /// summand of `F_k`), which leaves the l-adic homology unchanged when
    /// `u` is a unit of `Z_l[G]`.
    pub fn attach_acyclic(&self, u: &IntElement) -> Result<PerfectComplex> {
        let g = &self.group;
        let k = self.length();
        let mut ranks = self.ranks.clone();
        ranks[k] += 1;
        ranks.push(1);
        let mut diffs = self.differentials.clone();
        if k > 0 {
            let top = diffs.pop().expect("k > 0");
            let zero_col = IntGrMatrix::zeros(g, &Integers, top.rows(), 1);
            diffs.push(top.hstack(&zero_col));
        }
        let mut col = IntGrMatrix::zeros(g, &Integers, ranks[k], 1);
        col.set(ranks[k] - 1, 0, u.clone());
        diffs.push(col);
        PerfectComplex::new(self.l, g.clone(), ranks, diffs)
    }

    /// Changes the basis of `F_i` by the elementary matrix `I + c e_{pq}`.
    pub fn elementary_basis_change(&self, i: usize, p: usize, q: usize, c: &IntElement) -> PerfectComplex {
        assert!(p != q && p < self.ranks[i] && q < self.ranks[i]);
        let g = &self.group;
        let r = self.ranks[i];
        let mut e = IntGrMatrix::identity(g, &Integers, r);
        e.set(p, q, c.clone());
        let mut e_inv = IntGrMatrix::identity(g, &Integers, r);
        e_inv.set(p, q, c.neg_ref());
        let mut diffs = self.differentials.clone();
        if i < self.length() {
            diffs[i] = e.mul(&diffs[i]);
        }
        if i > 0 {
            diffs[i - 1] = diffs[i - 1].mul(&e_inv);
        }
        PerfectComplex {
            l: self.l,
            group: self.group.clone(),
            ranks: self.ranks.clone(),
            differentials: diffs,
        }
    }
}

/// Confirms the complex has finite homology in every degree; with `strict`
/// also that the l-adic homology vanishes outside degrees 0 and 1.
pub fn validate_complex(c: &PerfectComplex, strict: bool) -> Result<ComplexDiagnostic> {
    let mut homology = Vec::new();
    let mut l_power = Vec::new();
    for i in 0..=c.length() {
        let h = c.homology_at(i)?;
        if strict && i > 1 && !h.module.is_zero() {
            return Err(Error::WrongConcentration { degree: i });
        }
        l_power.push(h.is_l_power(c.l));
        homology.push(h);
    }
    Ok(ComplexDiagnostic { homology, l_power })
}
