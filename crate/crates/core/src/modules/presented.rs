use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::concrete::ConcreteModule;
use crate::arith::{big_inv_mod, big_pow, valuation_int};
use crate::error::{Error, Result};
use crate::grouprings::{FiniteAbelianGroup, IntElement, Integers};
use crate::linalg::{howell_form, left_kernel, smith_normal_form, IntGrMatrix, IntegerMatrix};

/// A module `coker(R^a -> R^b)` over `R = Z_l[G]`, given by an `a x b`
/// matrix over `Z[G]` whose rows are the relations among `b` generators.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentedModule {
    l: u64,
    matrix: IntGrMatrix,
}

impl PresentedModule {
    /// Pads with zero relation rows up to `a >= b`.
    pub fn new(l: u64, matrix: IntGrMatrix) -> Result<Self> {
        if !crate::arith::is_prime(l) {
            return Err(Error::InvalidArgument(format!("{l} is not prime")));
        }
        let (a, b) = (matrix.rows(), matrix.cols());
        let matrix = if a < b {
            let pad = IntGrMatrix::zeros(matrix.group(), &Integers, b - a, b);
            matrix.vstack(&pad)
        } else {
            matrix
        };
        Ok(PresentedModule { l, matrix })
    }

    pub fn prime(&self) -> u64 {
        self.l
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.matrix.group()
    }

    pub fn matrix(&self) -> &IntGrMatrix {
        &self.matrix
    }

    pub fn num_generators(&self) -> usize {
        self.matrix.cols()
    }

    pub fn num_relations(&self) -> usize {
        self.matrix.rows()
    }

    /// Appends relation rows.
    pub fn with_relations(&self, rows: &IntGrMatrix) -> Result<Self> {
        if rows.cols() != self.num_generators() {
            return Err(Error::BadSize("relation rows have the wrong width".into()));
        }
        Self::new(self.l, self.matrix.vstack(rows))
    }

    /// Reorders the generators: new column `i` is old column `perm[i]`.
    pub fn permute_generators(&self, perm: &[usize]) -> Result<Self> {
        let rows: Vec<usize> = (0..self.num_relations()).collect();
        Self::new(self.l, self.matrix.submatrix(&rows, perm))
    }

    /// The cyclic decomposition of the cokernel together with the induced
    /// action. Fails unless the cokernel is finite of l-power order.
    pub fn realize(&self) -> Result<ConcreteModule> {
        let g = self.group();
        let b = self.num_generators();
        let rel = self.matrix.transpose().expand_integer();
        finite_quotient(self.l, g, &rel, &free_actions(g, b), true)
    }
}

/// Action of the canonical generators on `Z[G]^b` expanded to `Z^{b|G|}`.
pub fn free_actions(g: &FiniteAbelianGroup, b: usize) -> Vec<IntegerMatrix> {
    (0..g.rank())
        .map(|i| {
            let h = IntElement::basis(g, &Integers, g.generator(i));
            IntGrMatrix::identity(g, &Integers, b).scale(&h).expand_integer()
        })
        .collect()
}

/// The module `Z^n / colspan(relations)` with the action induced by the
/// given integer matrices (which must preserve the column span).
///
/// With `strict`, any torsion prime to `l` is an error; otherwise the
/// l-primary part is returned.
pub fn finite_quotient(
    l: u64,
    group: &FiniteAbelianGroup,
    relations: &IntegerMatrix,
    actions: &[IntegerMatrix],
    strict: bool,
) -> Result<ConcreteModule> {
    finite_quotient_with_invariants(l, group, relations, actions, strict).map(|r| r.0)
}

/// As [`finite_quotient`], also returning the nontrivial invariant factors
/// of the whole quotient (including torsion prime to `l`).
pub fn finite_quotient_with_invariants(
    l: u64,
    group: &FiniteAbelianGroup,
    relations: &IntegerMatrix,
    actions: &[IntegerMatrix],
    strict: bool,
) -> Result<(ConcreteModule, Vec<BigInt>)> {
    let n = relations.rows();
    if n == 0 {
        return Ok((ConcreteModule::zero(l, group), vec![]));
    }
    let snf = smith_normal_form(relations);
    if snf.rank < n {
        return Err(Error::NotFinite);
    }
    // (index, l-exponent, prime-to-l part) of each nontrivial l-primary factor.
    let mut kept = Vec::new();
    for (i, d) in snf.diagonal.iter().enumerate() {
        let v = valuation_int(d, l).expect("nonzero invariant factor") as u32;
        let m = d / big_pow(l, v);
        if strict && !m.is_one() {
            return Err(Error::NotLPower { l });
        }
        if v > 0 {
            kept.push((i, v, m));
        }
    }
    let invariants: Vec<BigInt> = snf.diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
    if kept.is_empty() {
        return Ok((ConcreteModule::zero(l, group), invariants));
    }
    let idx: Vec<usize> = kept.iter().map(|k| k.0).collect();
    let u_rows = snf.u.select_rows(&idx);
    let u_inv_cols = snf.u_inv.select_cols(&idx);
    let factors: Vec<u32> = kept.iter().map(|k| k.1).collect();
    let mut mats = Vec::with_capacity(actions.len());
    for p in actions {
        let a = u_rows.mul(p).mul(&u_inv_cols);
        let mut mat = vec![vec![0u64; kept.len()]; kept.len()];
        for (r, (_, vr, mr)) in kept.iter().enumerate() {
            let modulus = big_pow(l, *vr);
            let mr_inv = big_inv_mod(mr, &modulus).expect("prime to l");
            for (c, (_, _, mc)) in kept.iter().enumerate() {
                let x = (mc * a.get(r, c) * &mr_inv).mod_floor(&modulus);
                mat[r][c] = x.to_u64().expect("residue fits");
            }
        }
        mats.push(mat);
    }
    Ok((ConcreteModule::new(l, group.clone(), factors, mats)?, invariants))
}

/// A presentation of a concrete module: greedily chosen generators among the
/// cyclic basis elements, and relations generating the full relation module
/// over `Z[G]`.
pub fn presentation_from_concrete(m: &ConcreteModule) -> PresentedModule {
    let g = m.group();
    let l = m.prime();
    if m.is_zero() {
        return PresentedModule::new(l, IntGrMatrix::zeros(g, &Integers, 0, 0)).expect("valid prime");
    }
    let e = m.exponent();
    let target = u64::from(m.log_order());
    let k = m.num_factors();
    let acts = m.all_actions();

    let mut gens: Vec<Vec<u64>> = Vec::new();
    let mut span = howell_form(&[], k, l, e);
    while span.log_size() < target {
        let mut best: Option<(u64, Vec<u64>, crate::linalg::HowellBasis)> = None;
        for j in 0..k {
            let x = m.basis_element(j);
            let rows: Vec<Vec<BigInt>> = acts.iter().map(|a| m.embed(&m.apply(a, &x))).collect();
            let s = span.extend(&rows);
            if best.as_ref().is_none_or(|(b, _, _)| s.log_size() > *b) {
                best = Some((s.log_size(), x, s));
            }
        }
        let (_, x, s) = best.expect("at least one factor");
        gens.push(x);
        span = s;
    }

    // Row (j, h) of T is the image of h * x_j.
    let n = g.order();
    let b = gens.len();
    let t: Vec<Vec<BigInt>> = gens
        .iter()
        .flat_map(|x| acts.iter().map(move |a| m.embed(&m.apply(a, x))))
        .collect();
    let kernel = left_kernel(&t, k, l, e);

    let le = big_pow(l, e);
    let mut relations: Vec<Vec<IntElement>> = (0..b)
        .map(|j| {
            (0..b)
                .map(|c| {
                    if c == j {
                        IntElement::scalar(g, &Integers, le.clone())
                    } else {
                        IntElement::zero(g, &Integers)
                    }
                })
                .collect()
        })
        .collect();
    let mut rel_span = howell_form(&[], b * n, l, e);
    for w in kernel.rows() {
        if rel_span.log_size() == kernel.log_size() {
            break;
        }
        if rel_span.contains(w) {
            continue;
        }
        let row: Vec<IntElement> = (0..b)
            .map(|j| IntElement::from_parts(g.clone(), Integers, w[j * n..(j + 1) * n].to_vec()))
            .collect();
        let translates: Vec<Vec<BigInt>> = (0..n)
            .map(|h| row.iter().flat_map(|x| x.shift(h).into_coeffs()).collect())
            .collect();
        rel_span = rel_span.extend(&translates);
        relations.push(row);
    }
    let matrix = IntGrMatrix::from_int_rows(g, relations).expect("uniform rows");
    PresentedModule::new(l, matrix).expect("valid prime")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(l: u64, g: &FiniteAbelianGroup, rows: &[Vec<Vec<i64>>]) -> PresentedModule {
        let m = IntGrMatrix::from_int_rows(
            g,
            rows.iter()
                .map(|r| r.iter().map(|x| IntElement::from_ints(g, x)).collect())
                .collect(),
        )
        .unwrap();
        PresentedModule::new(l, m).unwrap()
    }

    #[test]
    fn realize_examples() {
        let t = FiniteAbelianGroup::trivial();
        let m = pm(3, &t, &[vec![vec![3]]]).realize().unwrap();
        assert_eq!(m.factors(), &[1]);
        let c2 = FiniteAbelianGroup::cyclic(2);
        let m = pm(2, &c2, &[vec![vec![4, 0]], vec![vec![-3, 1]]]).realize().unwrap();
        assert_eq!(m, ConcreteModule::cyclic_scalar(2, &c2, 2, &[3]).unwrap());
        let z = pm(2, &c2, &[vec![vec![1, 0]]]).realize().unwrap();
        assert!(z.is_zero());
        assert_eq!(pm(2, &t, &[vec![vec![0]]]).realize(), Err(Error::NotFinite));
        assert_eq!(pm(2, &t, &[vec![vec![6]]]).realize(), Err(Error::NotLPower { l: 2 }));
    }

    #[test]
    fn presentation_round_trip() {
        let c2 = FiniteAbelianGroup::cyclic(2);
        let m = ConcreteModule::cyclic_scalar(2, &c2, 2, &[3]).unwrap();
        let p = presentation_from_concrete(&m);
        assert_eq!(p.num_generators(), 1);
        assert_eq!(p.realize().unwrap(), m);
        let s = m.direct_sum(&ConcreteModule::trivial_cyclic(2, &c2, 1)).unwrap();
        let r = presentation_from_concrete(&s).realize().unwrap();
        assert_eq!(r.abelian_invariants(), s.abelian_invariants());
    }
}
