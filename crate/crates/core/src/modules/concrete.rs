use num_bigint::BigInt;

use crate::arith::big_pow;
use crate::error::{Error, Result};
use crate::grouprings::FiniteAbelianGroup;
use crate::linalg::{howell_form, HowellBasis, IntegerMatrix};

/// Square matrix over residues, entries of row `r` reduced modulo `l^{e_r}`.
pub type ActionMatrix = Vec<Vec<u64>>;

/// Largest exponent allowed for a cyclic factor, keeping `l^e` below `2^62`.
fn max_exponent(l: u64) -> u32 {
    let mut e = 0;
    let mut p: u128 = 1;
    while p * (l as u128) < (1u128 << 62) {
        p *= l as u128;
        e += 1;
    }
    e
}

/// A finite `Z_l[G]`-module `Z/l^{e_1} + ... + Z/l^{e_k}` with the action of
/// each canonical generator of `G` given by a matrix: `g e_j = sum_r A_rj e_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConcreteModule {
    l: u64,
    group: FiniteAbelianGroup,
    factors: Vec<u32>,
    actions: Vec<ActionMatrix>,
}

impl ConcreteModule {
    /// Validates compatibility with the factor orders, commutativity and the
    /// relations `g_i^{d_i} = 1`.
    pub fn new(l: u64, group: FiniteAbelianGroup, factors: Vec<u32>, actions: Vec<ActionMatrix>) -> Result<Self> {
        if !crate::arith::is_prime(l) {
            return Err(Error::InvalidArgument(format!("{l} is not prime")));
        }
        if factors.contains(&0) {
            return Err(Error::InvalidArgument(
                "cyclic factor exponents must be positive".into(),
            ));
        }
        if factors.iter().any(|&e| e > max_exponent(l)) {
            return Err(Error::TooLarge {
                count: u128::from(l).pow(factors.iter().copied().max().unwrap_or(0)),
            });
        }
        if actions.len() != group.rank() {
            return Err(Error::BadSize(format!(
                "expected {} action matrices, found {}",
                group.rank(),
                actions.len()
            )));
        }
        let k = factors.len();
        let mut m = ConcreteModule {
            l,
            group,
            factors,
            actions,
        };
        for a in &m.actions {
            if a.len() != k || a.iter().any(|r| r.len() != k) {
                return Err(Error::BadSize(format!("action matrices must be {k}x{k}")));
            }
        }
        let actions: Vec<ActionMatrix> = m.actions.iter().map(|a| m.reduce_matrix(a)).collect();
        m.actions = actions;
        for a in &m.actions {
            for (r, row) in a.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if m.factors[r] > m.factors[j] {
                        let q = m.l.pow(m.factors[r] - m.factors[j]);
                        if x % q != 0 {
                            return Err(Error::InvalidArgument(format!(
                                "action entry ({r},{j}) does not respect the factor orders"
                            )));
                        }
                    }
                }
            }
        }
        for (i, a) in m.actions.iter().enumerate() {
            for b in &m.actions[i + 1..] {
                if m.compose(a, b) != m.compose(b, a) {
                    return Err(Error::InvalidArgument("generator actions do not commute".into()));
                }
            }
            let d = m.group.invariant_factors()[i];
            if m.matrix_power(a, d) != m.identity_matrix() {
                return Err(Error::InvalidArgument(format!(
                    "generator {i} does not satisfy g^{d} = 1"
                )));
            }
        }
        Ok(m)
    }

    pub fn zero(l: u64, group: &FiniteAbelianGroup) -> Self {
        ConcreteModule {
            l,
            group: group.clone(),
            factors: vec![],
            actions: vec![vec![]; group.rank()],
        }
    }

    /// `Z/l^e` with every generator acting by the given scalar.
    pub fn cyclic_scalar(l: u64, group: &FiniteAbelianGroup, e: u32, scalars: &[u64]) -> Result<Self> {
        if e == 0 {
            return Ok(Self::zero(l, group));
        }
        let actions = scalars.iter().map(|&s| vec![vec![s]]).collect();
        Self::new(l, group.clone(), vec![e], actions)
    }

    /// `Z/l^e` with trivial action.
    pub fn trivial_cyclic(l: u64, group: &FiniteAbelianGroup, e: u32) -> Self {
        Self::cyclic_scalar(l, group, e, &vec![1; group.rank()]).expect("trivial action is valid")
    }

    pub fn prime(&self) -> u64 {
        self.l
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn actions(&self) -> &[ActionMatrix] {
        &self.actions
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent `e_max` with `l^{e_max} M = 0`.
    pub fn exponent(&self) -> u32 {
        self.factors.iter().copied().max().unwrap_or(0)
    }

    /// `log_l |M|`.
    pub fn log_order(&self) -> u32 {
        self.factors.iter().sum()
    }

    fn modulus(&self, r: usize) -> u64 {
        self.l.pow(self.factors[r])
    }

    fn reduce_matrix(&self, a: &ActionMatrix) -> ActionMatrix {
        a.iter()
            .enumerate()
            .map(|(r, row)| row.iter().map(|&x| x % self.modulus(r)).collect())
            .collect()
    }

    pub fn identity_matrix(&self) -> ActionMatrix {
        let k = self.factors.len();
        (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()
    }

    /// Product `a b` of two compatible action matrices.
    pub fn compose(&self, a: &ActionMatrix, b: &ActionMatrix) -> ActionMatrix {
        let k = self.factors.len();
        (0..k)
            .map(|r| {
                let m = self.modulus(r) as u128;
                (0..k)
                    .map(|j| {
                        let s = (0..k).fold(0u128, |acc, t| (acc + (a[r][t] as u128) * (b[t][j] as u128)) % m);
                        s as u64
                    })
                    .collect()
            })
            .collect()
    }

    pub fn matrix_power(&self, a: &ActionMatrix, mut e: u64) -> ActionMatrix {
        let mut acc = self.identity_matrix();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(&acc, &base);
            }
            base = self.compose(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Action matrices of all group elements, in canonical element order.
    pub fn all_actions(&self) -> Vec<ActionMatrix> {
        let n = self.group.order();
        let mut out: Vec<ActionMatrix> = Vec::with_capacity(n);
        out.push(self.identity_matrix());
        for g in 1..n {
            let exps = self.group.exponents_of(g);
            let i = exps.iter().position(|&e| e > 0).expect("non-identity element");
            let mut prev: Vec<i64> = exps.iter().map(|&e| e as i64).collect();
            prev[i] -= 1;
            let p = self.group.index_of(&prev);
            out.push(self.compose(&self.actions[i], &out[p]));
        }
        out
    }

    /// Applies an action matrix to an element given by its coordinates.
    pub fn apply(&self, a: &ActionMatrix, x: &[u64]) -> Vec<u64> {
        let k = self.factors.len();
        (0..k)
            .map(|r| {
                let m = self.modulus(r) as u128;
                (0..k).fold(0u128, |acc, j| (acc + (a[r][j] as u128) * (x[j] as u128)) % m) as u64
            })
            .collect()
    }

    /// Coordinates scaled into `(Z/l^{e_max})^k` so that submodules become
    /// row spans: `x_r -> x_r l^{e_max - e_r}`.
    pub fn embed(&self, x: &[u64]) -> Vec<BigInt> {
        let e = self.exponent();
        x.iter()
            .zip(&self.factors)
            .map(|(&v, &f)| BigInt::from(v) * big_pow(self.l, e - f))
            .collect()
    }

    /// Howell basis (at precision `e_max`) of the submodule generated by the
    /// given elements.
    pub fn submodule(&self, elems: &[Vec<u64>]) -> HowellBasis {
        let acts = self.all_actions();
        let rows: Vec<Vec<BigInt>> = elems
            .iter()
            .flat_map(|x| acts.iter().map(move |a| self.embed(&self.apply(a, x))))
            .collect();
        howell_form(&rows, self.num_factors(), self.l, self.exponent())
    }

    /// The canonical basis element `e_j`.
    pub fn basis_element(&self, j: usize) -> Vec<u64> {
        let mut x = vec![0; self.num_factors()];
        x[j] = 1;
        x
    }

    /// `M^# = Hom(M, Q_l/Z_l)` with `(g f)(m) = f(g^{-1} m)`, on the dual
    /// basis `f_j(e_i) = delta_ij / l^{e_j}`.
    pub fn pontryagin_dual(&self) -> ConcreteModule {
        let k = self.factors.len();
        let actions = (0..self.group.rank())
            .map(|i| {
                let g = self.group.generator(i);
                let b = self.action_of(self.group.inverse(g));
                (0..k)
                    .map(|r| {
                        (0..k)
                            .map(|j| {
                                let (er, ej) = (self.factors[r], self.factors[j]);
                                let v = if er >= ej {
                                    (b[j][r] as u128 * self.l.pow(er - ej) as u128) as u64
                                } else {
                                    b[j][r] / self.l.pow(ej - er)
                                };
                                v % self.modulus(r)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ConcreteModule {
            l: self.l,
            group: self.group.clone(),
            factors: self.factors.clone(),
            actions,
        }
    }

    /// Action matrix of the group element with index `g`.
    pub fn action_of(&self, g: usize) -> ActionMatrix {
        let mut acc = self.identity_matrix();
        for (i, e) in self.group.exponents_of(g).into_iter().enumerate() {
            acc = self.compose(&acc, &self.matrix_power(&self.actions[i], e));
        }
        acc
    }

    pub fn direct_sum(&self, other: &ConcreteModule) -> Result<ConcreteModule> {
        if self.l != other.l || self.group != other.group {
            return Err(Error::Mismatch("direct sum of modules over different rings".into()));
        }
        let (k1, k2) = (self.num_factors(), other.num_factors());
        let mut factors = self.factors.clone();
        factors.extend(&other.factors);
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut m = vec![vec![0u64; k1 + k2]; k1 + k2];
                for i in 0..k1 {
                    m[i][..k1].copy_from_slice(&a[i]);
                }
                for i in 0..k2 {
                    m[k1 + i][k1..].copy_from_slice(&b[i]);
                }
                m
            })
            .collect();
        Ok(ConcreteModule {
            l: self.l,
            group: self.group.clone(),
            factors,
            actions,
        })
    }

    /// `Z^k` relations `l^{e_j} e_j` and lifted integer action matrices.
    pub(crate) fn integer_presentation(&self) -> (IntegerMatrix, Vec<IntegerMatrix>) {
        let k = self.num_factors();
        let mut rel = IntegerMatrix::zeros(k, k);
        for (j, &e) in self.factors.iter().enumerate() {
            rel.set(j, j, big_pow(self.l, e));
        }
        let acts = self
            .actions
            .iter()
            .map(|a| {
                IntegerMatrix::from_rows_with_cols(
                    a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
                    k,
                )
            })
            .collect();
        (rel, acts)
    }

    /// The quotient by the submodule generated by `elems`.
    pub fn quotient(&self, elems: &[Vec<u64>]) -> Result<ConcreteModule> {
        let (rel, acts) = self.integer_presentation();
        let k = self.num_factors();
        let orbit: Vec<Vec<u64>> = self
            .all_actions()
            .iter()
            .flat_map(|a| elems.iter().map(move |x| self.apply(a, x)))
            .collect();
        let extra = IntegerMatrix::from_rows_with_cols(
            (0..k)
                .map(|r| orbit.iter().map(|x| BigInt::from(x[r])).collect())
                .collect(),
            orbit.len(),
        );
        super::presented::finite_quotient(self.l, &self.group, &rel.hstack(&extra), &acts, true)
    }

    /// Isomorphism-invariant summary: the sorted factor exponents.
    pub fn abelian_invariants(&self) -> Vec<u32> {
        let mut f = self.factors.clone();
        f.sort_unstable();
        f
    }
}
