use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::complex::PerfectComplex;
use crate::arith::big_pow;
use crate::error::{Error, Result};
use crate::grouprings::{DetClass, FiniteAbelianGroup, IntElement, Integers, RatElement, Rationals};
use crate::linalg::IntGrMatrix;

/// Input to the mapping-cone construction: a base complex `M_1 --d--> M_0`
/// of free modules of ranks `(b_1, b_0)` with the endomorphism `alpha`
/// acting on `M_i` as multiplication by `u_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeSpec {
    pub l: u64,
    pub group: FiniteAbelianGroup,
    pub b1: usize,
    pub b0: usize,
    /// `b_0 x b_1`.
    pub d: IntGrMatrix,
    pub u1: IntElement,
    pub u0: IntElement,
}

impl ConeSpec {
    /// Spec with zero base differential.
    pub fn diagonal(l: u64, group: &FiniteAbelianGroup, b1: usize, b0: usize, u1: IntElement, u0: IntElement) -> Self {
        ConeSpec {
            l,
            group: group.clone(),
            b1,
            b0,
            d: IntGrMatrix::zeros(group, &Integers, b0, b1),
            u1,
            u0,
        }
    }

    fn one_minus(&self, u: &IntElement) -> IntElement {
        IntElement::one(&self.group, &Integers).sub_ref(u)
    }

    /// Checks that `1 - u_i` is invertible in `Q[G]` and that `alpha` is a
    /// chain map (`d u_1 = u_0 d`).
    pub fn validate(&self) -> Result<()> {
        if self.d.rows() != self.b0 || self.d.cols() != self.b1 {
            return Err(Error::BadSize("base differential must be b0 x b1".into()));
        }
        for u in [&self.u1, &self.u0] {
            if !self.one_minus(u).to_rational().is_invertible() {
                return Err(Error::NotInvertible);
            }
        }
        if self.d.scale(&self.u1) != self.d.scale(&self.u0) {
            return Err(Error::InvalidArgument("alpha does not commute with d".into()));
        }
        Ok(())
    }

    /// `(1 - u_1)^{b_1} (1 - u_0)^{-b_0}`, the class of the cone.
    pub fn expected_class(&self) -> Result<DetClass> {
        let f1 = self.one_minus(&self.u1).to_rational();
        let f0 = self.one_minus(&self.u0).to_rational().inverse()?;
        let mut rep = RatElement::one(&self.group, &Rationals);
        for _ in 0..self.b1 {
            rep = rep.mul_ref(&f1);
        }
        for _ in 0..self.b0 {
            rep = rep.mul_ref(&f0);
        }
        DetClass::new(rep, self.l)
    }
}

/// The mapping cone of `1 - alpha`: `C_2 = M_1`, `C_1 = M_0 + M_1`,
/// `C_0 = M_0`, with `D_2 = (-d ; f_1)` and `D_1 = [f_0 | d]`, `f = 1 - u`.
///
/// A nonzero seed then changes bases by random elementary matrices over
/// `Z[G]`, which does not affect homology or the class.
pub fn generate_cone(spec: &ConeSpec, seed: u64) -> Result<PerfectComplex> {
    spec.validate()?;
    let g = &spec.group;
    let f1 = spec.one_minus(&spec.u1);
    let f0 = spec.one_minus(&spec.u0);
    let (b0, b1) = (spec.b0, spec.b1);
    let d2 = spec.d.neg().vstack(&IntGrMatrix::diagonal(g, &Integers, vec![f1; b1]));
    let d1 = IntGrMatrix::diagonal(g, &Integers, vec![f0; b0]).hstack(&spec.d);
    let mut c = PerfectComplex::new(spec.l, g.clone(), vec![b0, b0 + b1, b1], vec![d1, d2])?;
    if seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..3 {
            let i = rng.gen_range(0..3);
            let r = c.ranks()[i];
            if r < 2 {
                continue;
            }
            let p = rng.gen_range(0..r);
            let q = (p + rng.gen_range(1..r)) % r;
            let x = random_element(g, &mut rng, 1);
            c = c.elementary_basis_change(i, p, q, &x);
        }
    }
    Ok(c)
}

/// Coefficients drawn uniformly from `[-bound, bound]`.
pub fn random_element(g: &FiniteAbelianGroup, rng: &mut impl Rng, bound: i64) -> IntElement {
    let coeffs: Vec<i64> = (0..g.order()).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntElement::from_ints(g, &coeffs)
}

/// A unit of `Z_l[G]` with integer coefficients: `h + l x`.
pub fn random_l_unit(g: &FiniteAbelianGroup, l: u64, rng: &mut impl Rng) -> IntElement {
    let h = rng.gen_range(0..g.order());
    let x = random_element(g, rng, 1).scale(&big_pow(l, 1));
    IntElement::basis(g, &Integers, h).add_ref(&x)
}

/// A random cone specification with `1 <= b_0 + b_1 <= max_total` and
/// `1 - u_i = l^{a_i} v_i`, `v_i` a unit of `Z_l[G]`, `a_i <= max_a`.
pub fn random_cone_spec(
    group: &FiniteAbelianGroup,
    l: u64,
    max_total: usize,
    max_a: u32,
    rng: &mut impl Rng,
) -> ConeSpec {
    let total = rng.gen_range(1..=max_total.max(1));
    let b1 = rng.gen_range(0..=total);
    let b0 = total - b1;
    let u1 = random_twist(group, l, max_a, rng);
    let with_d = b0 > 0 && b1 > 0 && rng.gen_bool(0.5);
    if with_d {
        let mut d = IntGrMatrix::zeros(group, &Integers, b0, b1);
        for i in 0..b0 {
            for j in 0..b1 {
                d.set(i, j, random_element(group, rng, 1));
            }
        }
        ConeSpec {
            l,
            group: group.clone(),
            b1,
            b0,
            d,
            u0: u1.clone(),
            u1,
        }
    } else {
        let u0 = random_twist(group, l, max_a, rng);
        ConeSpec::diagonal(l, group, b1, b0, u1, u0)
    }
}

/// `u = 1 - l^a v` with `v` a unit of `Z_l[G]` and `0 <= a <= max_a`.
pub fn random_twist(group: &FiniteAbelianGroup, l: u64, max_a: u32, rng: &mut impl Rng) -> IntElement {
    let a = rng.gen_range(0..=max_a);
    let v = random_l_unit(group, l, rng);
    IntElement::one(group, &Integers).sub_ref(&v.scale(&big_pow(l, a)))
}
