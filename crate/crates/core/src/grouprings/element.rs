use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::group::FiniteAbelianGroup;
use super::scalar::{Integers, Rationals, Residues, ScalarRing};
use crate::arith::{big_pow, l_valuation, rational_mod, valuation_int};
use crate::error::{Error, Result};
use crate::linalg::rational::solve_columns;

/// An element `sum_g c_g g` of a group ring `S[G]`, coefficients in the
/// canonical element order of `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElement<R: ScalarRing> {
    group: FiniteAbelianGroup,
    ring: R,
    coeffs: Vec<R::Elem>,
}

pub type IntElement = GroupRingElement<Integers>;
pub type RatElement = GroupRingElement<Rationals>;
pub type ResElement = GroupRingElement<Residues>;

impl<R: ScalarRing> GroupRingElement<R> {
    pub fn new(group: FiniteAbelianGroup, ring: R, coeffs: Vec<R::Elem>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::BadSize(format!(
                "expected {} coefficients for {group}, found {}",
                group.order(),
                coeffs.len()
            )));
        }
        Ok(Self::from_parts(group, ring, coeffs))
    }

    /// Builds an element, normalizing every coefficient through the ring.
    /// Panics if the coefficient count is wrong.
    pub fn from_parts(group: FiniteAbelianGroup, ring: R, coeffs: Vec<R::Elem>) -> Self {
        assert_eq!(coeffs.len(), group.order(), "coefficient count");
        let zero = ring.zero();
        let coeffs = coeffs.iter().map(|c| ring.add(c, &zero)).collect();
        GroupRingElement { group, ring, coeffs }
    }

    pub fn zero(group: &FiniteAbelianGroup, ring: &R) -> Self {
        GroupRingElement {
            coeffs: vec![ring.zero(); group.order()],
            group: group.clone(),
            ring: ring.clone(),
        }
    }

    pub fn one(group: &FiniteAbelianGroup, ring: &R) -> Self {
        Self::basis(group, ring, group.identity())
    }

    /// The group element with index `g`.
    pub fn basis(group: &FiniteAbelianGroup, ring: &R, g: usize) -> Self {
        let mut x = Self::zero(group, ring);
        x.coeffs[g] = ring.one();
        x
    }

    pub fn scalar(group: &FiniteAbelianGroup, ring: &R, c: R::Elem) -> Self {
        let mut x = Self::zero(group, ring);
        x.coeffs[group.identity()] = ring.add(&c, &ring.zero());
        x
    }

    pub fn from_i64s(group: &FiniteAbelianGroup, ring: &R, coeffs: &[i64]) -> Self {
        Self::from_parts(
            group.clone(),
            ring.clone(),
            coeffs.iter().map(|&c| ring.from_i64(c)).collect(),
        )
    }

    /// The norm element `sum_{g in G} g`.
    pub fn norm_element(group: &FiniteAbelianGroup, ring: &R) -> Self {
        GroupRingElement {
            coeffs: vec![ring.one(); group.order()],
            group: group.clone(),
            ring: ring.clone(),
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &R::Elem {
        &self.coeffs[g]
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.group == other.group && self.ring == other.ring,
            "group ring operands over different groups or scalar domains"
        );
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        self.with_coeffs(coeffs)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        self.with_coeffs(coeffs)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let n = self.group.order();
        let mut coeffs = vec![self.ring.zero(); n];
        for (g, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (h, b) in other.coeffs.iter().enumerate() {
                if self.ring.is_zero(b) {
                    continue;
                }
                let gh = self.group.op(g, h);
                coeffs[gh] = self.ring.add(&coeffs[gh], &self.ring.mul(a, b));
            }
        }
        self.with_coeffs(coeffs)
    }

    pub fn neg_ref(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| self.ring.neg(a)).collect())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect())
    }

    /// Multiplication by the group element `g`.
    pub fn shift(&self, g: usize) -> Self {
        let mut coeffs = vec![self.ring.zero(); self.group.order()];
        for (h, a) in self.coeffs.iter().enumerate() {
            coeffs[self.group.op(g, h)] = a.clone();
        }
        self.with_coeffs(coeffs)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.group, &self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            k >>= 1;
        }
        acc
    }

    /// The involution induced by `g -> g^{-1}`.
    pub fn tau(&self) -> Self {
        let mut coeffs = vec![self.ring.zero(); self.group.order()];
        for (g, a) in self.coeffs.iter().enumerate() {
            coeffs[self.group.inverse(g)] = a.clone();
        }
        self.with_coeffs(coeffs)
    }

    pub fn augmentation(&self) -> R::Elem {
        self.coeffs
            .iter()
            .fold(self.ring.zero(), |acc, c| self.ring.add(&acc, c))
    }

    /// Matrix of multiplication by `self` on the basis `G` (column `h` holds
    /// the coefficients of `self * h`).
    pub fn regular_matrix(&self) -> Vec<Vec<R::Elem>> {
        let n = self.group.order();
        let mut m = vec![vec![self.ring.zero(); n]; n];
        for (g, a) in self.coeffs.iter().enumerate() {
            for (h, row) in (0..n).map(|h| (h, self.group.op(g, h))) {
                m[row][h] = a.clone();
            }
        }
        m
    }

    /// Applies a ring map coefficientwise.
    pub fn map_ring<S: ScalarRing>(&self, ring: &S, f: impl Fn(&R::Elem) -> S::Elem) -> GroupRingElement<S> {
        GroupRingElement::from_parts(self.group.clone(), ring.clone(), self.coeffs.iter().map(f).collect())
    }

    fn with_coeffs(&self, coeffs: Vec<R::Elem>) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            ring: self.ring.clone(),
            coeffs,
        }
    }
}

macro_rules! impl_ops {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a, R: ScalarRing> $tr<&'a GroupRingElement<R>> for &'a GroupRingElement<R> {
            type Output = GroupRingElement<R>;
            fn $method(self, rhs: &'a GroupRingElement<R>) -> GroupRingElement<R> {
                self.$inner(rhs)
            }
        }
        impl<R: ScalarRing> $tr for GroupRingElement<R> {
            type Output = GroupRingElement<R>;
            fn $method(self, rhs: GroupRingElement<R>) -> GroupRingElement<R> {
                self.$inner(&rhs)
            }
        }
    };
}

impl_ops!(Add, add, add_ref);
impl_ops!(Sub, sub, sub_ref);
impl_ops!(Mul, mul, mul_ref);

impl<R: ScalarRing> Neg for &GroupRingElement<R> {
    type Output = GroupRingElement<R>;
    fn neg(self) -> GroupRingElement<R> {
        self.neg_ref()
    }
}

impl<R: ScalarRing> Neg for GroupRingElement<R> {
    type Output = GroupRingElement<R>;
    fn neg(self) -> GroupRingElement<R> {
        self.neg_ref()
    }
}

impl IntElement {
    pub fn from_ints(group: &FiniteAbelianGroup, coeffs: &[i64]) -> Self {
        Self::from_i64s(group, &Integers, coeffs)
    }

    pub fn to_rational(&self) -> RatElement {
        self.map_ring(&Rationals, |c| BigRational::from_integer(c.clone()))
    }

    pub fn reduce(&self, l: u64, n: u32) -> ResElement {
        let ring = Residues::new(l, n);
        self.map_ring(&ring.clone(), |c| ring.reduce(c))
    }

    /// Largest power of `l` dividing every coefficient (`None` for zero).
    pub fn content_valuation(&self, l: u64) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| valuation_int(c, l)).min()
    }
}

impl ResElement {
    /// Lift to integer coefficients in `[0, l^N)`.
    pub fn lift(&self) -> IntElement {
        self.map_ring(&Integers, |c| c.clone())
    }
}

impl RatElement {
    pub fn from_ratios(group: &FiniteAbelianGroup, coeffs: &[(i64, i64)]) -> Self {
        Self::from_parts(
            group.clone(),
            Rationals,
            coeffs
                .iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect(),
        )
    }

    pub fn from_integer_element(x: &IntElement) -> Self {
        x.to_rational()
    }

    /// Inverse in `Q[G]`, via the regular representation.
    pub fn inverse(&self) -> Result<RatElement> {
        let m = self.regular_matrix();
        let mut e = vec![BigRational::zero(); self.group().order()];
        e[self.group().identity()] = BigRational::one();
        let sol = solve_columns(&m, &[e], None).ok_or(Error::NotInvertible)?;
        if !sol.nullspace.is_empty() {
            return Err(Error::NotInvertible);
        }
        let coeffs = sol.particular.into_iter().next().unwrap();
        Ok(Self::from_parts(self.group().clone(), Rationals, coeffs))
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    /// True when every coefficient lies in `Z_(l)`.
    pub fn is_l_integral(&self, l: u64) -> bool {
        self.coeffs().iter().all(|c| l_valuation(c, l).is_none_or(|v| v >= 0))
    }

    /// Minimum l-adic valuation of the coefficients (`None` for zero).
    pub fn min_valuation(&self, l: u64) -> Option<i64> {
        self.coeffs().iter().filter_map(|c| l_valuation(c, l)).min()
    }

    /// True iff `self` and its inverse both have l-integral coefficients,
    /// i.e. `self` is a unit of `Z_l[G]`.
    pub fn is_integral_unit(&self, l: u64) -> Result<bool> {
        let inv = self.inverse()?;
        Ok(self.is_l_integral(l) && inv.is_l_integral(l))
    }

    /// Reduction of an l-integral element into `Z/l^n[G]`.
    pub fn to_residues(&self, l: u64, n: u32) -> Result<ResElement> {
        let ring = Residues::new(l, n);
        let m = big_pow(l, n);
        let coeffs = self
            .coeffs()
            .iter()
            .map(|c| rational_mod(c, &m).ok_or(Error::NotIntegral { l }))
            .collect::<Result<Vec<_>>>()?;
        Ok(ResElement::from_parts(self.group().clone(), ring, coeffs))
    }

    /// The element itself when all coefficients are integers.
    pub fn to_integer(&self) -> Option<IntElement> {
        if self.coeffs().iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(self.map_ring(&Integers, |c| c.to_integer()))
    }
}

/// An element `l^{-e} * numerator` of `Q_l[G]` with an l-power denominator.
///
/// Normalized so that `l` does not divide every numerator coefficient when
/// `e > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalGroupRingElement {
    numerator: IntElement,
    denom_exponent: u32,
    l: u64,
}

impl FractionalGroupRingElement {
    pub fn new(numerator: IntElement, denom_exponent: u32, l: u64) -> Self {
        let mut x = FractionalGroupRingElement {
            numerator,
            denom_exponent,
            l,
        };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        let lb = BigInt::from(self.l);
        while self.denom_exponent > 0
            && !self.numerator.is_zero()
            && self.numerator.coeffs().iter().all(|c| c.is_multiple_of(&lb))
        {
            let coeffs = self.numerator.coeffs().iter().map(|c| c / &lb).collect();
            self.numerator = IntElement::from_parts(self.numerator.group().clone(), Integers, coeffs);
            self.denom_exponent -= 1;
        }
        if self.numerator.is_zero() {
            self.denom_exponent = 0;
        }
    }

    /// Writes `x` as `l^{-e} * n` if every denominator is a power of `l`.
    pub fn from_rational(x: &RatElement, l: u64) -> Option<Self> {
        let mut e = 0u32;
        for c in x.coeffs() {
            let d = c.denom();
            let v = valuation_int(d, l).unwrap_or(0) as u32;
            if big_pow(l, v) != *d {
                return None;
            }
            e = e.max(v);
        }
        let scale = BigRational::from_integer(big_pow(l, e));
        let coeffs = x.coeffs().iter().map(|c| (c * &scale).to_integer()).collect();
        Some(Self::new(
            IntElement::from_parts(x.group().clone(), Integers, coeffs),
            e,
            l,
        ))
    }

    pub fn numerator(&self) -> &IntElement {
        &self.numerator
    }

    pub fn denom_exponent(&self) -> u32 {
        self.denom_exponent
    }

    pub fn prime(&self) -> u64 {
        self.l
    }

    pub fn is_integral(&self) -> bool {
        self.denom_exponent == 0
    }

    pub fn to_rational(&self) -> RatElement {
        let d = BigRational::from_integer(big_pow(self.l, self.denom_exponent));
        self.numerator
            .map_ring(&Rationals, |c| BigRational::from_integer(c.clone()) / &d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n)
    }

    #[test]
    fn tau_examples() {
        let g = c(4);
        let x = IntElement::from_ints(&g, &[1, 2, 0, 0]);
        assert_eq!(x.tau(), IntElement::from_ints(&g, &[1, 0, 0, 2]));
        assert_eq!(x.tau().tau(), x);
        let y = IntElement::from_ints(&c(2), &[1, 1]);
        assert_eq!(y.tau(), y);
    }

    #[test]
    fn augmentation_examples() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        assert_eq!(IntElement::norm_element(&g, &Integers).augmentation(), BigInt::from(8));
        let one_minus_g = IntElement::from_ints(&c(3), &[1, -1, 0]);
        assert!(one_minus_g.augmentation().is_zero());
        let p = IntElement::from_ints(&c(2), &[1, 1]) * IntElement::from_ints(&c(2), &[1, -1]);
        assert!(p.is_zero());
    }

    #[test]
    fn integral_units() {
        let g = c(2);
        let x = RatElement::from_ratios(&g, &[(1, 1), (2, 1)]);
        let inv = x.inverse().unwrap();
        // 2x2 solve: (1+2g)(a+bg) = 1 gives a = -1/3, b = 2/3.
        assert_eq!(inv, RatElement::from_ratios(&g, &[(-1, 3), (2, 3)]));
        assert!(x.is_integral_unit(5).unwrap());
        assert!(!x.is_integral_unit(3).unwrap());
        let gen = RatElement::basis(&c(5), &Rationals, 1);
        assert!(gen.is_integral_unit(5).unwrap());
        let l = RatElement::scalar(&c(3), &Rationals, BigRational::from_integer(3.into()));
        assert!(!l.is_integral_unit(3).unwrap());
        let zd = RatElement::from_ratios(&g, &[(1, 1), (1, 1)]);
        assert_eq!(zd.inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn fractional_normalization() {
        let g = c(2);
        let x = RatElement::from_ratios(&g, &[(3, 4), (1, 2)]);
        let f = FractionalGroupRingElement::from_rational(&x, 2).unwrap();
        assert_eq!(f.denom_exponent(), 2);
        assert_eq!(f.to_rational(), x);
        let y = FractionalGroupRingElement::new(IntElement::from_ints(&g, &[4, 8]), 3, 2);
        assert_eq!(y.denom_exponent(), 1);
        assert!(
            FractionalGroupRingElement::from_rational(&RatElement::from_ratios(&g, &[(1, 3), (0, 1)]), 2).is_none()
        );
    }

    #[test]
    fn residues_reduce() {
        let g = c(2);
        let x = RatElement::from_ratios(&g, &[(1, 3), (-1, 1)]);
        let r = x.to_residues(2, 3).unwrap();
        assert_eq!(r.coeffs(), &[BigInt::from(3), BigInt::from(7)]);
        let bad = RatElement::from_ratios(&g, &[(1, 2), (0, 1)]);
        assert_eq!(bad.to_residues(2, 3), Err(Error::NotIntegral { l: 2 }));
    }
}
