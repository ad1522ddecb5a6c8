use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::RatElement;
use super::group::FiniteAbelianGroup;
use crate::arith::format_rational;
use crate::error::{Error, Result};

/// A one-dimensional character `chi(g_i) = zeta_e^{k_i}`, where `e` is the
/// exponent of the group and `g_i` the canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterSpec {
    group: FiniteAbelianGroup,
    images: Vec<u64>,
}

impl CharacterSpec {
    /// Requires `k_i * d_i = 0 mod e` for each generator of order `d_i`.
    pub fn new(group: FiniteAbelianGroup, images: Vec<u64>) -> Result<Self> {
        if images.len() != group.rank() {
            return Err(Error::BadSize(format!(
                "character needs {} generator images, found {}",
                group.rank(),
                images.len()
            )));
        }
        let e = group.exponent();
        for (i, (&k, &d)) in images.iter().zip(group.invariant_factors()).enumerate() {
            if !((k % e) * d).is_multiple_of(e) {
                return Err(Error::InvalidArgument(format!(
                    "image exponent {k} of generator {i} is not killed by its order {d}"
                )));
            }
        }
        let images = images.into_iter().map(|k| k % e).collect();
        Ok(CharacterSpec { group, images })
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        CharacterSpec {
            images: vec![0; group.rank()],
            group: group.clone(),
        }
    }

    /// Every character of the group, in mixed-radix order of the images.
    pub fn all(group: &FiniteAbelianGroup) -> Vec<CharacterSpec> {
        let e = group.exponent();
        (0..group.order())
            .map(|idx| {
                let images = group
                    .exponents_of(idx)
                    .iter()
                    .zip(group.invariant_factors())
                    .map(|(&j, &d)| j * (e / d))
                    .collect();
                CharacterSpec {
                    group: group.clone(),
                    images,
                }
            })
            .collect()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn images(&self) -> &[u64] {
        &self.images
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&k| k == 0)
    }

    pub fn inverse(&self) -> Self {
        let e = self.group.exponent();
        CharacterSpec {
            group: self.group.clone(),
            images: self.images.iter().map(|&k| (e - k) % e).collect(),
        }
    }

    /// The exponent `k` with `chi(g) = zeta_e^k`.
    pub fn exponent_at(&self, g: usize) -> u64 {
        let e = self.group.exponent();
        self.group
            .exponents_of(g)
            .iter()
            .zip(&self.images)
            .map(|(&a, &k)| a * k % e)
            .sum::<u64>()
            % e
    }

    /// Order of `chi` as an element of the character group.
    pub fn order(&self) -> u64 {
        let e = self.group.exponent();
        self.images
            .iter()
            .map(|&k| e / num_integer::gcd(k, e))
            .fold(1, num_integer::lcm)
    }
}

/// An element of `Q[x]/(x^e - 1)`, coefficients of `1, x, ..., x^{e-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicValue {
    coeffs: Vec<BigRational>,
}

impl CyclotomicValue {
    pub fn zero(e: u64) -> Self {
        CyclotomicValue {
            coeffs: vec![BigRational::zero(); e.max(1) as usize],
        }
    }

    pub fn constant(e: u64, c: BigRational) -> Self {
        let mut v = Self::zero(e);
        v.coeffs[0] = c;
        v
    }

    /// `c * x^k`.
    pub fn monomial(e: u64, k: u64, c: BigRational) -> Self {
        let mut v = Self::zero(e);
        let n = v.coeffs.len() as u64;
        v.coeffs[(k % n) as usize] = c;
        v
    }

    /// Reduces an arbitrary polynomial modulo `x^e - 1`.
    pub fn from_poly(e: u64, poly: &[BigRational]) -> Self {
        let mut v = Self::zero(e);
        let n = v.coeffs.len();
        for (i, c) in poly.iter().enumerate() {
            v.coeffs[i % n] += c;
        }
        v
    }

    pub fn modulus_degree(&self) -> u64 {
        self.coeffs.len() as u64
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "modulus mismatch");
        CyclotomicValue {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CyclotomicValue {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "modulus mismatch");
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + j) % n] += a * b;
                }
            }
        }
        CyclotomicValue { coeffs: out }
    }

    /// The value itself: `x` sent to a primitive `e`-th root of unity.
    pub fn value(&self) -> Vec<BigRational> {
        self.component(self.modulus_degree())
    }

    /// Image in `Q[x]/Phi_d(x)` for a divisor `d` of `e`, as a polynomial of
    /// degree below `phi(d)`. This is the component of the value at the
    /// primitive d-th roots of unity.
    pub fn component(&self, d: u64) -> Vec<BigRational> {
        assert_eq!(self.modulus_degree() % d, 0, "{d} must divide the modulus degree");
        let phi: Vec<BigRational> = cyclotomic_polynomial(d)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let mut r = self.coeffs.clone();
        let deg = phi.len() - 1;
        for i in (deg..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, p) in phi.iter().enumerate() {
                r[i - deg + j] -= &c * p;
            }
        }
        r.truncate(deg);
        r
    }
}

impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}*x", format_rational(c)),
                _ => format!("{}*x^{i}", format_rational(c)),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Integer coefficients of the cyclotomic polynomial `Phi_d`, constant term
/// first.
pub fn cyclotomic_polynomial(d: u64) -> Vec<BigInt> {
    // x^d - 1 divided by Phi_k for every proper divisor k of d.
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    for k in (1..d).filter(|k| d.is_multiple_of(*k)) {
        num = exact_divide(&num, &cyclotomic_polynomial(k));
    }
    num
}

fn exact_divide(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - dn];
    for i in (0..q.len()).rev() {
        let c = &r[i + dn] / &den[dn];
        for (j, b) in den.iter().enumerate() {
            r[i + j] -= &c * b;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

/// The ring map `Q[G] -> Q[x]/(x^e - 1)` sending `g` to `x^{k(g)}`.
pub fn evaluate_character(x: &RatElement, chi: &CharacterSpec) -> CyclotomicValue {
    assert_eq!(x.group(), chi.group(), "character of a different group");
    let e = chi.group().exponent();
    let mut v = CyclotomicValue::zero(e);
    for (g, c) in x.coeffs().iter().enumerate() {
        if !c.is_zero() {
            v.coeffs[chi.exponent_at(g) as usize] += c;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn validity_rule() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        assert!(CharacterSpec::new(g.clone(), vec![2, 1]).is_ok());
        assert!(CharacterSpec::new(g.clone(), vec![1, 1]).is_err());
        assert_eq!(CharacterSpec::all(&g).len(), 8);
    }

    #[test]
    fn substitution_examples() {
        let g = FiniteAbelianGroup::cyclic(4);
        let chi = CharacterSpec::new(g.clone(), vec![1]).unwrap();
        let x = RatElement::from_ratios(&g, &[(1, 1), (0, 1), (2, 1), (0, 1)]);
        let v = evaluate_character(&x, &chi);
        assert_eq!(v.coeffs(), &[q(1, 1), q(0, 1), q(2, 1), q(0, 1)]);

        let c2 = FiniteAbelianGroup::cyclic(2);
        let sign = CharacterSpec::new(c2.clone(), vec![1]).unwrap();
        let y = RatElement::from_ratios(&c2, &[(3, 1), (1, 1)]);
        let v = evaluate_character(&y, &sign);
        assert_eq!(v.component(2), vec![q(2, 1)]);
        assert_eq!(v.component(1), vec![q(4, 1)]);

        let triv = CharacterSpec::trivial(&g);
        assert_eq!(evaluate_character(&x, &triv).component(1), vec![q(3, 1)]);
    }

    #[test]
    fn cyclotomic_polynomials() {
        let p = |d| {
            cyclotomic_polynomial(d)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        assert_eq!(p(1), "-1,1");
        assert_eq!(p(4), "1,0,1");
        assert_eq!(p(6), "1,-1,1");
        assert_eq!(p(12), "1,0,-1,0,1");
    }
}
