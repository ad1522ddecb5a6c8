use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bernoulli::BernoulliTable;
use super::field::AbelianFieldSpec;
use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};
use crate::grouprings::{evaluate_character, CharacterSpec, CyclotomicValue, RatElement, Rationals};

/// `zeta(sigma_a, 1 - n) = -f^{n-1} B_n(<a/f>) / n` with `<a/f>` in `(0, 1]`.
pub fn partial_zeta(f: u64, a: i64, n: usize) -> Result<BigRational> {
    partial_zeta_with(&BernoulliTable::new(n), f, a, n)
}

fn partial_zeta_with(table: &BernoulliTable, f: u64, a: i64, n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("weight {n} must be at least 2")));
    }
    if f == 0 {
        return Err(Error::InvalidArgument("conductor must be positive".into()));
    }
    let r = a.rem_euclid(f as i64) as u64;
    if gcd(r, f) != 1 {
        return Err(Error::BadResidue { a, f });
    }
    let q = if r == 0 {
        BigRational::one()
    } else {
        BigRational::new(r.into(), f.into())
    };
    let scale = BigRational::from_integer(BigInt::from(f).pow(n as u32 - 1)) / BigRational::from_integer(n.into());
    Ok(-scale * table.polynomial(n, &q))
}

/// `Theta_{L/Q}(n)` as an element of `Q[G(L/Q)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaElement {
    pub field: AbelianFieldSpec,
    pub weight: usize,
    pub element: RatElement,
}

/// `sum_{a in (Z/f)^*} zeta(sigma_a, 1 - n) sigma_a^{-1}`, summed over the
/// cosets of `H`.
pub fn theta_element(field: &AbelianFieldSpec, n: usize) -> Result<ThetaElement> {
    let table = BernoulliTable::new(n);
    let g = field.group();
    let mut coeffs = vec![BigRational::zero(); g.order()];
    for a in field.units() {
        let z = partial_zeta_with(&table, field.conductor(), a as i64, n)?;
        coeffs[g.inverse(field.sigma(a as i64)?)] += z;
    }
    Ok(ThetaElement {
        field: field.clone(),
        weight: n,
        element: RatElement::from_parts(g.clone(), Rationals, coeffs),
    })
}

/// `L(1 - n, chi^{-1}) = sum_a chi^{-1}(sigma_a) zeta(sigma_a, 1 - n)`.
pub fn l_value(field: &AbelianFieldSpec, chi: &CharacterSpec, n: usize) -> Result<CyclotomicValue> {
    if chi.group() != field.group() {
        return Err(Error::Mismatch("character is not on the field's Galois group".into()));
    }
    let table = BernoulliTable::new(n);
    let e = field.group().exponent();
    let inv = chi.inverse();
    let mut v = CyclotomicValue::zero(e);
    for a in field.units() {
        let z = partial_zeta_with(&table, field.conductor(), a as i64, n)?;
        v = v.add(&CyclotomicValue::monomial(
            e,
            inv.exponent_at(field.sigma(a as i64)?),
            z,
        ));
    }
    Ok(v)
}

/// `chi(Theta) = L(1 - n, chi^{-1})` for one character, and vanishing when
/// the parity of `chi` differs from that of `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterCheck {
    pub character: Vec<u64>,
    pub odd: bool,
    pub value: CyclotomicValue,
    pub identity: bool,
    pub parity: bool,
}

impl CharacterCheck {
    pub fn passed(&self) -> bool {
        self.identity && self.parity
    }
}

pub fn character_checks(theta: &ThetaElement) -> Result<Vec<CharacterCheck>> {
    let field = &theta.field;
    let minus_one = field.sigma(-1)?;
    CharacterSpec::all(field.group())
        .into_iter()
        .map(|chi| {
            let value = evaluate_character(&theta.element, &chi);
            let identity = value == l_value(field, &chi, theta.weight)?;
            let odd = chi.exponent_at(minus_one) != 0;
            let parity = odd == (theta.weight % 2 == 1) || value.value().iter().all(Zero::is_zero);
            Ok(CharacterCheck {
                character: chi.images().to_vec(),
                odd,
                value,
                identity,
                parity,
            })
        })
        .collect()
}

/// The image of `x` under `sigma_a -> sigma_{a mod g}`.
pub fn project_element(x: &RatElement, from: &AbelianFieldSpec, to: &AbelianFieldSpec) -> Result<RatElement> {
    if x.group() != from.group() {
        return Err(Error::Mismatch("element is not over the source field's group".into()));
    }
    let map = from.projection(to)?;
    let mut coeffs = vec![BigRational::zero(); to.degree()];
    for (i, c) in x.coeffs().iter().enumerate() {
        coeffs[map[i]] += c;
    }
    Ok(RatElement::from_parts(to.group().clone(), Rationals, coeffs))
}

/// Corestriction of `Theta` to a subfield given at the same or a smaller
/// conductor. The truncation set stays that of the source.
pub fn pushforward_theta(theta: &ThetaElement, target: &AbelianFieldSpec) -> Result<ThetaElement> {
    Ok(ThetaElement {
        field: target.clone(),
        weight: theta.weight,
        element: project_element(&theta.element, &theta.field, target)?,
    })
}

/// `1 - p^{n-1} sigma_p^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerFactor {
    pub p: u64,
    pub weight: usize,
    pub element: RatElement,
}

pub fn euler_factor(p: u64, field: &AbelianFieldSpec, n: usize) -> Result<EulerFactor> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let f = field.conductor();
    if f.is_multiple_of(p) {
        return Err(Error::Ramified { p, f });
    }
    let g = field.group();
    let mut coeffs = vec![BigRational::zero(); g.order()];
    coeffs[g.identity()] += BigRational::one();
    let pn = BigInt::from(p).pow(n.saturating_sub(1) as u32);
    coeffs[g.inverse(field.sigma(p as i64)?)] -= BigRational::from_integer(pn);
    Ok(EulerFactor {
        p,
        weight: n,
        element: RatElement::from_parts(g.clone(), Rationals, coeffs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn partial_zetas() {
        assert_eq!(partial_zeta(1, 1, 2).unwrap(), q(-1, 12));
        assert_eq!(partial_zeta(4, 1, 2).unwrap(), q(1, 24));
        assert_eq!(partial_zeta(3, 2, 2).unwrap(), q(1, 12));
        assert!(matches!(partial_zeta(4, 2, 2), Err(Error::BadResidue { .. })));
    }

    #[test]
    fn small_thetas() {
        let t = theta_element(&AbelianFieldSpec::rationals(), 2).unwrap();
        assert_eq!(t.element.coeffs(), &[q(-1, 12)]);
        let k4 = AbelianFieldSpec::cyclotomic(4);
        let t = theta_element(&k4, 2).unwrap();
        assert_eq!(t.element.coeffs(), &[q(1, 24), q(1, 24)]);
        let k3 = AbelianFieldSpec::cyclotomic(3);
        let t = theta_element(&k3, 2).unwrap();
        assert_eq!(t.element.coeffs(), &[q(1, 12), q(1, 12)]);
    }

    #[test]
    fn euler_factors() {
        let e = euler_factor(5, &AbelianFieldSpec::rationals(), 3).unwrap();
        assert_eq!(e.element.coeffs(), &[q(-24, 1)]);
        let k3 = AbelianFieldSpec::cyclotomic(3);
        let e = euler_factor(2, &k3, 2).unwrap();
        let s2 = k3.sigma(2).unwrap();
        assert_eq!(e.element.coeff(s2), &q(-2, 1));
        assert_eq!(e.element.coeff(0), &q(1, 1));
        assert!(matches!(euler_factor(3, &k3, 2), Err(Error::Ramified { .. })));
    }

    #[test]
    fn pushforwards() {
        let k4 = AbelianFieldSpec::cyclotomic(4);
        let t = theta_element(&k4, 2).unwrap();
        let down = pushforward_theta(&t, &AbelianFieldSpec::new(4, &[3]).unwrap()).unwrap();
        assert_eq!(down.element.coeffs(), &[q(1, 12)]);
        assert_eq!(pushforward_theta(&t, &k4).unwrap(), t);

        let t12 = theta_element(&AbelianFieldSpec::cyclotomic(12), 2).unwrap();
        let mid = AbelianFieldSpec::level_quotient(12, 3).unwrap();
        let pushed = pushforward_theta(&t12, &mid).unwrap();
        let k3 = AbelianFieldSpec::cyclotomic(3);
        let low = project_element(&pushed.element, &mid, &k3).unwrap();
        let expected = theta_element(&k3, 2)
            .unwrap()
            .element
            .mul_ref(&euler_factor(2, &k3, 2).unwrap().element);
        assert_eq!(low, expected);
        assert_eq!(low.coeffs(), &[q(-1, 12), q(-1, 12)]);
    }

    #[test]
    fn characters_of_small_thetas() {
        for f in [1, 3, 4, 5, 8] {
            for n in 2..=4 {
                let t = theta_element(&AbelianFieldSpec::cyclotomic(f), n).unwrap();
                let checks = character_checks(&t).unwrap();
                assert_eq!(checks.len(), t.field.degree());
                assert!(checks.iter().all(CharacterCheck::passed));
            }
        }
    }
}
