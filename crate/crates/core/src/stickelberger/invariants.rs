use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::field::AbelianFieldSpec;
use super::theta::theta_element;
use crate::arith::{factorize, gcd, is_prime, lcm, pow_mod, primes_up_to};
use crate::error::{Error, Result};
use crate::grouprings::{IntElement, Integers, RatElement};
use crate::modules::{kills, ConcreteModule};

/// Largest prime `P` tried for the `sigma_P - P^{n+1}` generators.
pub const GENERATOR_BOUND: u64 = 50;

/// `k_p`: the largest `k` such that `{a : a mod f in H}` has image of
/// exponent dividing `n` in `(Z/p^k)^*`.
fn local_exponent(field: &AbelianFieldSpec, n: u64, p: u64) -> u32 {
    let f = field.conductor();
    let mut k = 0u32;
    loop {
        let pk = p.pow(k + 1);
        let m = lcm(f, pk);
        let ok = (1..=m)
            .filter(|&a| gcd(a, m) == 1 && field.in_subgroup(a % f))
            .map(|a| a % pk)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .all(|x| pow_mod(x, n, pk) == 1 % pk);
        if !ok || pk.checked_mul(p).and_then(|x| x.checked_mul(f)).is_none() {
            return k;
        }
        k += 1;
    }
}

/// `w_n(L)`, or its `l`-part when `l` is given.
///
/// Only primes with `(p - 1) | n` or `p | f` can contribute.
pub fn w_invariant(field: &AbelianFieldSpec, n: u64, l: Option<u64>) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if let Some(l) = l {
        if !is_prime(l) {
            return Err(Error::InvalidArgument(format!("{l} is not prime")));
        }
        return Ok(BigInt::from(l).pow(local_exponent(field, n, l)));
    }
    let mut candidates: BTreeSet<u64> = primes_up_to(n + 1)
        .into_iter()
        .filter(|p| n.is_multiple_of(p - 1))
        .collect();
    candidates.extend(factorize(field.conductor()).into_iter().map(|(p, _)| p));
    Ok(candidates
        .into_iter()
        .map(|p| BigInt::from(p).pow(local_exponent(field, n, p)))
        .product())
}

/// `H^0(O_L, Q_l/Z_l(n+1))` as `Z/l^a`, `a = v_l(w_{n+1}(L))`, with
/// `sigma_b` acting by `b^{n+1}` for a lift `b` prime to `l f`.
pub fn h0_model(field: &AbelianFieldSpec, n: u64, l: u64) -> Result<ConcreteModule> {
    let a = local_exponent_checked(field, n + 1, l)?;
    let g = field.group();
    if a == 0 {
        return Ok(ConcreteModule::zero(l, g));
    }
    let la = l.pow(a);
    let f = field.conductor();
    let mut scalars = Vec::with_capacity(g.rank());
    for i in 0..g.rank() {
        let gen = g.generator(i);
        let mut values = BTreeSet::new();
        for r in field.units() {
            if field.sigma(r as i64)? != gen {
                continue;
            }
            for j in 0..la {
                let b = r + j * f;
                if gcd(b, l) == 1 {
                    values.insert(pow_mod(b % la, n + 1, la));
                }
            }
        }
        if values.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "action of generator {i} depends on the lift: {values:?}"
            )));
        }
        scalars.push(values.into_iter().next().expect("one value"));
    }
    ConcreteModule::cyclic_scalar(l, g, a, &scalars)
}

fn local_exponent_checked(field: &AbelianFieldSpec, n: u64, l: u64) -> Result<u32> {
    if !is_prime(l) {
        return Err(Error::InvalidArgument(format!("{l} is not prime")));
    }
    Ok(local_exponent(field, n, l))
}

/// `sigma_P - P^{n+1}` for primes `P <= bound` not dividing `l f`.
pub fn annihilator_generators(field: &AbelianFieldSpec, n: u64, l: u64, bound: u64) -> Vec<(u64, IntElement)> {
    let g = field.group();
    let f = field.conductor();
    primes_up_to(bound)
        .into_iter()
        .filter(|&p| p != l && !f.is_multiple_of(p))
        .map(|p| {
            let sigma = field.sigma(p as i64).expect("unramified");
            let x = IntElement::basis(g, &Integers, sigma).sub_ref(&IntElement::scalar(
                g,
                &Integers,
                BigInt::from(p).pow(n as u32 + 1),
            ));
            (p, x)
        })
        .collect()
}

/// One annihilator generator times `Theta`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorCheck {
    pub p: u64,
    pub generator: IntElement,
    pub product: RatElement,
    pub integral: bool,
    pub kills_h0: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoatesSinnottReport {
    pub conductor: u64,
    pub n: u64,
    pub l: u64,
    pub b: u64,
    /// `l` does not divide `b`. Otherwise the `H^0` check on
    /// `b^{n+1} - sigma_b` is skipped and only integrality is tested.
    pub b_coprime_to_l: bool,
    pub theta: RatElement,
    /// `w_{n+1}(Q) (b^{n+1} - sigma_b) Theta(n+1)`.
    pub element: RatElement,
    pub element_integral: bool,
    pub generators: Vec<GeneratorCheck>,
    /// `v_l(w_{n+1}(L))`.
    pub h0_exponent: u32,
    pub passed: bool,
}

/// l-integrality of `w_{n+1}(Q)(b^{n+1} - sigma_b)Theta(n+1)` and of
/// `(sigma_P - P^{n+1})Theta(n+1)` for unramified `P`, plus a check that
/// these generators annihilate the explicit `H^0`. The hypothesis
/// `(b, fl) = 1` is recorded rather than enforced in `l`.
pub fn coates_sinnott_check(field: &AbelianFieldSpec, n: u64, l: u64, b: u64) -> Result<CoatesSinnottReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let f = field.conductor();
    if gcd(b, f) != 1 {
        return Err(Error::BadB { b, modulus: f });
    }
    let b_coprime_to_l = !b.is_multiple_of(l);
    let g = field.group();
    let theta = theta_element(field, n as usize + 1)?.element;
    let w = w_invariant(&AbelianFieldSpec::rationals(), n + 1, None)?;
    let twist = IntElement::scalar(g, &Integers, BigInt::from(b).pow(n as u32 + 1)).sub_ref(&IntElement::basis(
        g,
        &Integers,
        field.sigma(b as i64)?,
    ));
    let element = twist
        .to_rational()
        .mul_ref(&theta)
        .scale(&num_rational::BigRational::from_integer(w));
    let element_integral = element.is_l_integral(l);
    let h0 = h0_model(field, n, l)?;
    let mut passed = element_integral && (!b_coprime_to_l || kills(&h0, &twist));
    let mut generators = Vec::new();
    for (p, x) in annihilator_generators(field, n, l, GENERATOR_BOUND) {
        let product = x.to_rational().mul_ref(&theta);
        let integral = product.is_l_integral(l);
        let kills_h0 = kills(&h0, &x);
        passed &= integral && kills_h0;
        generators.push(GeneratorCheck {
            p,
            generator: x,
            product,
            integral,
            kills_h0,
        });
    }
    Ok(CoatesSinnottReport {
        conductor: f,
        n,
        l,
        b,
        b_coprime_to_l,
        theta,
        element,
        element_integral,
        generators,
        h0_exponent: h0.exponent(),
        passed,
    })
}
