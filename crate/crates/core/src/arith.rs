//! Small number-theoretic helpers shared across the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// l-adic valuation of an integer; `None` stands for +infinity (n = 0).
pub fn valuation_int(n: &BigInt, l: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let l = BigInt::from(l);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&l);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// l-adic valuation of a rational number; `None` stands for +infinity.
pub fn l_valuation(q: &BigRational, l: u64) -> Option<i64> {
    let num = valuation_int(q.numer(), l)?;
    let den = valuation_int(q.denom(), l).unwrap_or(0);
    Some(num - den)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p)).collect()
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn valuation_u64(mut n: u64, l: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n.is_multiple_of(l) {
        n /= l;
        v += 1;
    }
    v
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Multiplicative order of `a` modulo `m` (requires gcd(a, m) = 1).
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, m);
        k += 1;
    }
    k
}

pub fn big_pow(l: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(l), e as usize)
}

/// Inverse of `a` modulo `m` for big integers, if it exists.
pub fn big_inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Maps an l-integral rational to Z/m, where m is a power of l.
pub fn rational_mod(q: &BigRational, m: &BigInt) -> Option<BigInt> {
    let inv = big_inv_mod(q.denom(), m)?;
    Some((q.numer() * inv).mod_floor(m))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    if n.is_negative() {
        None
    } else {
        n.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn valuations() {
        assert_eq!(l_valuation(&q(9, 2), 3), Some(2));
        assert_eq!(l_valuation(&q(0, 1), 5), None);
        assert_eq!(l_valuation(&q(3, 8), 2), Some(-3));
        assert_eq!(l_valuation(&q(-7, 1), 7), Some(1));
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(inv_mod(3, 8), Some(3));
        assert_eq!(inv_mod(2, 8), None);
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(pow_mod(5, 117, 19), 1);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(rational_mod(&q(1, 3), &BigInt::from(8)), Some(BigInt::from(3)));
        assert_eq!(binomial(13, 2), BigInt::from(78));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("-691/2730"), Some(q(-691, 2730)));
        assert_eq!(format_rational(&q(4, 2)), "2");
        assert_eq!(parse_rational("1/0"), None);
    }
}
