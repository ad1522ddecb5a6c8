use std::fmt;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::big_pow;

/// A commutative coefficient ring, passed around as a value so that
/// residue rings can carry their modulus.
pub trait ScalarRing: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn domain(&self) -> ScalarDomain;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }
}

/// Tag naming a scalar domain, as it appears in the text formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarDomain {
    Integer,
    Residue { l: u64, n: u32 },
    Rational,
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::Integer => write!(f, "int"),
            ScalarDomain::Residue { l, n } => write!(f, "mod:{l}^{n}"),
            ScalarDomain::Rational => write!(f, "rat"),
        }
    }
}

impl ScalarDomain {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "int" => Some(ScalarDomain::Integer),
            "rat" => Some(ScalarDomain::Rational),
            _ => {
                let rest = s.strip_prefix("mod:")?;
                let (l, n) = rest.split_once('^')?;
                let l: u64 = l.parse().ok()?;
                let n: u32 = n.parse().ok()?;
                if l < 2 || !crate::arith::is_prime(l) || n == 0 {
                    return None;
                }
                Some(ScalarDomain::Residue { l, n })
            }
        }
    }
}

/// Arbitrary-precision integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

/// Exact rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

/// The residue ring Z/l^N, elements kept in `[0, l^N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residues {
    l: u64,
    n: u32,
    modulus: BigInt,
}

impl Residues {
    pub fn new(l: u64, n: u32) -> Self {
        Residues {
            l,
            n,
            modulus: big_pow(l, n),
        }
    }

    pub fn prime(&self) -> u64 {
        self.l
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.modulus)
    }
}

impl ScalarRing for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn domain(&self) -> ScalarDomain {
        ScalarDomain::Integer
    }
}

impl ScalarRing for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn domain(&self) -> ScalarDomain {
        ScalarDomain::Rational
    }
}

impl ScalarRing for Residues {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        self.reduce(&BigInt::one())
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        self.reduce(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a - b))
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&(-a))
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn domain(&self) -> ScalarDomain {
        ScalarDomain::Residue { l: self.l, n: self.n }
    }
}
