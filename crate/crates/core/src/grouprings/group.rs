use std::fmt;

use crate::error::{Error, Result};

/// A finite abelian group in invariant-factor form `C_{d_1} x ... x C_{d_k}`
/// with `d_1 | d_2 | ... | d_k`.
///
/// Elements are the exponent tuples `(e_1, ..., e_k)`, `0 <= e_i < d_i`,
/// indexed in mixed radix: `index(e) = sum e_i * prod_{j<i} d_j`. Every
/// coefficient vector, matrix block and file in the crate uses this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    order: usize,
}

/// The splitting `G = H x G_1` of a group into its prime-to-l part `H` and
/// Sylow l-subgroup `G_1`, per invariant factor `d_i = l^{a_i} m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowSplit {
    pub l: u64,
    /// `a_i` for each invariant factor.
    pub l_exponents: Vec<u32>,
    /// `m_i` for each invariant factor.
    pub prime_to_l: Vec<u64>,
}

impl SylowSplit {
    pub fn sylow_order(&self) -> u64 {
        self.l_exponents.iter().map(|&a| self.l.pow(a)).product()
    }

    pub fn sylow_is_cyclic(&self) -> bool {
        self.l_exponents.iter().filter(|&&a| a > 0).count() <= 1
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        for (i, &d) in factors.iter().enumerate() {
            if d < 2 {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {d} at position {i} must be at least 2"
                )));
            }
            if i > 0 && d % factors[i - 1] != 0 {
                return Err(Error::InvalidGroup(format!(
                    "invariant factors must form a divisibility chain, {} does not divide {d}",
                    factors[i - 1]
                )));
            }
        }
        let order = factors.iter().product::<u64>() as usize;
        Ok(FiniteAbelianGroup { factors, order })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            factors: Vec::new(),
            order: 1,
        }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FiniteAbelianGroup {
                factors: vec![n],
                order: n as usize,
            }
        }
    }

    /// Parses descriptors such as `C3`, `C2xC4`, `C3xC3`; `1`, `C1` and
    /// `trivial` give the trivial group.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidGroup("empty group descriptor".into()));
        }
        if s == "1" || s.eq_ignore_ascii_case("trivial") {
            return Ok(Self::trivial());
        }
        let mut factors = Vec::new();
        for part in s.split(['x', 'X', '*']) {
            let part = part.trim();
            let digits = part
                .strip_prefix('C')
                .or_else(|| part.strip_prefix('c'))
                .ok_or_else(|| Error::InvalidGroup(format!("bad factor `{part}` in `{s}`")))?;
            let d: u64 = digits
                .parse()
                .map_err(|_| Error::InvalidGroup(format!("bad factor `{part}` in `{s}`")))?;
            if d == 0 {
                return Err(Error::InvalidGroup(format!("bad factor `{part}` in `{s}`")));
            }
            if d > 1 {
                factors.push(d);
            }
        }
        Self::new(factors)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// Number of invariant factors (the number of canonical generators).
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn exponents_of(&self, mut index: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.factors.len());
        for &d in &self.factors {
            out.push((index % d as usize) as u64);
            index /= d as usize;
        }
        out
    }

    /// Index of the element with the given exponents (reduced modulo each `d_i`).
    pub fn index_of(&self, exps: &[i64]) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (i, &d) in self.factors.iter().enumerate() {
            let e = exps.get(i).copied().unwrap_or(0).rem_euclid(d as i64) as usize;
            idx += e * stride;
            stride *= d as usize;
        }
        idx
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        let (mut a, mut b) = (a, b);
        for &d in &self.factors {
            let d = d as usize;
            idx += ((a % d + b % d) % d) * stride;
            a /= d;
            b /= d;
            stride *= d;
        }
        idx
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        let mut a = a;
        for &d in &self.factors {
            let d = d as usize;
            idx += ((d - a % d) % d) * stride;
            a /= d;
            stride *= d;
        }
        idx
    }

    pub fn power(&self, a: usize, k: i64) -> usize {
        let exps: Vec<i64> = self.exponents_of(a).into_iter().map(|e| e as i64 * k).collect();
        self.index_of(&exps)
    }

    /// Index of the i-th canonical generator.
    pub fn generator(&self, i: usize) -> usize {
        let mut e = vec![0i64; self.rank()];
        e[i] = 1;
        self.index_of(&e)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.exponents_of(a)
            .iter()
            .zip(&self.factors)
            .map(|(&e, &d)| d / num_integer::gcd(e, d))
            .fold(1, num_integer::lcm)
    }

    pub fn sylow(&self, l: u64) -> SylowSplit {
        let mut l_exponents = Vec::new();
        let mut prime_to_l = Vec::new();
        for &d in &self.factors {
            let mut m = d;
            let mut a = 0;
            while m % l == 0 {
                m /= l;
                a += 1;
            }
            l_exponents.push(a);
            prime_to_l.push(m);
        }
        SylowSplit {
            l,
            l_exponents,
            prime_to_l,
        }
    }

    pub fn sylow_is_cyclic(&self, l: u64) -> bool {
        self.sylow(l).sylow_is_cyclic()
    }

    /// Human-readable label such as `g0^2*g1`.
    pub fn label(&self, a: usize) -> String {
        let parts: Vec<String> = self
            .exponents_of(a)
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { format!("g{i}") } else { format!("g{i}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.factors.iter().map(|d| format!("C{d}")).collect();
        write!(f, "{}", s.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_order() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.exponents_of(5), vec![1, 2]);
        assert_eq!(g.index_of(&[1, 2]), 5);
        for a in 0..8 {
            assert_eq!(g.op(a, g.inverse(a)), 0);
            assert_eq!(
                g.index_of(&g.exponents_of(a).iter().map(|&e| e as i64).collect::<Vec<_>>()),
                a
            );
        }
        assert_eq!(g.element_order(g.generator(1)), 4);
    }

    #[test]
    fn parsing() {
        assert_eq!(FiniteAbelianGroup::parse("C3xC3").unwrap().order(), 9);
        assert!(FiniteAbelianGroup::parse("1").unwrap().is_trivial());
        assert!(FiniteAbelianGroup::parse("C2xC3").is_err());
        assert!(FiniteAbelianGroup::parse("D4").is_err());
        assert!(FiniteAbelianGroup::parse("").is_err());
    }

    #[test]
    fn sylow_split() {
        let g = FiniteAbelianGroup::new(vec![6]).unwrap();
        let s = g.sylow(2);
        assert_eq!(s.l_exponents, vec![1]);
        assert_eq!(s.prime_to_l, vec![3]);
        assert!(s.sylow_is_cyclic());
        assert!(!FiniteAbelianGroup::new(vec![3, 3]).unwrap().sylow_is_cyclic(3));
        assert!(FiniteAbelianGroup::new(vec![2, 2]).unwrap().sylow_is_cyclic(3));
    }
}
