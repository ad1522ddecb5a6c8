//! Brute-force oracles for small instances.

use num_bigint::BigInt;
use std::collections::BTreeSet;

use super::concrete::ConcreteModule;
use crate::error::{Error, Result};

/// Largest enumeration the oracles accept.
pub const ORACLE_LIMIT: u128 = 1 << 20;

fn checked_count(l: u64, exponent: u64) -> Result<u128> {
    let mut c: u128 = 1;
    for _ in 0..exponent {
        c = c.saturating_mul(l as u128);
        if c > ORACLE_LIMIT {
            return Err(Error::TooLarge { count: c });
        }
    }
    Ok(c)
}

/// Mixed-radix counter over `(Z/m)^len`.
fn next_vector(v: &mut [u64], m: u64) -> bool {
    for x in v.iter_mut() {
        *x += 1;
        if *x < m {
            return true;
        }
        *x = 0;
    }
    false
}

/// All `r in Z/l^e[G]` with `r M = 0`, by exhaustive search. Requires
/// `e >= e_max` so that the condition is well defined on residues.
pub fn oracle_annihilator(m: &ConcreteModule, e: u32) -> Result<BTreeSet<Vec<u64>>> {
    if e < m.exponent() {
        return Err(Error::PrecisionTooLow {
            have: e,
            need: m.exponent(),
        });
    }
    let n = m.group().order();
    checked_count(m.prime(), n as u64 * u64::from(e))?;
    let modulus = m.prime().pow(e);
    let acts = m.all_actions();
    let k = m.num_factors();
    let mut out = BTreeSet::new();
    let mut c = vec![0u64; n];
    loop {
        let kills = (0..k).all(|j| {
            (0..k).all(|r| {
                let mr = m.prime().pow(m.factors()[r]) as u128;
                let s = c
                    .iter()
                    .zip(&acts)
                    .fold(0u128, |acc, (&x, a)| (acc + x as u128 * a[r][j] as u128) % mr);
                s == 0
            })
        });
        if kills {
            out.insert(c.clone());
        }
        if !next_vector(&mut c, modulus) {
            break;
        }
    }
    Ok(out)
}

/// The row span of `rows` in `(Z/l^e)^ncols`, by closure under addition.
pub fn enumerate_span(rows: &[Vec<BigInt>], ncols: usize, l: u64, e: u32) -> Result<BTreeSet<Vec<u64>>> {
    checked_count(l, ncols as u64 * u64::from(e))?;
    let modulus = l.pow(e);
    let gens: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let m = BigInt::from(modulus);
                    let v = ((x % &m) + &m) % &m;
                    u64::try_from(v).expect("residue fits")
                })
                .collect()
        })
        .collect();
    let mut span = BTreeSet::new();
    span.insert(vec![0u64; ncols]);
    let mut frontier = vec![vec![0u64; ncols]];
    while let Some(v) = frontier.pop() {
        for g in &gens {
            let w: Vec<u64> = v.iter().zip(g).map(|(a, b)| (a + b) % modulus).collect();
            if span.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    Ok(span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprings::FiniteAbelianGroup;

    #[test]
    fn examples() {
        let c2 = FiniteAbelianGroup::cyclic(2);
        let m = ConcreteModule::cyclic_scalar(2, &c2, 2, &[3]).unwrap();
        let ann = oracle_annihilator(&m, 2).unwrap();
        // r = a + b g kills Z/4 with g = 3 iff a + 3b = 0 mod 4.
        let expect: BTreeSet<Vec<u64>> = (0..4)
            .flat_map(|a| (0..4).map(move |b| vec![a, b]))
            .filter(|v| (v[0] + 3 * v[1]) % 4 == 0)
            .collect();
        assert_eq!(ann, expect);
        let z = oracle_annihilator(&ConcreteModule::zero(3, &c2), 1).unwrap();
        assert_eq!(z.len(), 9);
        let t = FiniteAbelianGroup::trivial();
        let f = oracle_annihilator(&ConcreteModule::trivial_cyclic(5, &t, 1), 2).unwrap();
        assert_eq!(
            f.into_iter().collect::<Vec<_>>(),
            (0..5).map(|i| vec![5 * i]).collect::<Vec<_>>()
        );
        assert!(matches!(
            oracle_annihilator(
                &ConcreteModule::zero(3, &FiniteAbelianGroup::new(vec![3, 3]).unwrap()),
                3
            ),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn span_enumeration() {
        let rows = vec![
            vec![BigInt::from(3), BigInt::from(3)],
            vec![BigInt::from(0), BigInt::from(3)],
        ];
        assert_eq!(enumerate_span(&rows, 2, 3, 2).unwrap().len(), 9);
    }
}
