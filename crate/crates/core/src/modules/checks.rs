use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use super::concrete::ConcreteModule;
use super::ideal::{annihilator, fitting_ideal, fitting_precision, IdealHandle};
use super::oracle::{enumerate_span, oracle_annihilator};
use super::presented::{presentation_from_concrete, PresentedModule};
use crate::arith::big_pow;
use crate::error::{Error, Result};
use crate::grouprings::{FiniteAbelianGroup, IntElement, Integers};
use crate::linalg::{subsets, IntGrMatrix};

/// Largest number of residues enumerated by [`oracle_agreement`].
pub const ORACLE_CHECK_LIMIT: u64 = 1 << 16;

const MAX_ATTEMPTS: usize = 10_000;

fn random_small(g: &FiniteAbelianGroup, rng: &mut impl Rng) -> IntElement {
    let c: Vec<i64> = (0..g.order()).map(|_| rng.gen_range(-1..=1)).collect();
    IntElement::from_ints(g, &c)
}

/// A random presentation whose module is nonzero of order at most
/// `l^max_log_order`: relations `l^E x_j`, some twisted relations
/// `(g_i - c) x_j + y x_k`, and a few random rows.
pub fn random_presented_module(
    group: &FiniteAbelianGroup,
    l: u64,
    max_log_order: u32,
    rng: &mut impl Rng,
) -> Result<(PresentedModule, ConcreteModule)> {
    let zero = IntElement::zero(group, &Integers);
    for _ in 0..MAX_ATTEMPTS {
        let b = rng.gen_range(1..=2usize);
        let e = rng.gen_range(1..=2u32);
        let mut rows: Vec<Vec<IntElement>> = Vec::new();
        for j in 0..b {
            let mut row = vec![zero.clone(); b];
            row[j] = IntElement::scalar(group, &Integers, big_pow(l, e));
            rows.push(row);
        }
        for i in 0..group.rank() {
            for j in 0..b {
                if rng.gen_bool(0.3) {
                    continue;
                }
                let c = rng.gen_range(-2..=3i64);
                let mut row = vec![zero.clone(); b];
                row[j] = IntElement::basis(group, &Integers, group.generator(i)).sub_ref(&IntElement::scalar(
                    group,
                    &Integers,
                    BigInt::from(c),
                ));
                if b > 1 && rng.gen_bool(0.5) {
                    row[(j + 1) % b] = random_small(group, rng);
                }
                rows.push(row);
            }
        }
        for _ in 0..rng.gen_range(0..=1) {
            rows.push((0..b).map(|_| random_small(group, rng)).collect());
        }
        let pm = PresentedModule::new(l, IntGrMatrix::from_int_rows(group, rows)?)?;
        match pm.realize() {
            Ok(m) if !m.is_zero() && m.log_order() <= max_log_order => return Ok((pm, m)),
            Ok(_) | Err(Error::NotFinite) | Err(Error::NotLPower { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidArgument(format!(
        "no module of order at most {l}^{max_log_order} found over {group}"
    )))
}

/// Common precision for comparing the Fitting ideals of several
/// presentations and annihilators.
fn shared_precision(pms: &[&PresentedModule], exponent: u32, guard: u32) -> u32 {
    pms.iter()
        .map(|pm| fitting_precision(pm.num_generators(), exponent, guard))
        .max()
        .unwrap_or(1)
        .max(exponent + guard)
}

/// `F(M) <= ann(M)`.
pub fn fitting_in_annihilator(pm: &PresentedModule, guard: u32) -> Result<bool> {
    let m = pm.realize()?;
    let n = shared_precision(&[pm], m.exponent(), guard);
    annihilator(&m, n, guard)?.contains_ideal(&fitting_ideal(pm, n, guard)?)
}

/// `ann(M)^b <= F(M)` for a presentation on `b` generators, tested on all
/// products of `b` module generators of `ann(M)`.
pub fn annihilator_power_in_fitting(pm: &PresentedModule, guard: u32) -> Result<bool> {
    let m = pm.realize()?;
    let n = shared_precision(&[pm], m.exponent(), guard);
    let fit = fitting_ideal(pm, n, guard)?;
    let gens = annihilator(&m, n, guard)?.module_generators();
    let b = pm.num_generators();
    for idx in multisets(gens.len(), b) {
        let mut x = IntElement::one(pm.group(), &Integers);
        for i in idx {
            x = x.mul_ref(&gens[i]);
        }
        if !fit.contains(&x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    // k-subsets of n + k - 1 shifted down give the multisets.
    subsets(n + k - 1, k)
        .into_iter()
        .map(|s| s.iter().enumerate().map(|(i, &x)| x - i).collect())
        .collect()
}

/// The canonical Fitting basis is unchanged by appending `Z[G]`-combinations
/// of the relations and permuting generators.
pub fn presentation_independence(pm: &PresentedModule, guard: u32, rng: &mut impl Rng) -> Result<bool> {
    let g = pm.group();
    let a = pm.num_relations();
    let mut combos = IntGrMatrix::zeros(g, &Integers, rng.gen_range(1..=2), a);
    for i in 0..combos.rows() {
        for j in 0..a {
            combos.set(i, j, random_small(g, rng));
        }
    }
    let mut perm: Vec<usize> = (0..pm.num_generators()).collect();
    perm.shuffle(rng);
    let other = pm.with_relations(&combos.mul(pm.matrix()))?.permute_generators(&perm)?;
    let m = pm.realize()?;
    let n = shared_precision(&[pm, &other], m.exponent(), guard);
    let (f1, f2) = (fitting_ideal(pm, n, guard)?, fitting_ideal(&other, n, guard)?);
    Ok(f1.basis().rows() == f2.basis().rows())
}

fn random_element_of(m: &ConcreteModule, rng: &mut impl Rng) -> Vec<u64> {
    m.factors()
        .iter()
        .map(|&e| rng.gen_range(0..m.prime().pow(e)))
        .collect()
}

/// `F(M) <= F(M / N)` for `N` generated by one or two random elements.
pub fn surjection_monotonicity(m: &ConcreteModule, guard: u32, rng: &mut impl Rng) -> Result<bool> {
    let elems: Vec<Vec<u64>> = (0..rng.gen_range(1..=2)).map(|_| random_element_of(m, rng)).collect();
    let q = m.quotient(&elems)?;
    let (p1, p2) = (presentation_from_concrete(m), presentation_from_concrete(&q));
    let n = shared_precision(&[&p1, &p2], m.exponent(), guard);
    let f1 = fitting_ideal(&p1, n, guard)?;
    let f2 = if q.is_zero() {
        IdealHandle::unit(m.group(), m.prime(), n, guard)
    } else {
        fitting_ideal(&p2, n, guard)?
    };
    f2.contains_ideal(&f1)
}

/// Outcome of [`duality`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualityCheck {
    pub annihilator: bool,
    /// Present when the Sylow l-subgroup is cyclic.
    pub fitting: Option<bool>,
}

impl DualityCheck {
    pub fn passed(&self) -> bool {
        self.annihilator && self.fitting.unwrap_or(true)
    }
}

/// `ann(M^#) = tau(ann(M))`, and `F(M^#) = tau(F(M))` when the Sylow
/// l-subgroup of `G` is cyclic.
pub fn duality(m: &ConcreteModule, guard: u32) -> Result<DualityCheck> {
    let d = m.pontryagin_dual();
    let (p1, p2) = (presentation_from_concrete(m), presentation_from_concrete(&d));
    let n = shared_precision(&[&p1, &p2], m.exponent(), guard);
    let annihilator_ok = annihilator(&d, n, guard)?.same_ideal(&annihilator(m, n, guard)?.tau())?;
    let fitting = if m.group().sylow_is_cyclic(m.prime()) {
        let (f1, f2) = (fitting_ideal(&p1, n, guard)?, fitting_ideal(&p2, n, guard)?);
        Some(f2.same_ideal(&f1.tau())?)
    } else {
        None
    };
    Ok(DualityCheck {
        annihilator: annihilator_ok,
        fitting,
    })
}

/// `annihilator()` against exhaustive search modulo `l^e`, `e = e_max`, and
/// ideal membership against span enumeration on every residue. `None` when
/// `l^{e|G|}` exceeds [`ORACLE_CHECK_LIMIT`].
pub fn oracle_agreement(m: &ConcreteModule, guard: u32) -> Result<Option<bool>> {
    let l = m.prime();
    let e = m.exponent().max(1);
    let n = m.group().order();
    let count = (l as u128).checked_pow(e * n as u32);
    if count.is_none_or(|c| c > u128::from(ORACLE_CHECK_LIMIT)) {
        return Ok(None);
    }
    let ann = annihilator(m, e + guard, guard)?;
    let oracle = oracle_annihilator(m, e)?;
    let span = enumerate_span(ann.basis().rows(), n, l, e)?;
    if span != oracle {
        return Ok(Some(false));
    }
    let modulus = l.pow(e);
    let mut x = vec![0u64; n];
    loop {
        let elem = IntElement::from_parts(
            m.group().clone(),
            Integers,
            x.iter().map(|&c| BigInt::from(c)).collect(),
        );
        if ann.contains(&elem)? != span.contains(&x) {
            return Ok(Some(false));
        }
        let mut i = 0;
        while i < n {
            x[i] += 1;
            if x[i] < modulus {
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    Ok(Some(true))
}

/// Abelian groups of order at most `max_order`, ordered by order and then
/// by invariant factors.
pub fn small_groups(max_order: u64) -> Vec<FiniteAbelianGroup> {
    fn chains(prefix: &mut Vec<u64>, order: u64, max: u64, out: &mut BTreeSet<(u64, Vec<u64>)>) {
        out.insert((order, prefix.clone()));
        let step = prefix.last().copied().unwrap_or(1);
        let mut d = if step == 1 { 2 } else { step };
        while order * d <= max {
            prefix.push(d);
            chains(prefix, order * d, max, out);
            prefix.pop();
            d += step;
        }
    }
    let mut out = BTreeSet::new();
    chains(&mut Vec::new(), 1, max_order, &mut out);
    out.into_iter()
        .map(|(_, f)| FiniteAbelianGroup::new(f).expect("divisibility chain"))
        .collect()
}
