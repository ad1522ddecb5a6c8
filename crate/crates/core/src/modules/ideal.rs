use num_bigint::BigInt;
use num_traits::Zero;

use super::concrete::ConcreteModule;
use super::presented::PresentedModule;
use crate::arith::big_pow;
use crate::error::{Error, Result};
use crate::grouprings::{FiniteAbelianGroup, FractionalGroupRingElement, IntElement, Integers, RatElement};
use crate::linalg::{howell_form, left_kernel, HowellBasis};

/// Default number of extra l-adic digits used to double-check membership.
pub const DEFAULT_GUARD: u32 = 8;

/// A finitely generated ideal of `Z_l[G]` containing `l^N`, stored through
/// its image in `Z/l^N[G]`.
///
/// Membership is decided at precision `N` and confirmed at `N + guard`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealHandle {
    group: FiniteAbelianGroup,
    l: u64,
    precision: u32,
    guard: u32,
    generators: Vec<IntElement>,
    basis: HowellBasis,
    check: HowellBasis,
}

fn closure_rows(gens: &[IntElement]) -> Vec<Vec<BigInt>> {
    gens.iter()
        .flat_map(|s| (0..s.group().order()).map(move |h| s.shift(h).into_coeffs()))
        .collect()
}

impl IdealHandle {
    /// The ideal generated by `gens`; the caller asserts `l^N` lies in it
    /// (a violation surfaces as `PrecisionMismatch` on membership queries).
    pub fn from_generators(
        group: &FiniteAbelianGroup,
        l: u64,
        gens: Vec<IntElement>,
        precision: u32,
        guard: u32,
    ) -> Self {
        let rows = closure_rows(&gens);
        let n = group.order();
        IdealHandle {
            group: group.clone(),
            l,
            precision,
            guard,
            basis: howell_form(&rows, n, l, precision),
            check: howell_form(&rows, n, l, precision + guard),
            generators: gens,
        }
    }

    /// The principal ideal `(x, l^N)`.
    pub fn principal(x: &IntElement, l: u64, precision: u32, guard: u32) -> Self {
        let g = x.group();
        let ln = IntElement::scalar(g, &Integers, big_pow(l, precision));
        Self::from_generators(g, l, vec![x.clone(), ln], precision, guard)
    }

    pub fn unit(group: &FiniteAbelianGroup, l: u64, precision: u32, guard: u32) -> Self {
        Self::from_generators(group, l, vec![IntElement::one(group, &Integers)], precision, guard)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.l
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn generators(&self) -> &[IntElement] {
        &self.generators
    }

    pub fn basis(&self) -> &HowellBasis {
        &self.basis
    }

    /// The Howell basis rows as group-ring elements.
    pub fn howell_generators(&self) -> Vec<IntElement> {
        self.basis
            .rows()
            .iter()
            .map(|r| IntElement::from_parts(self.group.clone(), Integers, r.clone()))
            .collect()
    }

    /// Generators as a `Z_l`-module: the Howell rows and `l^N`.
    pub fn module_generators(&self) -> Vec<IntElement> {
        let mut v = self.howell_generators();
        v.push(IntElement::scalar(
            &self.group,
            &Integers,
            big_pow(self.l, self.precision),
        ));
        v
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis
            .contains(&IntElement::one(&self.group, &Integers).into_coeffs())
    }

    pub fn contains(&self, x: &IntElement) -> Result<bool> {
        if x.group() != &self.group {
            return Err(Error::Mismatch("element and ideal over different groups".into()));
        }
        let low = self.basis.contains(x.coeffs());
        let high = self.check.contains(x.coeffs());
        if low != high {
            return Err(Error::PrecisionMismatch {
                low: self.precision,
                high: self.precision + self.guard,
            });
        }
        Ok(low)
    }

    /// Membership of an l-integral rational element.
    pub fn contains_rational(&self, x: &RatElement) -> Result<bool> {
        if !x.is_l_integral(self.l) {
            return Err(Error::NotIntegral { l: self.l });
        }
        let hi = self.precision + self.guard;
        let r = x.to_residues(self.l, hi)?;
        self.contains(&r.lift())
    }

    pub fn contains_fractional(&self, x: &FractionalGroupRingElement) -> Result<bool> {
        if !x.is_integral() {
            return Err(Error::NotIntegral { l: self.l });
        }
        self.contains(x.numerator())
    }

    /// Every element of `other`'s generating set lies in `self`.
    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        for x in other.module_generators() {
            if !self.contains(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals; both must contain `l^N` for the smaller `N`.
    pub fn same_ideal(&self, other: &IdealHandle) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// Image under the involution `g -> g^{-1}`.
    pub fn tau(&self) -> IdealHandle {
        let gens = self.module_generators().iter().map(|x| x.tau()).collect();
        Self::from_generators(&self.group, self.l, gens, self.precision, self.guard)
    }
}

/// Integer rows, one per group element `g`, holding `(A_g)_{kj} l^{N - e_k}`
/// for all `(k, j)`: `r` kills `M` iff `sum_g r_g row_g = 0 mod l^N`.
fn annihilator_system(m: &ConcreteModule, n: u32) -> Vec<Vec<BigInt>> {
    let k = m.num_factors();
    m.all_actions()
        .iter()
        .map(|a| {
            let mut row = Vec::with_capacity(k * k);
            for j in 0..k {
                for (r, &e) in m.factors().iter().enumerate() {
                    row.push(BigInt::from(a[r][j]) * big_pow(m.prime(), n - e));
                }
            }
            row
        })
        .collect()
}

fn annihilator_basis(m: &ConcreteModule, n: u32) -> HowellBasis {
    let k = m.num_factors();
    left_kernel(&annihilator_system(m, n), k * k, m.prime(), n)
}

/// `ann(M)` at precision `N >= e_max + guard`.
pub fn annihilator(m: &ConcreteModule, precision: u32, guard: u32) -> Result<IdealHandle> {
    let need = m.exponent() + guard;
    if precision < need {
        return Err(Error::PrecisionTooLow { have: precision, need });
    }
    let g = m.group();
    let basis = annihilator_basis(m, precision);
    let check = annihilator_basis(m, precision + guard);
    let mut generators: Vec<IntElement> = basis
        .rows()
        .iter()
        .map(|r| IntElement::from_parts(g.clone(), Integers, r.clone()))
        .collect();
    generators.push(IntElement::scalar(g, &Integers, big_pow(m.prime(), m.exponent())));
    Ok(IdealHandle {
        group: g.clone(),
        l: m.prime(),
        precision,
        guard,
        generators,
        basis,
        check,
    })
}

/// Smallest precision accepted by [`fitting_ideal`] for a module with the
/// given number of generators and exponent.
pub fn fitting_precision(generators: usize, exponent: u32, guard: u32) -> u32 {
    (exponent + guard).max(exponent * generators as u32).max(1)
}

/// The ideal of `b x b` minors of the presentation.
pub fn fitting_ideal(pm: &PresentedModule, precision: u32, guard: u32) -> Result<IdealHandle> {
    let m = pm.realize()?;
    let b = pm.num_generators();
    let need = fitting_precision(b, m.exponent(), guard);
    if precision < need {
        return Err(Error::PrecisionTooLow { have: precision, need });
    }
    let l = pm.prime();
    let hi = big_pow(l, precision + guard);
    let reduced = pm.matrix().map(|x| {
        IntElement::from_parts(
            x.group().clone(),
            Integers,
            x.coeffs()
                .iter()
                .map(|c| num_integer::Integer::mod_floor(c, &hi))
                .collect(),
        )
    });
    let minors = reduced.all_minors(b)?;
    let mut gens: Vec<IntElement> = minors.into_iter().filter(|x| !x.is_zero()).collect();
    if gens.is_empty() {
        gens.push(IntElement::zero(pm.group(), &Integers));
    }
    Ok(IdealHandle::from_generators(pm.group(), l, gens, precision, guard))
}

/// `F(M)` of a concrete module through [`super::presentation_from_concrete`].
pub fn fitting_ideal_concrete(m: &ConcreteModule, precision: u32, guard: u32) -> Result<IdealHandle> {
    fitting_ideal(&super::presented::presentation_from_concrete(m), precision, guard)
}

/// True iff `x` (an element of `Z[G]`) acts as zero on `M`.
pub fn kills(m: &ConcreteModule, x: &IntElement) -> bool {
    let rows = annihilator_system(m, m.exponent());
    let modulus = big_pow(m.prime(), m.exponent());
    let width = rows.first().map_or(0, |r| r.len());
    (0..width).all(|c| {
        let s = rows
            .iter()
            .zip(x.coeffs())
            .fold(BigInt::zero(), |acc, (r, a)| acc + a * &r[c]);
        num_integer::Integer::is_multiple_of(&s, &modulus)
    })
}
