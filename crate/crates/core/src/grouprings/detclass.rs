use super::element::RatElement;
use crate::error::{Error, Result};

/// A coset in `Q_l[G]^* / Z_l[G]^*`, represented by an element of `Q[G]`
/// that is invertible there.
#[derive(Clone, Debug, PartialEq)]
pub struct DetClass {
    rep: RatElement,
    l: u64,
}

impl DetClass {
    pub fn new(rep: RatElement, l: u64) -> Result<Self> {
        if !rep.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(DetClass { rep, l })
    }

    pub fn rep(&self) -> &RatElement {
        &self.rep
    }

    pub fn prime(&self) -> u64 {
        self.l
    }

    pub fn inverse(&self) -> DetClass {
        DetClass {
            rep: self.rep.inverse().expect("class representative is invertible"),
            l: self.l,
        }
    }

    pub fn mul(&self, other: &DetClass) -> DetClass {
        DetClass {
            rep: self.rep.mul_ref(&other.rep),
            l: self.l,
        }
    }

    pub fn tau(&self) -> DetClass {
        DetClass {
            rep: self.rep.tau(),
            l: self.l,
        }
    }

    /// True when the class is trivial, i.e. the representative is a unit of
    /// `Z_l[G]`.
    pub fn is_trivial(&self) -> bool {
        self.rep.is_integral_unit(self.l).unwrap_or(false)
    }
}

/// Equality of cosets modulo `Z_l[G]^*`.
pub fn det_class_equals(u: &DetClass, v: &DetClass) -> Result<bool> {
    if u.l != v.l || u.rep.group() != v.rep.group() {
        return Err(Error::Mismatch("determinant classes over different (G, l)".into()));
    }
    let q = u.rep.mul_ref(&v.rep.inverse()?);
    q.is_integral_unit(u.l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprings::group::FiniteAbelianGroup;
    use crate::grouprings::scalar::Rationals;
    use num_rational::BigRational;

    #[test]
    fn coset_examples() {
        let g = FiniteAbelianGroup::cyclic(3);
        let u = DetClass::new(RatElement::from_ratios(&g, &[(2, 1), (1, 1), (0, 1)]), 3).unwrap();
        assert!(det_class_equals(&u, &u).unwrap());
        let ug = DetClass::new(u.rep().shift(1), 3).unwrap();
        assert!(det_class_equals(&u, &ug).unwrap());
        let three = RatElement::scalar(&g, &Rationals, BigRational::from_integer(3.into()));
        let ul = DetClass::new(u.rep() * &three, 3).unwrap();
        assert!(!det_class_equals(&u, &ul).unwrap());
        assert!(DetClass::new(RatElement::from_ratios(&g, &[(1, 1), (-1, 1), (0, 1)]), 3).is_err());
    }
}
