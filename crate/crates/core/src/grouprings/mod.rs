//! Finite abelian groups and their group rings over the integers, residues
//! modulo `l^N` and the rationals.

pub mod character;
pub mod detclass;
pub mod element;
pub mod group;
pub mod scalar;

pub use character::{cyclotomic_polynomial, evaluate_character, CharacterSpec, CyclotomicValue};
pub use detclass::{det_class_equals, DetClass};
pub use element::{FractionalGroupRingElement, GroupRingElement, IntElement, RatElement, ResElement};
pub use group::{FiniteAbelianGroup, SylowSplit};
pub use scalar::{Integers, Rationals, Residues, ScalarDomain, ScalarRing};
