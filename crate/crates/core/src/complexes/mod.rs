//! Perfect complexes of free group-ring modules with finite homology: exact
//! homology, determinant classes, truncation and duality, mapping cones, and
//! the annihilator/Fitting relation checks.

pub mod complex;
pub mod cone;
pub mod detclass;
pub mod homology;
pub mod prop28;
pub mod verify;

pub use complex::{validate_complex, ComplexDiagnostic, DegreeHomology, PerfectComplex};
pub use cone::{generate_cone, random_cone_spec, random_element, random_l_unit, random_twist, ConeSpec};
pub use detclass::{det_class, det_class_with, dualize, splitting_matrix, truncate};
pub use homology::{homology, HomologyReport};
pub use prop28::{augmentation_kernel_module, prop_2_8_witness, Prop28Report};
pub use verify::{verify_theorem_2_4, CheckRecord, TargetIdeal, VerificationReport};
