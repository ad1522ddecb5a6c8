//! Exact linear algebra: Smith and Howell normal forms, rational and
//! prime-field elimination, and matrices over group rings.

pub mod fp;
pub mod grmatrix;
pub mod howell;
pub mod intmat;
pub mod rational;

pub use grmatrix::{equivariant_solve, subsets, GroupRingMatrix, IntGrMatrix, RatGrMatrix, SolveChoice};
pub use howell::{howell_form, left_kernel, HowellBasis};
pub use intmat::{smith_normal_form, IntegerMatrix, SmithDecomposition};
