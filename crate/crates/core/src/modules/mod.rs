//! Finite modules over `Z_l[G]`: presentations, cyclic decompositions with
//! explicit action, annihilator and Fitting ideals, duals and generator
//! counts.

pub mod checks;
pub mod concrete;
pub mod generators;
pub mod ideal;
pub mod oracle;
pub mod presented;

pub use checks::{
    annihilator_power_in_fitting, duality, fitting_in_annihilator, oracle_agreement, presentation_independence,
    random_presented_module, small_groups, surjection_monotonicity, DualityCheck, ORACLE_CHECK_LIMIT,
};
pub use concrete::{ActionMatrix, ConcreteModule};
pub use generators::min_generators;
pub use ideal::{
    annihilator, fitting_ideal, fitting_ideal_concrete, fitting_precision, kills, IdealHandle, DEFAULT_GUARD,
};
pub use oracle::{enumerate_span, oracle_annihilator};
pub use presented::{
    finite_quotient, finite_quotient_with_invariants, free_actions, presentation_from_concrete, PresentedModule,
};
