//! Higher Stickelberger elements of abelian fields from partial zeta values,
//! with Euler factors, corestriction, `w_n`, the cyclic `H^0` module and the
//! integrality checks built on them.

pub mod bernoulli;
pub mod field;
pub mod invariants;
pub mod theta;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial_eval, BernoulliTable};
pub use field::AbelianFieldSpec;
pub use invariants::{
    annihilator_generators, coates_sinnott_check, h0_model, w_invariant, CoatesSinnottReport, GeneratorCheck,
    GENERATOR_BOUND,
};
pub use theta::{
    character_checks, euler_factor, l_value, partial_zeta, project_element, pushforward_theta, theta_element,
    CharacterCheck, EulerFactor, ThetaElement,
};
