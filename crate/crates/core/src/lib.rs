//! Annihilator and Fitting ideal relations over finite abelian group rings.
//!
//! The crate computes with modules over `Z_l[G]` exactly: homology of perfect
//! complexes through integer Smith forms, ideals through Howell forms modulo
//! `l^N`, and determinant classes in `Q_l[G]^* / Z_l[G]^*` through rational
//! group-ring elements. It also builds higher Stickelberger elements of
//! abelian fields from Bernoulli polynomials.

pub mod arith;
pub mod complexes;
pub mod error;
pub mod grouprings;
pub mod io;
pub mod linalg;
pub mod modules;
pub mod stickelberger;

pub use error::{Error, Result};
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
