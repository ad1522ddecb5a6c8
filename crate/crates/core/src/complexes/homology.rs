use super::complex::{validate_complex, PerfectComplex};
use crate::error::Result;
use crate::modules::{min_generators, ConcreteModule};

/// Homology of a complex concentrated in degrees 0 and 1, with the generator
/// counts `m_0 = mu(H_0)` and `m_1 = mu(Hom(H_1, Q_l/Z_l))`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyReport {
    /// l-adic homology per degree.
    pub modules: Vec<ConcreteModule>,
    pub m0: usize,
    pub m1: usize,
}

impl HomologyReport {
    pub fn h0(&self) -> &ConcreteModule {
        &self.modules[0]
    }

    /// `H_1`, or the zero module for complexes of length 0.
    pub fn h1(&self) -> ConcreteModule {
        self.modules
            .get(1)
            .cloned()
            .unwrap_or_else(|| ConcreteModule::zero(self.modules[0].prime(), self.modules[0].group()))
    }
}

/// Exact l-adic homology, requiring finiteness in every degree and
/// vanishing outside degrees 0 and 1.
pub fn homology(c: &PerfectComplex) -> Result<HomologyReport> {
    let diag = validate_complex(c, true)?;
    let modules: Vec<ConcreteModule> = diag.homology.into_iter().map(|h| h.module).collect();
    let m0 = min_generators(&modules[0]);
    let m1 = modules.get(1).map_or(0, |h1| min_generators(&h1.pontryagin_dual()));
    Ok(HomologyReport { modules, m0, m1 })
}
