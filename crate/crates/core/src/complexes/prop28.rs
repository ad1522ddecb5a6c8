use crate::arith::valuation_int;
use crate::error::{Error, Result};
use crate::grouprings::FiniteAbelianGroup;
use crate::modules::{
    annihilator, fitting_ideal_concrete, fitting_precision, presentation_from_concrete, ConcreteModule, IdealHandle,
};

/// Outcome of the `C_l x C_l` duality witness.
#[derive(Clone, Debug, PartialEq)]
pub struct Prop28Report {
    pub l: u64,
    /// `v_l` of the augmentation image of `F(M)`.
    pub fitting_valuation: i64,
    /// `v_l` of the augmentation image of `F(M^#)`.
    pub dual_fitting_valuation: i64,
    /// `ann(M^#) = tau(ann(M))`.
    pub annihilator_duality: bool,
    /// `F(M^#) = tau(F(M))`; expected to fail for this module.
    pub fitting_duality: bool,
}

impl Prop28Report {
    /// The expected outcome: valuations `(2, 1)`, annihilators dual, Fitting
    /// ideals not.
    pub fn as_expected(&self) -> bool {
        self.fitting_valuation == 2
            && self.dual_fitting_valuation == 1
            && self.annihilator_duality
            && !self.fitting_duality
    }
}

/// The kernel of the mod-l augmentation `F_l[C_l x C_l] -> F_l`, on the
/// basis `h - 1`, `h != 1`.
pub fn augmentation_kernel_module(l: u64) -> Result<ConcreteModule> {
    let g = FiniteAbelianGroup::new(vec![l, l])?;
    let n = g.order();
    // Basis index of h - 1 is h - 1 (skipping the identity, index 0).
    let actions = (0..2)
        .map(|i| {
            let gen = g.generator(i);
            let mut a = vec![vec![0u64; n - 1]; n - 1];
            for h in 1..n {
                // g (h - 1) = (gh - 1) - (g - 1)
                let gh = g.op(gen, h);
                if gh != 0 {
                    a[gh - 1][h - 1] = (a[gh - 1][h - 1] + 1) % l;
                }
                a[gen - 1][h - 1] = (a[gen - 1][h - 1] + l - 1) % l;
            }
            a
        })
        .collect();
    ConcreteModule::new(l, g, vec![1; n - 1], actions)
}

fn augmentation_valuation(f: &IdealHandle) -> i64 {
    let l = f.prime();
    f.module_generators()
        .iter()
        .filter_map(|x| valuation_int(&x.augmentation(), l))
        .min()
        .unwrap_or(i64::MAX)
}

/// Builds `M` over `G = C_l x C_l` and compares the Fitting ideals of `M`
/// and `M^#` through their augmentation images.
pub fn prop_2_8_witness(l: u64, guard: u32) -> Result<Prop28Report> {
    if !crate::arith::is_prime(l) {
        return Err(Error::InvalidArgument(format!("{l} is not prime")));
    }
    let m = augmentation_kernel_module(l)?;
    let dual = m.pontryagin_dual();
    let b = presentation_from_concrete(&m).num_generators();
    let bd = presentation_from_concrete(&dual).num_generators();
    let n = fitting_precision(b.max(bd), 1, guard);
    let f = fitting_ideal_concrete(&m, n, guard)?;
    let fd = fitting_ideal_concrete(&dual, n, guard)?;
    let ann = annihilator(&m, n, guard)?;
    let ann_d = annihilator(&dual, n, guard)?;
    Ok(Prop28Report {
        l,
        fitting_valuation: augmentation_valuation(&f),
        dual_fitting_valuation: augmentation_valuation(&fd),
        annihilator_duality: ann_d.same_ideal(&ann.tau())?,
        fitting_duality: fd.same_ideal(&f.tau())?,
    })
}
