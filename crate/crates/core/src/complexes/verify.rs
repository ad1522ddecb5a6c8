use super::complex::PerfectComplex;
use super::detclass::det_class;
use super::homology::{homology, HomologyReport};
use crate::error::{Error, Result};
use crate::grouprings::{DetClass, IntElement, RatElement};
use crate::modules::{annihilator, fitting_ideal_concrete, fitting_precision, min_generators, IdealHandle};

/// Which ideal a check targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetIdeal {
    Annihilator,
    Fitting,
}

impl TargetIdeal {
    pub fn label(self) -> &'static str {
        match self {
            TargetIdeal::Annihilator => "ann",
            TargetIdeal::Fitting => "fitting",
        }
    }
}

/// One membership test `det^{(-1)^i} t^m in I(H_{1-i})`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub direction: usize,
    pub target: TargetIdeal,
    /// Part of the two-sided chain checked when `m_1 = 1`.
    pub chain: bool,
    pub generator: IntElement,
    pub exponent: usize,
    pub passed: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub det_class: DetClass,
    pub homology: HomologyReport,
    pub precision: u32,
    pub checks: Vec<CheckRecord>,
    /// Verdict on the chain `{t^{m_0}} <= det^{-1} ann(H_1) <= ann(H_0)`
    /// (and its Fitting refinement), present when `m_1 = 1`.
    pub chain_verdict: Option<bool>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn neg_valuation(x: &RatElement, l: u64) -> u32 {
    x.min_valuation(l).map_or(0, |v| (-v).max(0) as u32)
}

fn check_one(delta: &RatElement, t: &IntElement, m: usize, target: &IdealHandle) -> Result<(bool, Option<String>)> {
    let x = delta.mul_ref(&t.to_rational().pow(m as u32));
    let l = target.prime();
    if !x.is_l_integral(l) {
        return Ok((false, Some("product is not l-integral".into())));
    }
    match target.contains_rational(&x) {
        Ok(b) => Ok((b, None)),
        Err(e @ Error::PrecisionMismatch { .. }) => Err(e),
        Err(e) => Ok((false, Some(e.to_string()))),
    }
}

/// Checks the annihilator relations between `det(X)` and the homology, the
/// Fitting refinement when the Sylow l-subgroup is cyclic, and the two-sided
/// chain when `Hom(H_1, Q_l/Z_l)` is cyclic.
pub fn verify_theorem_2_4(c: &PerfectComplex, guard: u32) -> Result<VerificationReport> {
    let l = c.prime();
    let g = c.group();
    let hom = homology(c)?;
    let class = det_class(c)?;
    let delta = class.rep().clone();
    let delta_inv = class.inverse().rep().clone();
    let (h0, h1) = (hom.h0().clone(), hom.h1());
    let (m0, m1) = (hom.m0, hom.m1);
    let e = h0.exponent().max(h1.exponent());
    let slack = neg_valuation(&delta, l) + neg_valuation(&delta_inv, l);
    let precision = e + guard + slack;

    let ann = [annihilator(&h0, precision, guard)?, annihilator(&h1, precision, guard)?];
    let cyclic = g.sylow_is_cyclic(l);
    let fit = if cyclic {
        let f = |m: &crate::modules::ConcreteModule| {
            let p = precision.max(fitting_precision(
                min_generators(m).max(m.num_factors()),
                m.exponent(),
                guard,
            ));
            fitting_ideal_concrete(m, p, guard)
        };
        Some([f(&h0)?, f(&h1)?])
    } else {
        None
    };

    let mut checks = Vec::new();
    let deltas = [&delta, &delta_inv];
    let ms = [m0, m1];
    for i in 0..2 {
        for t in ann[i].module_generators() {
            let (passed, note) = check_one(deltas[i], &t, ms[i], &ann[1 - i])?;
            checks.push(CheckRecord {
                direction: i,
                target: TargetIdeal::Annihilator,
                chain: false,
                generator: t.clone(),
                exponent: ms[i],
                passed,
                note,
            });
            if let Some(fit) = &fit {
                let (passed, note) = check_one(deltas[i], &t, ms[i], &fit[1 - i])?;
                checks.push(CheckRecord {
                    direction: i,
                    target: TargetIdeal::Fitting,
                    chain: false,
                    generator: t,
                    exponent: ms[i],
                    passed,
                    note,
                });
            }
        }
    }

    let mut chain_verdict = None;
    if m1 == 1 {
        let mut ok = true;
        // Left inclusion: det * t^{m_0} in ann(H_1) for t in ann(H_0).
        for t in ann[0].module_generators() {
            let (passed, note) = check_one(&delta, &t, m0, &ann[1])?;
            ok &= passed;
            checks.push(CheckRecord {
                direction: 0,
                target: TargetIdeal::Annihilator,
                chain: true,
                generator: t,
                exponent: m0,
                passed,
                note,
            });
        }
        // Right inclusion: det^{-1} s in ann(H_0), or F(H_0), for s in ann(H_1).
        let mut targets = vec![(&ann[0], TargetIdeal::Annihilator)];
        if let Some(fit) = &fit {
            targets.push((&fit[0], TargetIdeal::Fitting));
        }
        for s in ann[1].module_generators() {
            for (target, kind) in &targets {
                let (passed, note) = check_one(&delta_inv, &s, 1, target)?;
                ok &= passed;
                checks.push(CheckRecord {
                    direction: 1,
                    target: *kind,
                    chain: true,
                    generator: s.clone(),
                    exponent: 1,
                    passed,
                    note,
                });
            }
        }
        chain_verdict = Some(ok);
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        det_class: class,
        homology: hom,
        precision,
        checks,
        chain_verdict,
        passed,
    })
}
