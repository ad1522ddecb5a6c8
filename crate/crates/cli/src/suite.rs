use annfit::complexes::{generate_cone, prop_2_8_witness, random_cone_spec, verify_theorem_2_4};
use annfit::grouprings::{det_class_equals, FiniteAbelianGroup};
use annfit::modules::{annihilator_power_in_fitting, duality, fitting_in_annihilator, random_presented_module};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::commands::{check_prime, fail, prop28_json};
use crate::render;
use crate::{CliResult, Outcome, VerifyArgs};

/// Per-trial generator: the configured seed on stream `trial`.
fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trial(a: &VerifyArgs, g: &FiniteAbelianGroup, trial: usize) -> annfit::Result<(Value, bool)> {
    let guard = a.common.guard;
    let mut rng = trial_rng(a.seed, trial);
    let spec = random_cone_spec(g, a.l, a.max_rank, a.max_a, &mut rng);
    let cone = generate_cone(&spec, rng.gen())?;
    let report = verify_theorem_2_4(&cone, guard)?;
    let expected = det_class_equals(&report.det_class, &spec.expected_class()?)?;
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "direction": c.direction,
                "target": c.target.label(),
                "chain": c.chain,
                "exponent": c.exponent,
                "generator": render::group_int(&c.generator),
                "passed": c.passed,
                "note": c.note,
            })
        })
        .collect();
    let cone_passed = report.passed && expected;

    let (pm, m) = random_presented_module(g, a.l, a.max_log_order, &mut rng)?;
    let fit_ann = fitting_in_annihilator(&pm, guard)?;
    let ann_fit = annihilator_power_in_fitting(&pm, guard)?;
    let dual = duality(&m, guard)?;
    let module_passed = fit_ann && ann_fit && dual.passed();

    let record = json!({
        "trial": trial,
        "cone": {
            "b1": spec.b1,
            "b0": spec.b0,
            "ranks": cone.ranks(),
            "h0": report.homology.h0().abelian_invariants(),
            "h1": report.homology.h1().abelian_invariants(),
            "m0": report.homology.m0,
            "m1": report.homology.m1,
            "precision": report.precision,
            "det_class": render::group_element(report.det_class.rep()),
            "expected_class": expected,
            "checks": checks,
            "chain": report.chain_verdict,
            "passed": cone_passed,
        },
        "module": {
            "invariants": m.abelian_invariants(),
            "fitting_in_annihilator": fit_ann,
            "annihilator_power_in_fitting": ann_fit,
            "annihilator_duality": dual.annihilator,
            "fitting_duality": dual.fitting,
            "passed": module_passed,
        },
        "passed": cone_passed && module_passed,
    });
    Ok((record, cone_passed && module_passed))
}

pub fn verify(a: &VerifyArgs) -> CliResult<Outcome> {
    check_prime(a.l)?;
    if a.trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    if a.max_rank == 0 {
        return Err("--max-rank must be at least 1".into());
    }
    let g = FiniteAbelianGroup::parse(&a.group).map_err(fail)?;
    let config = json!({
        "l": a.l,
        "group": render::group(&g),
        "trials": a.trials,
        "seed": a.seed,
        "max_rank": a.max_rank,
        "max_a": a.max_a,
        "max_log_order": a.max_log_order,
        "guard": a.common.guard,
        "prop28_only": a.prop28,
    });
    let mut results = Map::new();
    let mut passed = true;
    let mut failures = 0usize;
    if !a.prop28 {
        // Ordered collect keeps the report independent of scheduling.
        let trials = (0..a.trials)
            .into_par_iter()
            .map(|t| run_trial(a, &g, t).map_err(|e| format!("trial {t}: {e}")))
            .collect::<CliResult<Vec<_>>>()?;
        for (_, ok) in &trials {
            if !ok {
                failures += 1;
            }
        }
        passed &= failures == 0;
        results.insert(
            "trials".into(),
            Value::Array(trials.into_iter().map(|(r, _)| r).collect()),
        );
    }
    let witness = prop_2_8_witness(a.l, a.common.guard).map_err(fail)?;
    if !witness.as_expected() {
        failures += 1;
        passed = false;
    }
    results.insert("witness".into(), prop28_json(&witness));
    results.insert("failures".into(), failures.into());
    Ok(Outcome {
        config,
        results,
        passed,
    })
}
