use annfit::arith::is_prime;
use annfit::complexes::{det_class, homology as complex_homology, prop_2_8_witness, PerfectComplex, Prop28Report};
use annfit::io::{element_to_json, module_to_json, read_complex};
use annfit::modules::ConcreteModule;
use annfit::stickelberger::{character_checks, coates_sinnott_check, theta_element, AbelianFieldSpec};
use serde_json::{json, Map, Value};

use crate::render;
use crate::{CliResult, CsCheckArgs, FieldArgs, FileArgs, Outcome, Prop28Args, ThetaArgs};

pub fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn check_prime(l: u64) -> CliResult<()> {
    if is_prime(l) {
        Ok(())
    } else {
        Err(format!("--l {l} is not prime"))
    }
}

fn field_of(a: &FieldArgs) -> CliResult<AbelianFieldSpec> {
    if a.f == 0 {
        return Err("--f must be positive".into());
    }
    if a.real {
        Ok(AbelianFieldSpec::real_subfield(a.f))
    } else if a.h.is_empty() {
        Ok(AbelianFieldSpec::cyclotomic(a.f))
    } else {
        AbelianFieldSpec::new(a.f, &a.h).map_err(fail)
    }
}

fn field_config(a: &FieldArgs) -> Value {
    json!({"f": a.f, "h": a.h, "real": a.real})
}

pub fn theta(a: &ThetaArgs) -> CliResult<Outcome> {
    let field = field_of(&a.field)?;
    let t = theta_element(&field, a.n).map_err(fail)?;
    let checks = character_checks(&t).map_err(fail)?;
    let passed = checks.iter().all(|c| c.passed());
    let sigmas: Vec<u64> = (0..field.degree()).map(|g| field.representative(g)).collect();
    let characters: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "character": c.character,
                "odd": c.odd,
                "value": c.value.to_string(),
                "identity": c.identity,
                "parity": c.parity,
            })
        })
        .collect();
    let mut results = Map::new();
    results.insert("field".into(), render::field(&field));
    results.insert("sigma".into(), json!(sigmas));
    results.insert("coefficients".into(), render::rationals(t.element.coeffs()));
    results.insert("theta".into(), render::galois(&t.element, &field).into());
    results.insert("characters".into(), Value::Array(characters));
    let mut config = field_config(&a.field);
    config["n"] = json!(a.n);
    Ok(Outcome {
        config,
        results,
        passed,
    })
}

pub fn cs_check(a: &CsCheckArgs) -> CliResult<Outcome> {
    check_prime(a.l)?;
    let field = field_of(&a.field)?;
    let r = coates_sinnott_check(&field, a.n, a.l, a.b).map_err(fail)?;
    let generators: Vec<Value> = r
        .generators
        .iter()
        .map(|g| {
            json!({
                "p": g.p,
                "generator": render::galois_int(&g.generator, &field),
                "product": render::galois(&g.product, &field),
                "integral": g.integral,
                "kills_h0": g.kills_h0,
            })
        })
        .collect();
    let mut results = Map::new();
    results.insert("field".into(), render::field(&field));
    results.insert("theta".into(), render::galois(&r.theta, &field).into());
    results.insert("product".into(), render::galois(&r.element, &field).into());
    results.insert("product_coefficients".into(), render::rationals(r.element.coeffs()));
    results.insert("product_integral".into(), r.element_integral.into());
    results.insert("b_coprime_to_l".into(), r.b_coprime_to_l.into());
    results.insert("h0_exponent".into(), r.h0_exponent.into());
    results.insert("generators".into(), Value::Array(generators));
    let mut config = field_config(&a.field);
    config["n"] = json!(a.n);
    config["b"] = json!(a.b);
    config["l"] = json!(a.l);
    Ok(Outcome {
        config,
        results,
        passed: r.passed,
    })
}

pub fn prop28_json(r: &Prop28Report) -> Value {
    json!({
        "l": r.l,
        "fitting_valuation": r.fitting_valuation,
        "dual_fitting_valuation": r.dual_fitting_valuation,
        "annihilator_duality": r.annihilator_duality,
        "fitting_duality": r.fitting_duality,
        "passed": r.as_expected(),
    })
}

pub fn prop28(a: &Prop28Args) -> CliResult<Outcome> {
    check_prime(a.l)?;
    let r = prop_2_8_witness(a.l, a.common.guard).map_err(fail)?;
    let mut results = Map::new();
    results.insert("witness".into(), prop28_json(&r));
    Ok(Outcome {
        config: json!({"l": a.l, "guard": a.common.guard}),
        results,
        passed: r.as_expected(),
    })
}

fn load(path: &std::path::Path) -> CliResult<PerfectComplex> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    read_complex(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn module_summary(m: &ConcreteModule) -> Value {
    json!({
        "invariants": m.abelian_invariants(),
        "log_order": m.log_order(),
        "module": module_to_json(m),
    })
}

pub fn homology(a: &FileArgs) -> CliResult<Outcome> {
    let c = load(&a.input)?;
    let h = complex_homology(&c).map_err(fail)?;
    let mut results = Map::new();
    results.insert("h0".into(), module_summary(h.h0()));
    results.insert("h1".into(), module_summary(&h.h1()));
    results.insert("m0".into(), h.m0.into());
    results.insert("m1".into(), h.m1.into());
    Ok(Outcome {
        config: json!({"input": a.input.display().to_string()}),
        results,
        passed: true,
    })
}

pub fn detclass(a: &FileArgs) -> CliResult<Outcome> {
    let c = load(&a.input)?;
    let d = det_class(&c).map_err(fail)?;
    let mut results = Map::new();
    results.insert("class".into(), element_to_json(d.rep()));
    results.insert("display".into(), render::group_element(d.rep()).into());
    results.insert("trivial".into(), d.is_trivial().into());
    Ok(Outcome {
        config: json!({"input": a.input.display().to_string()}),
        results,
        passed: true,
    })
}
