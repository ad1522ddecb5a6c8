use annfit::arith::format_rational;
use annfit::grouprings::{FiniteAbelianGroup, IntElement, RatElement};
use annfit::stickelberger::AbelianFieldSpec;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

/// `c_0 + c_1 x_1 + ...` with `label` naming each group element.
pub fn linear_combination(
    coeffs: &[BigRational],
    identity: usize,
    sep: &str,
    label: impl Fn(usize) -> String,
) -> String {
    let mut out = String::new();
    for (g, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if g == identity {
            out.push_str(&format_rational(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(&label(g));
        } else {
            out.push_str(&format!("{}{sep}{}", format_rational(&magnitude), label(g)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// An element of `Q[G(L/Q)]` written in the `sigma_a`.
pub fn galois(x: &RatElement, field: &AbelianFieldSpec) -> String {
    linear_combination(x.coeffs(), x.group().identity(), "", |g| {
        format!("σ{}", field.representative(g))
    })
}

pub fn galois_int(x: &IntElement, field: &AbelianFieldSpec) -> String {
    galois(&x.to_rational(), field)
}

/// An element of `Q[G]` written in the generators `g_i` of `G`.
pub fn group_element(x: &RatElement) -> String {
    let g = x.group();
    linear_combination(x.coeffs(), g.identity(), "*", |a| g.label(a))
}

pub fn group_int(x: &IntElement) -> String {
    group_element(&x.to_rational())
}

pub fn rationals(xs: &[BigRational]) -> Value {
    Value::Array(xs.iter().map(|q| Value::String(format_rational(q))).collect())
}

pub fn group(g: &FiniteAbelianGroup) -> Value {
    json!(g.invariant_factors())
}

pub fn field(k: &AbelianFieldSpec) -> Value {
    json!({
        "conductor": k.conductor(),
        "subgroup": k.subgroup(),
        "degree": k.degree(),
        "group": group(k.group()),
        "real": k.is_real(),
    })
}
