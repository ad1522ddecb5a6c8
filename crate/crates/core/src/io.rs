//! Canonical JSON text formats.
//!
//! Serialization is compact with keys in a fixed order and a trailing
//! newline, so that `serialize(parse(x)) == x` for canonical input.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Map, Number, Value};

use crate::arith::{format_rational, parse_rational};
use crate::complexes::PerfectComplex;
use crate::grouprings::{
    FiniteAbelianGroup, GroupRingElement, IntElement, Integers, RatElement, Rationals, ResElement, Residues,
    ScalarDomain, ScalarRing,
};
use crate::linalg::{GroupRingMatrix, IntGrMatrix};
use crate::modules::{ConcreteModule, IdealHandle};

/// A malformed field, with the input line when it is known.
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub field: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}: {}", self.field, self.message),
            None => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

type PResult<T> = Result<T, ParseError>;

fn err<T>(field: &str, message: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        field: field.to_string(),
        line: None,
        message: message.into(),
    })
}

/// Parses JSON text, reporting syntax errors with their line.
pub fn parse_json(text: &str) -> PResult<Value> {
    serde_json::from_str(text).map_err(|e| ParseError {
        field: "<document>".into(),
        line: Some(e.line()),
        message: e.to_string(),
    })
}

/// Compact text with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

fn object<'a>(v: &'a Value, field: &str, keys: &[&str]) -> PResult<&'a Map<String, Value>> {
    let Some(obj) = v.as_object() else {
        return err(field, "expected an object");
    };
    for k in obj.keys() {
        if !keys.contains(&k.as_str()) {
            return err(&format!("{field}.{k}"), "unknown field");
        }
    }
    Ok(obj)
}

fn get<'a>(obj: &'a Map<String, Value>, field: &str, key: &str) -> PResult<&'a Value> {
    obj.get(key)
        .map_or_else(|| err(&format!("{field}.{key}"), "missing field"), Ok)
}

fn array<'a>(v: &'a Value, field: &str) -> PResult<&'a Vec<Value>> {
    v.as_array().map_or_else(|| err(field, "expected an array"), Ok)
}

fn big_int(v: &Value, field: &str) -> PResult<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .or_else(|_| err(field, format!("expected an integer, found {n}"))),
        _ => err(field, "expected an integer"),
    }
}

fn small_int<T: TryFrom<u64>>(v: &Value, field: &str) -> PResult<T> {
    let n = v
        .as_u64()
        .map_or_else(|| err(field, "expected a nonnegative integer"), Ok)?;
    T::try_from(n).or_else(|_| err(field, "integer out of range"))
}

fn number(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

fn small_list<T: TryFrom<u64>>(v: &Value, field: &str) -> PResult<Vec<T>> {
    array(v, field)?
        .iter()
        .enumerate()
        .map(|(i, x)| small_int(x, &format!("{field}[{i}]")))
        .collect()
}

/// Coefficient rings with a text representation.
pub trait JsonScalar: ScalarRing {
    fn coeff_to_json(&self, c: &Self::Elem) -> Value;
    fn coeff_from_json(&self, v: &Value, field: &str) -> PResult<Self::Elem>;
}

impl JsonScalar for Integers {
    fn coeff_to_json(&self, c: &BigInt) -> Value {
        number(c)
    }
    fn coeff_from_json(&self, v: &Value, field: &str) -> PResult<BigInt> {
        big_int(v, field)
    }
}

impl JsonScalar for Residues {
    fn coeff_to_json(&self, c: &BigInt) -> Value {
        number(c)
    }
    fn coeff_from_json(&self, v: &Value, field: &str) -> PResult<BigInt> {
        let n = big_int(v, field)?;
        if n < BigInt::from(0) || n >= *self.modulus() {
            return err(field, format!("residue {n} is not reduced modulo {}", self.modulus()));
        }
        Ok(n)
    }
}

impl JsonScalar for Rationals {
    fn coeff_to_json(&self, c: &BigRational) -> Value {
        Value::String(format_rational(c))
    }
    fn coeff_from_json(&self, v: &Value, field: &str) -> PResult<BigRational> {
        let Some(s) = v.as_str() else {
            return err(field, "expected a rational string \"p\" or \"p/q\"");
        };
        let q = parse_rational(s).map_or_else(|| err(field, format!("malformed rational {s:?}")), Ok)?;
        if format_rational(&q) != s {
            return err(field, format!("rational {s:?} is not in lowest terms"));
        }
        Ok(q)
    }
}

fn group_to_json(g: &FiniteAbelianGroup) -> Value {
    Value::Array(g.invariant_factors().iter().map(|&d| Value::from(d)).collect())
}

fn parse_group(v: &Value, field: &str) -> PResult<FiniteAbelianGroup> {
    let factors: Vec<u64> = small_list(v, field)?;
    FiniteAbelianGroup::new(factors).or_else(|e| err(field, e.to_string()))
}

pub fn element_to_json<R: JsonScalar>(x: &GroupRingElement<R>) -> Value {
    let mut m = Map::new();
    m.insert("group".into(), group_to_json(x.group()));
    m.insert("domain".into(), Value::String(x.ring().domain().to_string()));
    m.insert(
        "coeffs".into(),
        Value::Array(x.coeffs().iter().map(|c| x.ring().coeff_to_json(c)).collect()),
    );
    Value::Object(m)
}

/// An element in whichever domain its tag names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyElement {
    Int(IntElement),
    Residue(ResElement),
    Rat(RatElement),
}

impl AnyElement {
    pub fn to_json(&self) -> Value {
        match self {
            AnyElement::Int(x) => element_to_json(x),
            AnyElement::Residue(x) => element_to_json(x),
            AnyElement::Rat(x) => element_to_json(x),
        }
    }
}

fn coeffs_in<R: JsonScalar>(ring: &R, g: &FiniteAbelianGroup, v: &Value, field: &str) -> PResult<GroupRingElement<R>> {
    let list = array(v, field)?;
    if list.len() != g.order() {
        return err(
            field,
            format!(
                "expected {} coefficients for a group of order {}, found {}",
                g.order(),
                g.order(),
                list.len()
            ),
        );
    }
    let coeffs = list
        .iter()
        .enumerate()
        .map(|(i, c)| ring.coeff_from_json(c, &format!("{field}[{i}]")))
        .collect::<PResult<Vec<_>>>()?;
    GroupRingElement::new(g.clone(), ring.clone(), coeffs).or_else(|e| err(field, e.to_string()))
}

pub fn parse_element(v: &Value, field: &str) -> PResult<AnyElement> {
    let obj = object(v, field, &["group", "domain", "coeffs"])?;
    let g = parse_group(get(obj, field, "group")?, &format!("{field}.group"))?;
    let tag_field = format!("{field}.domain");
    let Some(tag) = get(obj, field, "domain")?.as_str() else {
        return err(&tag_field, "expected a string");
    };
    let domain =
        ScalarDomain::parse(tag).map_or_else(|| err(&tag_field, format!("unknown scalar domain {tag:?}")), Ok)?;
    let coeffs = get(obj, field, "coeffs")?;
    let cf = format!("{field}.coeffs");
    Ok(match domain {
        ScalarDomain::Integer => AnyElement::Int(coeffs_in(&Integers, &g, coeffs, &cf)?),
        ScalarDomain::Rational => AnyElement::Rat(coeffs_in(&Rationals, &g, coeffs, &cf)?),
        ScalarDomain::Residue { l, n } => AnyElement::Residue(coeffs_in(&Residues::new(l, n), &g, coeffs, &cf)?),
    })
}

/// An `int`-domain element, optionally required to lie over `group`.
pub fn parse_int_element(v: &Value, field: &str, group: Option<&FiniteAbelianGroup>) -> PResult<IntElement> {
    match parse_element(v, field)? {
        AnyElement::Int(x) => {
            if group.is_some_and(|g| g != x.group()) {
                return err(&format!("{field}.group"), "group differs from the enclosing object");
            }
            Ok(x)
        }
        _ => err(&format!("{field}.domain"), "expected domain \"int\""),
    }
}

pub fn matrix_to_json<R: JsonScalar>(m: &GroupRingMatrix<R>) -> Value {
    let mut o = Map::new();
    o.insert("rows".into(), Value::from(m.rows()));
    o.insert("cols".into(), Value::from(m.cols()));
    o.insert(
        "entries".into(),
        Value::Array(
            m.entries()
                .iter()
                .map(|row| Value::Array(row.iter().map(element_to_json).collect()))
                .collect(),
        ),
    );
    Value::Object(o)
}

pub fn parse_int_matrix(v: &Value, field: &str, group: &FiniteAbelianGroup) -> PResult<IntGrMatrix> {
    let obj = object(v, field, &["rows", "cols", "entries"])?;
    let rows: usize = small_int(get(obj, field, "rows")?, &format!("{field}.rows"))?;
    let cols: usize = small_int(get(obj, field, "cols")?, &format!("{field}.cols"))?;
    let ef = format!("{field}.entries");
    let list = array(get(obj, field, "entries")?, &ef)?;
    if list.len() != rows {
        return err(&ef, format!("expected {rows} rows, found {}", list.len()));
    }
    let mut entries = Vec::with_capacity(rows);
    for (i, row) in list.iter().enumerate() {
        let rf = format!("{ef}[{i}]");
        let row = array(row, &rf)?;
        if row.len() != cols {
            return err(&rf, format!("expected {cols} entries, found {}", row.len()));
        }
        entries.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| parse_int_element(x, &format!("{rf}[{j}]"), Some(group)))
                .collect::<PResult<Vec<_>>>()?,
        );
    }
    GroupRingMatrix::new(group, &Integers, rows, cols, entries).or_else(|e| err(field, e.to_string()))
}

pub fn complex_to_json(c: &PerfectComplex) -> Value {
    let mut o = Map::new();
    o.insert("group".into(), group_to_json(c.group()));
    o.insert("l".into(), Value::from(c.prime()));
    o.insert(
        "ranks".into(),
        Value::Array(c.ranks().iter().map(|&r| Value::from(r)).collect()),
    );
    o.insert(
        "differentials".into(),
        Value::Array(c.differentials().iter().map(matrix_to_json).collect()),
    );
    Value::Object(o)
}

/// Parses and revalidates a complex (`d d = 0`, shapes).
pub fn parse_complex(v: &Value) -> crate::Result<PerfectComplex> {
    let field = "complex";
    let obj = object(v, field, &["group", "l", "ranks", "differentials"])?;
    let g = parse_group(get(obj, field, "group")?, "complex.group")?;
    let l: u64 = small_int(get(obj, field, "l")?, "complex.l")?;
    let ranks: Vec<usize> = small_list(get(obj, field, "ranks")?, "complex.ranks")?;
    let diffs = array(get(obj, field, "differentials")?, "complex.differentials")?
        .iter()
        .enumerate()
        .map(|(i, d)| parse_int_matrix(d, &format!("complex.differentials[{i}]"), &g))
        .collect::<PResult<Vec<_>>>()?;
    PerfectComplex::new(l, g, ranks, diffs)
}

pub fn module_to_json(m: &ConcreteModule) -> Value {
    let mut o = Map::new();
    o.insert("l".into(), Value::from(m.prime()));
    o.insert("group".into(), group_to_json(m.group()));
    o.insert(
        "factors".into(),
        Value::Array(m.factors().iter().map(|&e| Value::from(e)).collect()),
    );
    o.insert(
        "actions".into(),
        Value::Array(
            m.actions()
                .iter()
                .map(|a| {
                    Value::Array(
                        a.iter()
                            .map(|r| Value::Array(r.iter().map(|&x| Value::from(x)).collect()))
                            .collect(),
                    )
                })
                .collect(),
        ),
    );
    Value::Object(o)
}

/// Parses and revalidates a module.
pub fn parse_module(v: &Value) -> crate::Result<ConcreteModule> {
    let field = "module";
    let obj = object(v, field, &["l", "group", "factors", "actions"])?;
    let l: u64 = small_int(get(obj, field, "l")?, "module.l")?;
    let g = parse_group(get(obj, field, "group")?, "module.group")?;
    let factors: Vec<u32> = small_list(get(obj, field, "factors")?, "module.factors")?;
    let acts = array(get(obj, field, "actions")?, "module.actions")?;
    if acts.len() != g.rank() {
        return Err(ParseError {
            field: "module.actions".into(),
            line: None,
            message: format!("expected {} action matrices, found {}", g.rank(), acts.len()),
        }
        .into());
    }
    let k = factors.len();
    let mut actions = Vec::with_capacity(acts.len());
    for (i, a) in acts.iter().enumerate() {
        let af = format!("module.actions[{i}]");
        let rows = array(a, &af)?;
        if rows.len() != k {
            return Err(ParseError {
                field: af,
                line: None,
                message: format!("expected {k} rows, found {}", rows.len()),
            }
            .into());
        }
        let mut mat = Vec::with_capacity(k);
        for (r, row) in rows.iter().enumerate() {
            let rf = format!("{af}[{r}]");
            let row: Vec<u64> = small_list(row, &rf)?;
            if row.len() != k {
                return Err(ParseError {
                    field: rf,
                    line: None,
                    message: format!("expected {k} entries, found {}", row.len()),
                }
                .into());
            }
            mat.push(row);
        }
        actions.push(mat);
    }
    ConcreteModule::new(l, g, factors, actions)
}

pub fn ideal_to_json(i: &IdealHandle) -> Value {
    let mut o = Map::new();
    o.insert("l".into(), Value::from(i.prime()));
    o.insert("group".into(), group_to_json(i.group()));
    o.insert("precision".into(), Value::from(i.precision()));
    o.insert("guard".into(), Value::from(i.guard()));
    o.insert(
        "generators".into(),
        Value::Array(i.generators().iter().map(element_to_json).collect()),
    );
    Value::Object(o)
}

pub fn parse_ideal(v: &Value) -> PResult<IdealHandle> {
    let field = "ideal";
    let obj = object(v, field, &["l", "group", "precision", "guard", "generators"])?;
    let l: u64 = small_int(get(obj, field, "l")?, "ideal.l")?;
    if !crate::arith::is_prime(l) {
        return err("ideal.l", format!("{l} is not prime"));
    }
    let g = parse_group(get(obj, field, "group")?, "ideal.group")?;
    let precision: u32 = small_int(get(obj, field, "precision")?, "ideal.precision")?;
    let guard: u32 = small_int(get(obj, field, "guard")?, "ideal.guard")?;
    let gens = array(get(obj, field, "generators")?, "ideal.generators")?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_int_element(x, &format!("ideal.generators[{i}]"), Some(&g)))
        .collect::<PResult<Vec<_>>>()?;
    Ok(IdealHandle::from_generators(&g, l, gens, precision, guard))
}

/// Reads a complex from JSON text.
pub fn read_complex(text: &str) -> crate::Result<PerfectComplex> {
    parse_complex(&parse_json(text)?)
}

pub fn read_module(text: &str) -> crate::Result<ConcreteModule> {
    parse_module(&parse_json(text)?)
}

pub fn read_element(text: &str) -> crate::Result<AnyElement> {
    Ok(parse_element(&parse_json(text)?, "element")?)
}
