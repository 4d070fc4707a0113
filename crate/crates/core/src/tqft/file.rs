//! Interpretation files.
//!
//! ```json
//! {
//!   "semiring": "bool",
//!   "tolerance": 1e-9,
//!   "objects": {"A": 2, "B": 3},
//!   "elements": {"A": ["a", "b"], "B": ["c", "d", "e"]},
//!   "generators": {"f": [[1, 0], [0, 1], [1, 1]], "r": "{(a,c),(b,d)}"},
//!   "frobenius": {"A": "basis"}
//! }
//! ```
//!
//! Matrices are row-major nested arrays; complex entries may be `[re, im]`
//! pairs and Boolean entries `0`/`1` or `true`/`false`. A Boolean generator
//! between single objects may instead be a relation given as a set of pairs
//! `(x, y)` over the declared element names, meaning `x` is related to `y`.
//! An explicit Frobenius structure is an object with `delta`, `eps`, `mu`
//! and `e` matrices and optional `commutative`, `special` and `dagger` flags
//! (default true).

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigUint;
use num_complex::Complex64;
use serde_json::Value;

use super::{basis_frobenius, FrobeniusFlags, FrobeniusPresentation, Interpretation};
use crate::diagram::Signature;
use crate::error::{Error, Result};
use crate::matcat::Matrix;
use crate::scalars::{Scalar, SemiringKind, SemiringTag};

fn bad(msg: impl Into<String>) -> Error {
    Error::Interpretation(msg.into())
}

/// Reads and parses an interpretation file.
pub fn load_interpretation(path: &Path, sig: &Signature) -> Result<Interpretation> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    parse_interpretation(&text, sig)
}

/// Parses interpretation JSON against a signature. Generator types come from
/// the signature; the result is validated.
pub fn parse_interpretation(text: &str, sig: &Signature) -> Result<Interpretation> {
    let root: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let obj = root.as_object().ok_or_else(|| bad("top level must be an object"))?;
    let kind: SemiringKind = obj
        .get("semiring")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing \"semiring\""))?
        .parse()?;
    let mut tag = SemiringTag::new(kind);
    if let Some(t) = obj.get("tolerance") {
        let t = t.as_f64().ok_or_else(|| bad("\"tolerance\" must be a number"))?;
        tag = tag.with_tolerance(t)?;
    }
    let mut interp = Interpretation::new(tag);
    if let Some(objects) = obj.get("objects") {
        for (name, d) in objects.as_object().ok_or_else(|| bad("\"objects\" must be an object"))? {
            let d = d
                .as_u64()
                .ok_or_else(|| bad(format!("dimension of `{name}` must be a natural number")))?;
            interp = interp.with_object(name, d as usize);
        }
    }
    let mut elements: BTreeMap<String, Vec<String>> = BTreeMap::new();
    if let Some(els) = obj.get("elements") {
        for (name, list) in els.as_object().ok_or_else(|| bad("\"elements\" must be an object"))? {
            let names: Vec<String> = list
                .as_array()
                .ok_or_else(|| bad(format!("elements of `{name}` must be a list")))?
                .iter()
                .map(|v| {
                    v.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| bad(format!("elements of `{name}` must be strings")))
                })
                .collect::<Result<_>>()?;
            match interp.object_dims.get(name) {
                Some(&d) if d != names.len() => {
                    return Err(bad(format!(
                        "`{name}` has dimension {d} but {} elements",
                        names.len()
                    )))
                }
                None => interp = interp.with_object(name, names.len()),
                _ => {}
            }
            elements.insert(name.clone(), names);
        }
    }
    if let Some(frob) = obj.get("frobenius") {
        for (atom, spec) in frob.as_object().ok_or_else(|| bad("\"frobenius\" must be an object"))? {
            let p = match spec {
                Value::String(s) if s == "basis" => basis_frobenius(interp.dim(atom)?, tag),
                Value::Object(m) => {
                    let get = |k: &str| {
                        m.get(k)
                            .ok_or_else(|| bad(format!("frobenius `{atom}` is missing `{k}`")))
                            .and_then(|v| matrix_literal(v, tag))
                    };
                    let flag = |k: &str| m.get(k).and_then(Value::as_bool).unwrap_or(true);
                    FrobeniusPresentation::new(
                        get("delta")?,
                        get("eps")?,
                        get("mu")?,
                        get("e")?,
                        FrobeniusFlags {
                            commutative: flag("commutative"),
                            special: flag("special"),
                            dagger: flag("dagger"),
                        },
                    )?
                }
                _ => return Err(bad(format!("frobenius `{atom}` must be \"basis\" or an object"))),
            };
            interp = interp.with_frobenius(atom, p);
        }
    }
    if let Some(gens) = obj.get("generators") {
        for (name, v) in gens.as_object().ok_or_else(|| bad("\"generators\" must be an object"))? {
            let m = match v {
                Value::String(s) => {
                    let g = sig.generator(name)?;
                    let (dom, cod) = match (g.dom.factors(), g.cod.factors()) {
                        ([d], [c]) => (d.atom.clone(), c.atom.clone()),
                        _ => {
                            return Err(bad(format!(
                                "relation `{name}` must go between single objects"
                            )))
                        }
                    };
                    if kind != SemiringKind::Boolean {
                        return Err(bad(format!("relation `{name}` needs the bool semiring")));
                    }
                    let lookup = |atom: &str| {
                        elements
                            .get(atom)
                            .ok_or_else(|| bad(format!("no elements declared for `{atom}`")))
                    };
                    relation_matrix(s, lookup(&dom)?, lookup(&cod)?)?
                }
                other => matrix_literal(other, tag)?,
            };
            interp = interp.with_generator(name, m);
        }
    }
    interp.elements = elements;
    interp.validate(sig)?;
    Ok(interp)
}

fn entry(v: &Value, tag: SemiringTag) -> Result<Scalar> {
    let kind = tag.kind();
    match (kind, v) {
        (SemiringKind::Boolean, Value::Bool(b)) => Ok(Scalar::Bool(*b)),
        (SemiringKind::Boolean, Value::Number(n)) => match n.as_u64() {
            Some(0) => Ok(Scalar::Bool(false)),
            Some(1) => Ok(Scalar::Bool(true)),
            _ => Err(bad(format!("boolean entries must be 0 or 1, got {n}"))),
        },
        (SemiringKind::Natural, Value::Number(n)) => n
            .as_u64()
            .map(|n| Scalar::Nat(BigUint::from(n)))
            .ok_or_else(|| bad(format!("natural entries must be non-negative integers, got {n}"))),
        (SemiringKind::Complex, Value::Number(n)) => Ok(Scalar::Complex(Complex64::new(
            n.as_f64().expect("finite JSON number"),
            0.0,
        ))),
        (SemiringKind::Complex, Value::Array(pair)) if pair.len() == 2 => {
            let re = pair[0].as_f64();
            let im = pair[1].as_f64();
            match (re, im) {
                (Some(re), Some(im)) => Ok(Scalar::Complex(Complex64::new(re, im))),
                _ => Err(bad("complex entries are [re, im] with numbers")),
            }
        }
        _ => Err(bad(format!("invalid {kind} entry {v}"))),
    }
}

/// A row-major nested-array matrix literal.
pub fn matrix_literal(v: &Value, tag: SemiringTag) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| bad("a matrix must be a list of rows"))?;
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("a matrix row must be a list"))?
                .iter()
                .map(|e| entry(e, tag))
                .collect()
        })
        .collect::<Result<_>>()?;
    Matrix::from_rows(tag, rows).map_err(|e| bad(e.to_string()))
}

/// Parses `{(x,y), ...}` into a Boolean matrix with a one at row `y`, column
/// `x`.
fn relation_matrix(text: &str, dom: &[String], cod: &[String]) -> Result<Matrix> {
    let body = text
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| bad(format!("relation must be written {{(x,y), ...}}, got {text}")))?;
    let mut m = Matrix::zero(SemiringTag::BOOLEAN, cod.len(), dom.len());
    let mut rest = body.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| bad(format!("expected `(` in relation at `{rest}`")))?;
        let close = inner
            .find(')')
            .ok_or_else(|| bad("unclosed pair in relation"))?;
        let (x, y) = inner[..close]
            .split_once(',')
            .ok_or_else(|| bad(format!("pair `({})` needs two elements", &inner[..close])))?;
        let (x, y) = (x.trim(), y.trim());
        let col = dom
            .iter()
            .position(|e| e == x)
            .ok_or_else(|| bad(format!("unknown element `{x}`")))?;
        let row = cod
            .iter()
            .position(|e| e == y)
            .ok_or_else(|| bad(format!("unknown element `{y}`")))?;
        m.set(row, col, Scalar::Bool(true));
        rest = inner[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(m)
}

/// The pairs `(x, y)` of a Boolean matrix read as a relation, using element
/// names when given and indices otherwise.
pub fn relation_pairs(m: &Matrix, dom: Option<&[String]>, cod: Option<&[String]>) -> String {
    let name = |names: Option<&[String]>, i: usize| {
        names
            .and_then(|n| n.get(i).cloned())
            .unwrap_or_else(|| i.to_string())
    };
    let mut pairs = Vec::new();
    for x in 0..m.cols() {
        for y in 0..m.rows() {
            if !m.get(y, x).is_zero() {
                pairs.push(format!("({},{})", name(dom, x), name(cod, y)));
            }
        }
    }
    format!("{{{}}}", pairs.join(","))
}
