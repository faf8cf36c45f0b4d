//! JSON encodings of scalars, matrices, algebras, dual pairs, fusion rings,
//! signatures and interpretations.
//!
//! Scalars are strings `"p/q"` (integers are also accepted on input);
//! matrices are arrays of rows. Decoding errors name the offending JSON
//! pointer, and syntax errors carry line and column.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::eval::{Interpretation, RelationReport};
use crate::frobenius::{AxiomReport, BilinearPairing, FrobeniusAlgebra};
use crate::fusion::FusionRing;
use crate::linalg::Matrix;
use crate::parser::parse;
use crate::scalar::{format_q, parse_q, Q};
use crate::term::{Duality, GeneratorType, ObjectWord, Relation, Signature};
use crate::tqft1::DualPair;

fn bad(path: &str, what: &str) -> Error {
    let at = if path.is_empty() { "/" } else { path };
    Error::Format(format!("at {at}: {what}"))
}

/// Parse JSON text; syntax errors report `line L column C`.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::Format(format!(
            "line {} column {}: {}",
            e.line(),
            e.column(),
            strip_position(&e.to_string())
        ))
    })
}

fn strip_position(msg: &str) -> &str {
    msg.split(" at line ").next().unwrap_or(msg)
}

/// Compact, deterministic text form.
pub fn to_text(v: &Value) -> String {
    v.to_string()
}

pub fn scalar_to_json(x: &Q) -> Value {
    Value::String(format_q(x))
}

pub fn scalar_from_json(v: &Value, path: &str) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s).map_err(|e| bad(path, &e.to_string())),
        Value::Number(n) if n.is_i64() => parse_q(&n.to_string()),
        _ => Err(bad(
            path,
            "expected a rational string \"p/q\" or an integer",
        )),
    }
}

pub fn matrix_to_json(m: &Matrix<Q>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row_vec(r).iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value, path: &str) -> Result<Matrix<Q>> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad(path, "expected an array of rows"))?;
    if rows.is_empty() {
        return Err(bad(path, "matrix has no rows"));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let rp = format!("{path}/{r}");
        let cells = row
            .as_array()
            .ok_or_else(|| bad(&rp, "expected an array"))?;
        let parsed = cells
            .iter()
            .enumerate()
            .map(|(c, x)| scalar_from_json(x, &format!("{rp}/{c}")))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    let cols = out[0].len();
    if let Some(r) = out.iter().position(|row| row.len() != cols) {
        return Err(bad(&format!("{path}/{r}"), "ragged matrix row"));
    }
    Matrix::from_rows(out).map_err(|e| bad(path, &e.to_string()))
}

fn vector_to_json(entries: &[Q]) -> Value {
    Value::Array(entries.iter().map(scalar_to_json).collect())
}

fn vector_from_json(v: &Value, path: &str) -> Result<Vec<Q>> {
    v.as_array()
        .ok_or_else(|| bad(path, "expected a flat array of scalars"))?
        .iter()
        .enumerate()
        .map(|(i, x)| scalar_from_json(x, &format!("{path}/{i}")))
        .collect()
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(path, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| bad(path, &format!("missing key \"{key}\"")))
}

fn usize_field(obj: &Map<String, Value>, key: &str, path: &str) -> Result<usize> {
    field(obj, key, path)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| bad(&format!("{path}/{key}"), "expected a nonnegative integer"))
}

fn strings(v: &Value, path: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| bad(path, "expected an array of strings"))?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_str()
                .map(str::to_owned)
                .ok_or_else(|| bad(&format!("{path}/{i}"), "expected a string"))
        })
        .collect()
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(bad(path, &format!("unexpected key \"{k}\""))),
        None => Ok(()),
    }
}

fn with_path(path: String) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Format(msg) if msg.starts_with("at ") => Error::Format(msg),
        other => bad(&path, &other.to_string()),
    }
}

/// Full form `{"dim","basis","mu","eta","delta","eps"}`.
pub fn algebra_to_json(f: &FrobeniusAlgebra<Q>) -> Value {
    let basis = f
        .basis_names
        .clone()
        .unwrap_or_else(|| (0..f.dim).map(|i| format!("e{i}")).collect());
    json!({
        "dim": f.dim,
        "basis": basis,
        "mu": matrix_to_json(&f.mu),
        "eta": vector_to_json(f.eta.entries()),
        "delta": matrix_to_json(&f.delta),
        "eps": vector_to_json(f.eps.entries()),
    })
}

/// Economy form `{"dim","basis","mu","eta","pairing"}`.
pub fn algebra_to_economy_json(f: &FrobeniusAlgebra<Q>) -> Value {
    let mut v = algebra_to_json(f);
    let obj = v.as_object_mut().expect("object");
    obj.remove("delta");
    obj.remove("eps");
    obj.insert("pairing".into(), matrix_to_json(&f.to_economy().gram));
    v
}

/// Accepts either the full or the economy form, told apart by the
/// presence of `"pairing"`. The full form is only shape-checked.
pub fn algebra_from_json(v: &Value) -> Result<FrobeniusAlgebra<Q>> {
    let obj = object(v, "")?;
    let dim = usize_field(obj, "dim", "")?;
    if dim == 0 {
        return Err(bad("/dim", "dimension must be positive"));
    }
    let basis = match obj.get("basis") {
        Some(b) => {
            let names = strings(b, "/basis")?;
            if names.len() != dim {
                return Err(bad(
                    "/basis",
                    &format!("{} names for dimension {dim}", names.len()),
                ));
            }
            Some(names)
        }
        None => None,
    };
    let mu = matrix_from_json(field(obj, "mu", "")?, "/mu")?;
    if mu.shape() != (dim, dim * dim) {
        return Err(bad("/mu", &format!("expected {dim}x{}", dim * dim)));
    }
    let eta = vector_from_json(field(obj, "eta", "")?, "/eta")?;
    if eta.len() != dim {
        return Err(bad("/eta", &format!("expected {dim} entries")));
    }
    let eta = Matrix::column(eta);
    let alg = if obj.contains_key("pairing") {
        reject_unknown(obj, &["dim", "basis", "mu", "eta", "pairing"], "")?;
        let gram = matrix_from_json(&obj["pairing"], "/pairing")?;
        if gram.shape() != (dim, dim) {
            return Err(bad("/pairing", &format!("expected {dim}x{dim}")));
        }
        FrobeniusAlgebra::from_economy(dim, mu, eta, &BilinearPairing::new(gram)?)?
    } else {
        reject_unknown(obj, &["dim", "basis", "mu", "eta", "delta", "eps"], "")?;
        let delta = matrix_from_json(field(obj, "delta", "")?, "/delta")?;
        let eps = vector_from_json(field(obj, "eps", "")?, "/eps")?;
        FrobeniusAlgebra::new(dim, mu, eta, delta, Matrix::row(eps), None)
            .map_err(with_path(String::new()))?
    };
    Ok(match basis {
        Some(names) => alg.with_basis_names(names),
        None => alg,
    })
}

/// `{"dimU","dimV","b","d"}` with `b` and `d` flat.
pub fn dual_pair_to_json(p: &DualPair<Q>) -> Value {
    json!({
        "dimU": p.dim_u(),
        "dimV": p.dim_v(),
        "b": vector_to_json(p.b().entries()),
        "d": vector_to_json(p.d().entries()),
    })
}

/// Decodes and shape-checks; the snake identities are checked only when
/// `checked` is set.
pub fn dual_pair_from_json(v: &Value, checked: bool) -> Result<DualPair<Q>> {
    let obj = object(v, "")?;
    reject_unknown(obj, &["dimU", "dimV", "b", "d"], "")?;
    let dim_u = usize_field(obj, "dimU", "")?;
    let dim_v = usize_field(obj, "dimV", "")?;
    let b = vector_from_json(field(obj, "b", "")?, "/b")?;
    let d = vector_from_json(field(obj, "d", "")?, "/d")?;
    for (key, v) in [("/b", &b), ("/d", &d)] {
        if v.len() != dim_u * dim_v {
            return Err(bad(
                key,
                &format!("expected {} entries, got {}", dim_u * dim_v, v.len()),
            ));
        }
    }
    let (b, d) = (Matrix::column(b), Matrix::row(d));
    if checked {
        DualPair::new(dim_u, dim_v, b, d)
    } else {
        DualPair::new_unchecked(dim_u, dim_v, b, d)
    }
}

/// `{"labels","dual","N"}`.
pub fn fusion_ring_to_json(r: &FusionRing) -> Value {
    json!({
        "labels": r.labels(),
        "dual": r.duals(),
        "N": r.table(),
    })
}

pub fn fusion_ring_from_json(v: &Value) -> Result<FusionRing> {
    let obj = object(v, "")?;
    reject_unknown(obj, &["labels", "dual", "N"], "")?;
    let labels = strings(field(obj, "labels", "")?, "/labels")?;
    let dual = field(obj, "dual", "")?
        .as_array()
        .ok_or_else(|| bad("/dual", "expected an array of indices"))?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| bad(&format!("/dual/{i}"), "expected a label index"))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = field(obj, "N", "")?;
    let cube = n
        .as_array()
        .ok_or_else(|| bad("/N", "expected a nested array"))?
        .iter()
        .enumerate()
        .map(|(i, m)| {
            m.as_array()
                .ok_or_else(|| bad(&format!("/N/{i}"), "expected an array"))?
                .iter()
                .enumerate()
                .map(|(j, row)| {
                    row.as_array()
                        .ok_or_else(|| bad(&format!("/N/{i}/{j}"), "expected an array"))?
                        .iter()
                        .enumerate()
                        .map(|(k, c)| {
                            c.as_u64().ok_or_else(|| {
                                bad(&format!("/N/{i}/{j}/{k}"), "expected a nonnegative integer")
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FusionRing::new(labels, dual, cube).map_err(with_path("/N".into()))
}

/// `{"objects","generators":{name:{"src","tgt"}},"relations":[{"lhs","rhs","name"?}],"duals"?}`
/// where `"duals"` maps a label to `{"dual","coev","ev"}`.
pub fn signature_to_json(sig: &Signature) -> Value {
    let gens: Map<String, Value> = sig
        .generators()
        .iter()
        .map(|(name, ty)| {
            (
                name.clone(),
                json!({"src": ty.source.labels(), "tgt": ty.target.labels()}),
            )
        })
        .collect();
    let rels: Vec<Value> = sig
        .relations()
        .iter()
        .map(|r| json!({"name": r.name, "lhs": r.lhs.render(), "rhs": r.rhs.render()}))
        .collect();
    let mut out = json!({
        "objects": sig.objects(),
        "generators": gens,
        "relations": rels,
    });
    if !sig.dualities().is_empty() {
        let duals: Map<String, Value> = sig
            .dualities()
            .iter()
            .map(|(x, d)| {
                (
                    x.clone(),
                    json!({"dual": d.dual, "coev": d.coev.render(), "ev": d.pairing.render()}),
                )
            })
            .collect();
        out.as_object_mut()
            .expect("object")
            .insert("duals".into(), Value::Object(duals));
    }
    out
}

fn term_field(obj: &Map<String, Value>, key: &str, path: &str) -> Result<crate::term::Term> {
    let text = field(obj, key, path)?
        .as_str()
        .ok_or_else(|| bad(&format!("{path}/{key}"), "expected a DSL string"))?;
    parse(text).map_err(with_path(format!("{path}/{key}")))
}

pub fn signature_from_json(v: &Value) -> Result<Signature> {
    let obj = object(v, "")?;
    reject_unknown(obj, &["objects", "generators", "relations", "duals"], "")?;
    let objects = strings(field(obj, "objects", "")?, "/objects")?;
    let mut gens = BTreeMap::new();
    for (name, ty) in object(field(obj, "generators", "")?, "/generators")? {
        let p = format!("/generators/{name}");
        let ty = object(ty, &p)?;
        gens.insert(
            name.clone(),
            GeneratorType {
                source: ObjectWord(strings(field(ty, "src", &p)?, &format!("{p}/src"))?),
                target: ObjectWord(strings(field(ty, "tgt", &p)?, &format!("{p}/tgt"))?),
            },
        );
    }
    let mut relations = Vec::new();
    if let Some(rels) = obj.get("relations") {
        let rels = rels
            .as_array()
            .ok_or_else(|| bad("/relations", "expected an array"))?;
        for (i, r) in rels.iter().enumerate() {
            let p = format!("/relations/{i}");
            let r = object(r, &p)?;
            let name = match r.get("name") {
                Some(n) => n
                    .as_str()
                    .ok_or_else(|| bad(&format!("{p}/name"), "expected a string"))?
                    .to_owned(),
                None => format!("relation{i}"),
            };
            relations.push(Relation {
                name,
                lhs: term_field(r, "lhs", &p)?,
                rhs: term_field(r, "rhs", &p)?,
            });
        }
    }
    let mut dualities = BTreeMap::new();
    if let Some(duals) = obj.get("duals") {
        for (x, d) in object(duals, "/duals")? {
            let p = format!("/duals/{x}");
            let d = object(d, &p)?;
            let dual = field(d, "dual", &p)?
                .as_str()
                .ok_or_else(|| bad(&format!("{p}/dual"), "expected a label"))?
                .to_owned();
            dualities.insert(
                x.clone(),
                Duality {
                    dual,
                    coev: term_field(d, "coev", &p)?,
                    pairing: term_field(d, "ev", &p)?,
                },
            );
        }
    }
    Signature::new(objects, gens, relations, dualities)
}

/// `{"dims":{label:n},"generators":{name:matrix}}`.
pub fn interpretation_to_json(z: &Interpretation<Q>) -> Value {
    let gens: Map<String, Value> = z
        .generator_matrices()
        .iter()
        .map(|(k, m)| (k.clone(), matrix_to_json(m)))
        .collect();
    json!({"dims": z.object_dims(), "generators": gens})
}

pub fn interpretation_from_json(v: &Value, sig: Signature) -> Result<Interpretation<Q>> {
    let obj = object(v, "")?;
    reject_unknown(obj, &["dims", "generators"], "")?;
    let mut dims = BTreeMap::new();
    for (k, n) in object(field(obj, "dims", "")?, "/dims")? {
        let n = n
            .as_u64()
            .ok_or_else(|| bad(&format!("/dims/{k}"), "expected a positive integer"))?;
        dims.insert(k.clone(), n as usize);
    }
    let dim =
        |w: &ObjectWord| -> Option<usize> { w.labels().iter().map(|l| dims.get(l)).product() };
    let mut gens = BTreeMap::new();
    for (k, m) in object(field(obj, "generators", "")?, "/generators")? {
        let path = format!("/generators/{k}");
        let m = matrix_from_json(m, &path)?;
        if let Some(ty) = sig.generator(k) {
            if let (Some(r), Some(c)) = (dim(&ty.target), dim(&ty.source)) {
                if m.shape() != (r, c) {
                    return Err(bad(
                        &path,
                        &format!("expected {r}x{c}, got {}x{}", m.rows(), m.cols()),
                    ));
                }
            }
        }
        gens.insert(k.clone(), m);
    }
    Interpretation::new(sig, dims, gens)
}

pub fn axiom_report_to_json(r: &AxiomReport) -> Value {
    let mut m = Map::new();
    for (name, ok) in r.entries() {
        m.insert(name.into(), Value::Bool(ok));
    }
    Value::Object(m)
}

pub fn relation_report_to_json(r: &RelationReport<Q>) -> Value {
    Value::Array(
        r.outcomes
            .iter()
            .map(|o| {
                let mut v = json!({"name": o.name, "lhs": o.lhs, "rhs": o.rhs, "pass": o.passed()});
                if let Some(m) = &o.mismatch {
                    v.as_object_mut().expect("object").insert(
                        "mismatch".into(),
                        json!({
                            "row": m.row,
                            "col": m.col,
                            "lhs": format_q(&m.lhs),
                            "rhs": format_q(&m.rhs),
                        }),
                    );
                }
                v
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{group_algebra, milnor_ring, zn_table};
    use crate::fusion::{fibonacci, ising};
    use crate::tqft1::bord1_signature;
    use crate::tqft2::{bord2_signature, frobenius_interpretation};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn scalars_and_matrices() {
        assert_eq!(to_text(&scalar_to_json(&q(-2, 4))), "\"-1/2\"");
        assert_eq!(scalar_from_json(&json!(3), "").unwrap(), q(3, 1));
        assert_eq!(scalar_from_json(&json!("6/4"), "").unwrap(), q(3, 2));
        assert!(scalar_from_json(&json!(1.5), "/x").is_err());
        let m = Matrix::from_rows(vec![vec![q(1, 2), q(0, 1)], vec![q(-3, 1), q(1, 3)]]).unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(to_text(&v), r#"[["1/2","0"],["-3","1/3"]]"#);
        assert_eq!(matrix_from_json(&v, "").unwrap(), m);
        let err = matrix_from_json(&json!([["1", "2"], ["3"]]), "/mu").unwrap_err();
        assert_eq!(err.to_string(), "at /mu/1: ragged matrix row");
        let err = matrix_from_json(&json!([["1", "x"]]), "/mu").unwrap_err();
        assert!(err.to_string().starts_with("at /mu/0/1:"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_json("{\n  \"dim\": 2,\n  oops\n}").unwrap_err();
        assert!(err.to_string().starts_with("line 3 column 3"), "{err}");
    }

    #[test]
    fn algebra_round_trips() {
        let z2: FrobeniusAlgebra<Q> = group_algebra(&zn_table(2)).unwrap();
        let m: FrobeniusAlgebra<Q> = milnor_ring(4).unwrap();
        for f in [z2, m] {
            let full = algebra_to_json(&f);
            assert_eq!(algebra_from_json(&full).unwrap().mu, f.mu);
            let back = algebra_from_json(&full).unwrap();
            assert_eq!(
                (&back.delta, &back.eps, &back.eta),
                (&f.delta, &f.eps, &f.eta)
            );
            let econ = algebra_to_economy_json(&f);
            let back = algebra_from_json(&econ).unwrap();
            assert_eq!((&back.delta, &back.eps), (&f.delta, &f.eps));
            assert_eq!(
                to_text(&algebra_to_json(&back)),
                to_text(&algebra_to_json(&f))
            );
        }
    }

    #[test]
    fn algebra_key_order_is_canonical() {
        let z2: FrobeniusAlgebra<Q> = group_algebra(&zn_table(2)).unwrap();
        let text = to_text(&algebra_to_json(&z2));
        assert!(
            text.starts_with(r#"{"dim":2,"basis":["e","g"],"mu":"#),
            "{text}"
        );
        assert!(text.ends_with(r#""eps":["1","0"]}"#), "{text}");
    }

    #[test]
    fn algebra_errors_name_the_key() {
        let err = algebra_from_json(&json!({"dim": 1, "mu": [["1"]]})).unwrap_err();
        assert_eq!(err.to_string(), "at /: missing key \"eta\"");
        let err = algebra_from_json(&json!({"dim": 2, "mu": [["1"]], "eta": ["1"]})).unwrap_err();
        assert_eq!(err.to_string(), "at /mu: expected 2x4");
        let err =
            algebra_from_json(&json!({"dim": 1, "mu": [["1"]], "eta": ["1"], "pairing": [["0"]]}))
                .unwrap_err();
        assert_eq!(err, Error::PairingDegenerate { rank: 0, dim: 1 });
    }

    #[test]
    fn dual_pairs_round_trip() {
        let p = DualPair::<Q>::standard(2);
        let v = dual_pair_to_json(&p);
        assert_eq!(
            to_text(&v),
            r#"{"dimU":2,"dimV":2,"b":["1","0","0","1"],"d":["1","0","0","1"]}"#
        );
        assert_eq!(dual_pair_from_json(&v, true).unwrap(), p);
        let bad = json!({"dimU": 1, "dimV": 1, "b": ["2"], "d": ["1"]});
        assert!(matches!(
            dual_pair_from_json(&bad, true),
            Err(Error::ZorroViolation(_))
        ));
        assert!(dual_pair_from_json(&bad, false).is_ok());
    }

    #[test]
    fn fusion_rings_round_trip() {
        for r in [fibonacci(), ising()] {
            assert_eq!(fusion_ring_from_json(&fusion_ring_to_json(&r)).unwrap(), r);
        }
        let err = fusion_ring_from_json(&json!({"labels": ["1"], "dual": [0], "N": [[[-1]]]}))
            .unwrap_err();
        assert_eq!(
            err.to_string(),
            "at /N/0/0/0: expected a nonnegative integer"
        );
    }

    #[test]
    fn signatures_round_trip() {
        for sig in [bord1_signature(), bord2_signature()] {
            let v = signature_to_json(&sig);
            assert_eq!(signature_from_json(&v).unwrap(), sig);
        }
        let err = signature_from_json(&json!({
            "objects": ["x"],
            "generators": {"f": {"src": ["x"], "tgt": ["x"]}},
            "relations": [{"lhs": "f ; ", "rhs": "f"}]
        }))
        .unwrap_err();
        assert!(
            err.to_string()
                .starts_with("at /relations/0/lhs: parse error at byte 4"),
            "{err}"
        );
    }

    #[test]
    fn interpretations_round_trip() {
        let z2: FrobeniusAlgebra<Q> = group_algebra(&zn_table(2)).unwrap();
        let z = frobenius_interpretation(&z2).unwrap();
        let v = interpretation_to_json(&z);
        assert_eq!(interpretation_from_json(&v, bord2_signature()).unwrap(), z);
    }
}
