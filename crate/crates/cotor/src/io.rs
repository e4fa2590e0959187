//! Reading and writing complexes as JSON.
//!
//! The on-disk shape is one object per complex:
//!
//! ```json
//! {
//!   "ring": "Z/4",
//!   "lo": 0,
//!   "hi": 1,
//!   "modules": [
//!     { "gens": 1, "rels": [[2]] },
//!     { "gens": 1, "rels": [] }
//!   ],
//!   "differentials": [ [[2]] ]
//! }
//! ```
//!
//! `modules` runs bottom degree up, so `modules[i]` sits in degree `lo + i`
//! and `hi` must equal `lo + modules.len() - 1`. Each relation is an array
//! of `gens` coefficients. `differentials[i]` maps `modules[i+1]` down to
//! `modules[i]`, written as rows (so it has `gens(modules[i])` rows and
//! `gens(modules[i+1])` columns). Entries are JSON integers, except that
//! anything outside the 53-bit window is written — and accepted — as a
//! decimal string, so values survive readers that coerce numbers to
//! doubles. The empty complex is `"modules": []` with `lo` 0 and `hi` -1.
//!
//! Parsing rejects, with a degree-level diagnostic, anything that is not a
//! complex: mismatched shapes, rings, or a differential square that fails
//! to vanish.
//!
//! A single module travels as `{"ring", "gens", "rels"}` with the same
//! relation layout — see [`module_from_json`].

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::module::FpModule;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// Largest magnitude emitted as a plain JSON number; everything beyond
/// becomes a decimal string. 2^53 is where doubles stop being exact.
const SAFE_INT: i64 = 1 << 53;

fn int_to_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() < SAFE_INT => json!(v),
        _ => json!(x.to_string()),
    }
}

fn value_to_int(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else {
                Err(Error::Parse(format!(
                    "{what}: {n} is not an integer (write big values as decimal strings)"
                )))
            }
        }
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("{what}: \"{s}\" is not a decimal integer"))),
        other => Err(Error::Parse(format!("{what}: expected an integer, got {other}"))),
    }
}

fn ring_to_string(r: &Ring) -> String {
    match r.modulus() {
        None => "Z".to_string(),
        Some(n) => format!("Z/{n}"),
    }
}

/// Parse "Z" or "Z/n" (n >= 2).
pub fn ring_from_str(s: &str) -> Result<Ring> {
    let s = s.trim();
    if s == "Z" {
        return Ok(Ring::Z);
    }
    if let Some(n) = s.strip_prefix("Z/") {
        let n: BigInt = n
            .parse()
            .map_err(|_| Error::Parse(format!("ring \"{s}\": bad modulus")))?;
        return Ring::zmod(n);
    }
    Err(Error::Parse(format!(
        "ring \"{s}\": expected \"Z\" or \"Z/n\""
    )))
}

/// Rows of a matrix as JSON arrays of entries.
fn mat_rows(m: &Mat) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| int_to_value(m.at(i, j))).collect()))
        .collect();
    Value::Array(rows)
}

/// Relation columns of a presentation as JSON arrays of coefficients.
fn rel_columns(m: &FpModule) -> Value {
    let rels = m.rels();
    let cols: Vec<Value> = (0..rels.cols())
        .map(|j| Value::Array((0..rels.rows()).map(|i| int_to_value(rels.at(i, j))).collect()))
        .collect();
    Value::Array(cols)
}

/// Serialize a complex to the JSON shape above (pretty-printed).
pub fn complex_to_json(c: &ChainComplex) -> String {
    let mut obj = Map::new();
    obj.insert("ring".into(), json!(ring_to_string(c.ring())));
    let (lo, hi) = c.support().unwrap_or((0, -1));
    obj.insert("lo".into(), json!(lo));
    obj.insert("hi".into(), json!(hi));
    let mut modules = Vec::new();
    let mut differentials = Vec::new();
    for n in lo..=hi {
        let m = c.module(n);
        modules.push(json!({ "gens": m.num_gens(), "rels": rel_columns(&m) }));
        if n > lo {
            differentials.push(mat_rows(c.diff(n).mat()));
        }
    }
    obj.insert("modules".into(), Value::Array(modules));
    obj.insert("differentials".into(), Value::Array(differentials));
    serde_json::to_string_pretty(&Value::Object(obj)).expect("value is serializable")
}

fn field<'v>(obj: &'v Map<String, Value>, name: &str) -> Result<&'v Value> {
    obj.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field \"{name}\"")))
}

fn as_array<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an array")))
}

fn parse_matrix(v: &Value, ring: &Ring, rows: usize, cols: usize, what: &str) -> Result<Mat> {
    let row_vals = as_array(v, what)?;
    if row_vals.len() != rows {
        return Err(Error::Parse(format!(
            "{what}: expected {rows} rows, found {}",
            row_vals.len()
        )));
    }
    let mut m = Mat::zero(ring.clone(), rows, cols);
    for (i, rv) in row_vals.iter().enumerate() {
        let entries = as_array(rv, what)?;
        if entries.len() != cols {
            return Err(Error::Parse(format!(
                "{what}: row {i} has {} entries, expected {cols}",
                entries.len()
            )));
        }
        for (j, e) in entries.iter().enumerate() {
            let x = value_to_int(e, &format!("{what}[{i}][{j}]"))?;
            m.set(i, j, x);
        }
    }
    Ok(m)
}

fn parse_module(v: &Value, ring: &Ring, place: &str) -> Result<FpModule> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse(format!("module {place}: expected an object")))?;
    let gens = field(obj, "gens")?
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("module {place}: bad \"gens\"")))?
        as usize;
    let rel_vals = as_array(field(obj, "rels")?, &format!("rels {place}"))?;
    let mut rels = Mat::zero(ring.clone(), gens, rel_vals.len());
    for (j, rel) in rel_vals.iter().enumerate() {
        let coeffs = as_array(rel, &format!("relation {j} {place}"))?;
        if coeffs.len() != gens {
            return Err(Error::Parse(format!(
                "relation {j} {place} has {} coefficients, expected {gens}",
                coeffs.len()
            )));
        }
        for (i, cv) in coeffs.iter().enumerate() {
            let x = value_to_int(cv, &format!("relation {j} {place}"))?;
            rels.set(i, j, x);
        }
    }
    FpModule::new(ring.clone(), gens, rels)
}

/// Serialize a single module presentation as `{"ring", "gens", "rels"}`,
/// with `rels` in the same column layout complexes use.
pub fn module_to_json(m: &FpModule) -> String {
    let obj = json!({
        "ring": ring_to_string(m.ring()),
        "gens": m.num_gens(),
        "rels": rel_columns(m),
    });
    serde_json::to_string_pretty(&obj).expect("value is serializable")
}

/// Parse a standalone module presentation: `{"ring": "Z/4", "gens": 2,
/// "rels": [[2, 0]]}`.
pub fn module_from_json(text: &str) -> Result<FpModule> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("not valid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be an object".into()))?;
    let ring = ring_from_str(
        field(obj, "ring")?
            .as_str()
            .ok_or_else(|| Error::Parse("\"ring\" must be a string".into()))?,
    )?;
    parse_module(&v, &ring, "in file")
}

/// Parse a complex from the JSON shape above. The differential condition
/// d . d = 0 is enforced; a violation names the offending degree.
pub fn complex_from_json(text: &str) -> Result<ChainComplex> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("not valid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be an object".into()))?;
    let ring = ring_from_str(
        field(obj, "ring")?
            .as_str()
            .ok_or_else(|| Error::Parse("\"ring\" must be a string".into()))?,
    )?;
    let lo = value_to_int(field(obj, "lo")?, "lo")?
        .to_i64()
        .ok_or_else(|| Error::Parse("\"lo\" out of range".into()))?;
    let hi = value_to_int(field(obj, "hi")?, "hi")?
        .to_i64()
        .ok_or_else(|| Error::Parse("\"hi\" out of range".into()))?;
    let module_vals = as_array(field(obj, "modules")?, "modules")?;
    if module_vals.is_empty() {
        return Ok(ChainComplex::zero(ring));
    }
    if hi - lo + 1 != module_vals.len() as i64 {
        return Err(Error::Parse(format!(
            "window {lo}:{hi} holds {} degrees but \"modules\" has {} entries",
            hi - lo + 1,
            module_vals.len()
        )));
    }
    let modules: Vec<FpModule> = module_vals
        .iter()
        .enumerate()
        .map(|(i, mv)| parse_module(mv, &ring, &format!("at degree {}", lo + i as i64)))
        .collect::<Result<_>>()?;
    let diff_vals = as_array(field(obj, "differentials")?, "differentials")?;
    if diff_vals.len() + 1 != modules.len() {
        return Err(Error::Parse(format!(
            "{} modules need {} differentials, found {}",
            modules.len(),
            modules.len() - 1,
            diff_vals.len()
        )));
    }
    let mut diffs = Vec::new();
    for (i, dv) in diff_vals.iter().enumerate() {
        let rows = modules[i].num_gens();
        let cols = modules[i + 1].num_gens();
        let mat = parse_matrix(
            dv,
            &ring,
            rows,
            cols,
            &format!("differential into degree {}", lo + i as i64),
        )?;
        diffs.push(crate::module::ModuleHom::new(
            modules[i + 1].clone(),
            modules[i].clone(),
            mat,
        )?);
    }
    ChainComplex::new(ring, lo, modules, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexSampler;

    #[test]
    fn random_complexes_roundtrip() {
        for ring in [Ring::Z, Ring::zmod(12).unwrap()] {
            let mut sampler = ComplexSampler::new(ring, 42);
            for _ in 0..8 {
                let c = sampler.random_complex(-2, 4).unwrap();
                let back = complex_from_json(&complex_to_json(&c)).unwrap();
                assert!(c.same_presentation(&back));
            }
        }
    }

    #[test]
    fn the_zero_complex_roundtrips() {
        let c = ChainComplex::zero(Ring::Z);
        let back = complex_from_json(&complex_to_json(&c)).unwrap();
        assert!(back.is_zero_complex());
    }

    #[test]
    fn big_entries_become_strings_and_survive() {
        let huge: BigInt = BigInt::from(1u64 << 60) * 9 + 1;
        let m = FpModule::new(
            Ring::Z,
            1,
            Mat::new(Ring::Z, 1, 1, vec![huge.clone()]).unwrap(),
        )
        .unwrap();
        let c = ChainComplex::sphere(0, &m);
        let text = complex_to_json(&c);
        assert!(text.contains(&format!("\"{huge}\"")));
        let back = complex_from_json(&text).unwrap();
        assert!(c.same_presentation(&back));
    }

    #[test]
    fn module_presentations_roundtrip() {
        let r = Ring::zmod(4).unwrap();
        let m = FpModule::new(
            r.clone(),
            2,
            Mat::new(r, 2, 1, vec![BigInt::from(2), BigInt::from(0)]).unwrap(),
        )
        .unwrap();
        let back = module_from_json(&module_to_json(&m)).unwrap();
        assert_eq!(back.num_gens(), 2);
        assert_eq!(back.invariants(), m.invariants());
        assert!(module_from_json("{\"gens\": 1, \"rels\": []}").is_err());
    }

    #[test]
    fn broken_differentials_name_the_degree() {
        let text = r#"{
            "ring": "Z",
            "lo": 0,
            "hi": 2,
            "modules": [
                { "gens": 1, "rels": [] },
                { "gens": 1, "rels": [] },
                { "gens": 1, "rels": [] }
            ],
            "differentials": [ [[1]], [[1]] ]
        }"#;
        let err = complex_from_json(text).unwrap_err();
        assert!(err.to_string().contains("degree 0"), "got: {err}");
    }

    #[test]
    fn malformed_inputs_are_rejected_with_reasons() {
        let cases: Vec<(&str, &str)> = vec![
            (r#"{"ring": "Q", "lo": 0, "hi": 0, "modules": [], "differentials": []}"#, "ring"),
            (
                r#"{"ring": "Z", "lo": 0, "hi": 1, "modules": [{"gens": 1, "rels": []}], "differentials": []}"#,
                "degrees",
            ),
            (
                r#"{"ring": "Z", "lo": 0, "hi": 0, "modules": [{"gens": 2, "rels": [[1]]}], "differentials": []}"#,
                "coefficients",
            ),
            (
                r#"{"ring": "Z", "lo": 0, "hi": 0, "modules": [{"gens": 1, "rels": [[1.5]]}], "differentials": []}"#,
                "integer",
            ),
        ];
        for (text, needle) in cases {
            let err = complex_from_json(text).unwrap_err();
            assert!(
                err.to_string().contains(needle),
                "error for {text} was: {err}"
            );
        }
    }
}
