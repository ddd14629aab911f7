//! Stable JSON forms. Objects serialize with sorted keys (serde_json maps
//! are B-trees), elements use the `gf` text format verbatim, polynomials
//! are ascending coefficient arrays, and permutations one-line arrays.
//! Vectors are row vectors; matrices act on column vectors.

use serde_json::{json, Map, Value};

use crate::codes::LinearCode;
use crate::gf::{Field, FieldElement};
use crate::linalg::{MatrixFq, Subspace, Vector};
use crate::monomial::{MonomialMatrix, Permutation};
use crate::poly::Polynomial;
use crate::structure::CharacteristicReport;
use crate::{Error, Result};

fn parse_err(context: &str, token: impl ToString) -> Error {
    Error::Parse {
        context: context.into(),
        token: token.to_string(),
        position: 0,
    }
}

pub fn field_to_json(field: &Field) -> Value {
    json!({ "p": field.p(), "m": field.m() })
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    let p = v
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("field", v))?;
    let m = v.get("m").and_then(Value::as_u64).unwrap_or(1);
    Field::new(p, m as u32)
}

pub fn vector_to_json(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(|e| Value::String(e.to_string())).collect())
}

pub fn vector_from_json(field: &Field, v: &Value) -> Result<Vector> {
    let arr = v.as_array().ok_or_else(|| parse_err("vector", v))?;
    arr.iter()
        .map(|e| {
            let s = e.as_str().ok_or_else(|| parse_err("vector entry", e))?;
            field.parse_element(s)
        })
        .collect()
}

pub fn matrix_to_json(m: &MatrixFq) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "field": field_to_json(m.field()),
        "entries": Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect()),
    })
}

pub fn matrix_from_json(v: &Value) -> Result<MatrixFq> {
    let field = field_from_json(v.get("field").ok_or_else(|| parse_err("matrix", v))?)?;
    let rows = v
        .get("rows")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("matrix rows", v))? as usize;
    let cols = v
        .get("cols")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("matrix cols", v))? as usize;
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("matrix entries", v))?;
    if entries.len() != rows {
        return Err(Error::LengthMismatch {
            expected: rows,
            found: entries.len(),
        });
    }
    let mut out = Vec::with_capacity(rows);
    for row in entries {
        let r = vector_from_json(&field, row)?;
        if r.len() != cols {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        out.push(r);
    }
    Ok(MatrixFq::from_rows(&field, out))
}

/// Ascending coefficient array; the zero polynomial is `[]`.
pub fn poly_to_json(p: &Polynomial) -> Value {
    vector_to_json(p.coeffs())
}

pub fn poly_from_json(field: &Field, v: &Value) -> Result<Polynomial> {
    Ok(Polynomial::new(field, vector_from_json(field, v)?))
}

pub fn subspace_to_json(s: &Subspace) -> Value {
    Value::Array(
        (0..s.dim())
            .map(|i| vector_to_json(s.basis().row(i)))
            .collect(),
    )
}

pub fn permutation_to_json(p: &Permutation) -> Value {
    Value::Array(p.one_line().iter().map(|&j| json!(j)).collect())
}

pub fn permutation_from_json(v: &Value) -> Result<Permutation> {
    let arr = v.as_array().ok_or_else(|| parse_err("permutation", v))?;
    let map = arr
        .iter()
        .map(|e| {
            e.as_u64()
                .map(|j| j as usize)
                .ok_or_else(|| parse_err("permutation entry", e))
        })
        .collect::<Result<Vec<usize>>>()?;
    Permutation::new(map)
}

/// The code record: field, length, associated vector, permutation,
/// component selection, defining polynomial, dimension, RREF basis, and
/// the minimum distance when it has been computed.
pub fn code_to_json(c: &LinearCode) -> Value {
    let mut obj = Map::new();
    obj.insert("field".into(), field_to_json(c.matrix().field()));
    obj.insert("n".into(), json!(c.n()));
    obj.insert("a".into(), vector_to_json(c.matrix().coeffs()));
    obj.insert("sigma".into(), permutation_to_json(c.matrix().sigma()));
    obj.insert(
        "selection".into(),
        Value::Array(c.selection().iter().map(|&i| json!(i)).collect()),
    );
    obj.insert("g".into(), poly_to_json(c.generator_poly()));
    obj.insert("k".into(), json!(c.dim()));
    obj.insert("basis".into(), subspace_to_json(c.space()));
    if let Some(d) = c.cached_distance() {
        obj.insert("d".into(), json!(d));
    }
    Value::Object(obj)
}

/// Rebuilds a code from its record by re-running the decomposition and
/// verifying the stored polynomial, dimension, basis and distance against
/// the recomputed ones.
pub fn code_from_json(v: &Value) -> Result<LinearCode> {
    let field = field_from_json(v.get("field").ok_or_else(|| parse_err("code", v))?)?;
    let a = vector_from_json(&field, v.get("a").ok_or_else(|| parse_err("code a", v))?)?;
    let sigma = permutation_from_json(v.get("sigma").ok_or_else(|| parse_err("code sigma", v))?)?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("code n", v))? as usize;
    if a.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: a.len(),
        });
    }
    let selection: Vec<usize> = v
        .get("selection")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("code selection", v))?
        .iter()
        .map(|e| {
            e.as_u64()
                .map(|i| i as usize)
                .ok_or_else(|| parse_err("selection entry", e))
        })
        .collect::<Result<_>>()?;
    let matrix = MonomialMatrix::build_general(a, sigma)?;
    let decomposition = crate::codes::decompose(&matrix)?;
    let code = decomposition.make_code(&selection)?;

    let stored_g = poly_from_json(&field, v.get("g").ok_or_else(|| parse_err("code g", v))?)?;
    if &stored_g != code.generator_poly() {
        return Err(parse_err("code record", "defining polynomial mismatch"));
    }
    let stored_k = v
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("code k", v))? as usize;
    if stored_k != code.dim() {
        return Err(parse_err("code record", "dimension mismatch"));
    }
    let basis = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("code basis", v))?;
    let rows: Vec<Vector> = basis
        .iter()
        .map(|r| vector_from_json(&field, r))
        .collect::<Result<_>>()?;
    let stored_space = Subspace::from_rows(&field, n, rows.clone());
    if rows.len() != code.dim() || &stored_space != code.space() {
        return Err(parse_err("code record", "basis mismatch"));
    }
    if let Some(d) = v.get("d") {
        let d = d.as_u64().ok_or_else(|| parse_err("code d", d))? as usize;
        if code.min_distance()? != d {
            return Err(parse_err("code record", "distance mismatch"));
        }
    }
    Ok(code)
}

pub fn characteristic_report_to_json(r: &CharacteristicReport) -> Value {
    let mut obj = Map::new();
    obj.insert("invariant".into(), json!(r.invariant));
    obj.insert("hyperinvariant".into(), json!(r.hyperinvariant));
    obj.insert("characteristic".into(), json!(r.status.as_str()));
    if let Some(w) = &r.witness {
        obj.insert("witness".into(), matrix_to_json(w));
    }
    Value::Object(obj)
}
