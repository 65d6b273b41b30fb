//! JSON encodings of matrices, pairs, Jordan data, component indices and
//! trace fingerprints. Scalars are written as strings in the scalar grammar.

use serde_json::{json, Map, Value};

use crate::components::{ComponentIndex, Counts};
use crate::error::{Error, Result};
use crate::exact_matrix::QMatrix;
use crate::git_quotient::{GitIndex, TraceFingerprint};
use crate::jordan_spec::JordanSpec;
use crate::qcommutant::MatrixPair;
use crate::qscalar::{Ell, FieldContext, QScalar};

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::invalid(format!("missing field `{key}`")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::invalid(format!("`{what}` must be a nonnegative integer")))
}

pub fn scalar_to_json(x: &QScalar) -> Value {
    Value::String(x.format())
}

/// Accepts a string in the scalar grammar or a JSON integer.
pub fn scalar_from_json(v: &Value, ctx: FieldContext) -> Result<QScalar> {
    match v {
        Value::String(s) => QScalar::parse(s, ctx),
        Value::Number(n) => match n.as_i64() {
            Some(k) => Ok(QScalar::from_int(ctx, k)),
            None => Err(Error::invalid(format!(
                "non-integer number {n}; use a string"
            ))),
        },
        _ => Err(Error::invalid("scalar must be a string or an integer")),
    }
}

pub fn field_to_json(ctx: FieldContext) -> Value {
    serde_json::to_value(ctx).expect("plain enum")
}

pub fn field_from_json(v: &Value) -> Result<FieldContext> {
    let ctx: FieldContext =
        serde_json::from_value(v.clone()).map_err(|e| Error::invalid(format!("bad field: {e}")))?;
    if let FieldContext::Cyclotomic { ell } = ctx {
        FieldContext::cyclotomic(ell)?;
    }
    Ok(ctx)
}

pub fn matrix_to_json(m: &QMatrix) -> Value {
    let entries: Vec<Value> = m
        .to_rows()
        .iter()
        .map(|row| Value::Array(row.iter().map(scalar_to_json).collect()))
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn matrix_from_json(v: &Value, ctx: FieldContext) -> Result<QMatrix> {
    let rows = as_usize(field(v, "rows")?, "rows")?;
    let cols = as_usize(field(v, "cols")?, "cols")?;
    let entries = field(v, "entries")?
        .as_array()
        .ok_or_else(|| Error::invalid("`entries` must be an array of rows"))?;
    if entries.len() != rows {
        return Err(Error::DimensionMismatch(format!(
            "{} rows listed, {rows} declared",
            entries.len()
        )));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| Error::invalid("each row must be an array"))?;
        if row.len() != cols {
            return Err(Error::DimensionMismatch(format!(
                "row of length {}, {cols} declared",
                row.len()
            )));
        }
        for x in row {
            data.push(scalar_from_json(x, ctx)?);
        }
    }
    QMatrix::new(ctx, rows, cols, data)
}

pub fn pair_to_json(p: &MatrixPair) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("field".into(), field_to_json(p.ctx()));
    obj.insert("A".into(), matrix_to_json(p.a()));
    obj.insert("B".into(), matrix_to_json(p.b()));
    obj
}

/// The two matrices of a pair file, before the relation is checked.
pub fn raw_pair_from_json(v: &Value) -> Result<(QMatrix, QMatrix)> {
    let ctx = field_from_json(field(v, "field")?)?;
    Ok((
        matrix_from_json(field(v, "A")?, ctx)?,
        matrix_from_json(field(v, "B")?, ctx)?,
    ))
}

pub fn pair_from_json(v: &Value) -> Result<MatrixPair> {
    let (a, b) = raw_pair_from_json(v)?;
    MatrixPair::new(a, b)
}

/// Optional `"hints"` array of eigenvalue candidates.
pub fn hints_from_json(v: &Value, ctx: FieldContext) -> Result<Vec<QScalar>> {
    match v.get("hints") {
        None => Ok(Vec::new()),
        Some(Value::Array(xs)) => xs.iter().map(|x| scalar_from_json(x, ctx)).collect(),
        Some(_) => Err(Error::invalid("`hints` must be an array")),
    }
}

pub fn spec_to_json(spec: &JordanSpec) -> Value {
    let blocks: Vec<Value> = spec
        .canonical()
        .blocks()
        .iter()
        .map(|b| json!({ "eigenvalue": scalar_to_json(&b.eigenvalue), "partition": b.partition.parts() }))
        .collect();
    json!({ "blocks": blocks })
}

fn counts_to_json(c: &Counts, dense_len: Option<usize>) -> Value {
    match dense_len {
        Some(len) => json!(c.dense(len)),
        None => Value::Object(
            c.iter()
                .map(|(size, count)| (size.to_string(), json!(count)))
                .collect(),
        ),
    }
}

fn counts_from_json(v: &Value, what: &str) -> Result<Counts> {
    match v {
        Value::Array(xs) => {
            let dense = xs
                .iter()
                .map(|x| as_usize(x, what))
                .collect::<Result<Vec<_>>>()?;
            Ok(Counts::from_dense(&dense))
        }
        Value::Object(map) => {
            let mut c = Counts::new();
            for (k, x) in map {
                let size: usize = k
                    .parse()
                    .ok()
                    .filter(|&s| s >= 1)
                    .ok_or_else(|| Error::invalid(format!("bad size `{k}` in `{what}`")))?;
                c.add(size, as_usize(x, what)?);
            }
            Ok(c)
        }
        _ => Err(Error::invalid(format!(
            "`{what}` must be an array or object"
        ))),
    }
}

/// Dense arrays (m of length ℓ, r of length ℓ − 1) for finite ℓ, sparse
/// `{"size": count}` objects for ℓ = ∞.
pub fn index_to_json(idx: &ComponentIndex) -> Map<String, Value> {
    let (m_len, r_len) = match idx.ell() {
        Ell::Finite(l) => (Some(l), Some(l - 1)),
        Ell::Infinite => (None, None),
    };
    let mut obj = Map::new();
    obj.insert("m".into(), counts_to_json(idx.m(), m_len));
    obj.insert("r".into(), counts_to_json(idx.r(), r_len));
    obj
}

/// Accepts either encoding; a missing `r` is empty.
pub fn index_from_json(v: &Value, ell: Ell) -> Result<ComponentIndex> {
    let m = counts_from_json(field(v, "m")?, "m")?;
    let r = match v.get("r") {
        Some(r) => counts_from_json(r, "r")?,
        None => Counts::new(),
    };
    ComponentIndex::new(ell, m, r)
}

pub fn git_index_to_json(g: &GitIndex) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("p".into(), json!(g.p));
    obj.insert("m".into(), json!(g.m));
    obj.insert("r".into(), json!(g.r));
    obj
}

pub fn fingerprint_to_json(fp: &TraceFingerprint) -> Value {
    let grid: Vec<Value> = fp
        .grid
        .iter()
        .map(|row| Value::Array(row.iter().map(scalar_to_json).collect()))
        .collect();
    json!({ "N": fp.max_degree, "T": grid })
}
