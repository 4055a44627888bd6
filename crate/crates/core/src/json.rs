//! JSON import and export for subspaces, cyclotomic integers, formal sums
//! and Jordan bases.
//!
//! Integers that do not fit in an `i64` are written as decimal strings;
//! both forms are accepted on input. Imported subspaces are re-reduced to
//! Schubert normal form, so any spanning column set is accepted.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::gflinalg::Subspace;
use crate::lattice::LatticeVector;
use crate::sjb::{JordanChain, Sjb};

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

fn int_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => Value::String(x.to_string()),
    }
}

fn parse_int(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => Ok(BigInt::from(i)),
            (_, Some(u)) => Ok(BigInt::from(u)),
            _ => bad(format!("{what}: {n} is not an integer")),
        },
        Value::String(s) => s
            .parse()
            .or_else(|_| bad(format!("{what}: {s:?} is not an integer"))),
        _ => bad(format!("{what}: expected an integer")),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key)
        .map_or_else(|| bad(format!("{what}: missing \"{key}\"")), Ok)
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .map_or_else(|| bad(format!("{what}: expected an object")), Ok)
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .map_or_else(|| bad(format!("{what}: expected an array")), Ok)
}

fn small(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .map_or_else(
            || bad(format!("{what}: expected a nonnegative integer")),
            Ok,
        )
}

pub fn subspace_to_json(x: &Subspace) -> Value {
    json!({
        "n": x.ambient(),
        "k": x.dim(),
        "cols": x.columns().map(<[u8]>::to_vec).collect::<Vec<_>>(),
    })
}

pub fn subspace_from_json(v: &Value, q: u8) -> Result<Subspace> {
    let obj = object(v, "subspace")?;
    let n = small(field(obj, "n", "subspace")?, "subspace.n")?;
    let k = small(field(obj, "k", "subspace")?, "subspace.k")?;
    let cols = array(field(obj, "cols", "subspace")?, "subspace.cols")?
        .iter()
        .map(|c| {
            array(c, "subspace column")?
                .iter()
                .map(|e| match e.as_u64() {
                    Some(x) if x < q as u64 => Ok(x as u8),
                    _ => bad(format!("subspace entry {e} is not in 0..{q}")),
                })
                .collect::<Result<Vec<u8>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if cols.len() != k {
        return bad(format!("subspace: {} columns but k = {k}", cols.len()));
    }
    if cols.iter().any(|c| c.len() != n) {
        return bad(format!("subspace: column length differs from n = {n}"));
    }
    let x = Subspace::span(q, n, &cols).map_err(|e| Error::Parse(e.to_string()))?;
    if x.dim() != k {
        return bad(format!(
            "subspace: columns span dimension {}, not k = {k}",
            x.dim()
        ));
    }
    Ok(x)
}

pub fn cycint_to_json(z: &CycInt) -> Value {
    match z.as_monomial() {
        Some((m, j)) => json!({ "m": int_value(&m), "j": j }),
        None => json!({ "coeffs": z.coeffs().iter().map(int_value).collect::<Vec<_>>() }),
    }
}

pub fn cycint_from_json(v: &Value, p: u32) -> Result<CycInt> {
    let obj = object(v, "coefficient")?;
    if let Some(c) = obj.get("coeffs") {
        let coeffs = array(c, "coeffs")?
            .iter()
            .map(|x| parse_int(x, "coeffs"))
            .collect::<Result<Vec<_>>>()?;
        return CycInt::from_coeffs(p, coeffs).map_err(|e| Error::Parse(e.to_string()));
    }
    let m = parse_int(field(obj, "m", "coefficient")?, "coefficient.m")?;
    let j = small(field(obj, "j", "coefficient")?, "coefficient.j")?;
    Ok(CycInt::monomial(p, m, j as u64))
}

pub fn vector_to_json(v: &LatticeVector) -> Value {
    json!({
        "n": v.ambient(),
        "q": v.prime(),
        "terms": v
            .terms()
            .map(|(x, c)| json!({ "subspace": subspace_to_json(x), "coeff": cycint_to_json(c) }))
            .collect::<Vec<_>>(),
    })
}

pub fn vector_from_json(v: &Value) -> Result<LatticeVector> {
    let obj = object(v, "vector")?;
    let n = small(field(obj, "n", "vector")?, "vector.n")?;
    let q = small(field(obj, "q", "vector")?, "vector.q")?;
    let q = crate::check_prime(q as u64)?;
    let mut out = LatticeVector::zero(q as u32, n);
    for t in array(field(obj, "terms", "vector")?, "vector.terms")? {
        let t = object(t, "term")?;
        let x = subspace_from_json(field(t, "subspace", "term")?, q)?;
        if x.ambient() != n {
            return bad(format!("term {x} does not live in dimension {n}"));
        }
        let c = cycint_from_json(field(t, "coeff", "term")?, q as u32)?;
        out.try_add_term(x, &c)?;
    }
    Ok(out)
}

pub fn basis_to_json(b: &Sjb) -> Value {
    json!({
        "q": b.q,
        "n": b.n,
        "chains": b
            .chains
            .iter()
            .map(|c| json!({
                "start_rank": c.start_rank,
                "vectors": c.vectors.iter().map(vector_to_json).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn basis_from_json(v: &Value) -> Result<Sjb> {
    let obj = object(v, "basis")?;
    let q = small(field(obj, "q", "basis")?, "basis.q")?;
    let q = crate::check_prime(q as u64)?;
    let n = small(field(obj, "n", "basis")?, "basis.n")?;
    let chains = array(field(obj, "chains", "basis")?, "basis.chains")?
        .iter()
        .map(|c| {
            let c = object(c, "chain")?;
            let start_rank = small(field(c, "start_rank", "chain")?, "chain.start_rank")?;
            let vectors = array(field(c, "vectors", "chain")?, "chain.vectors")?
                .iter()
                .map(vector_from_json)
                .collect::<Result<Vec<_>>>()?;
            Ok(JordanChain {
                start_rank,
                vectors,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sjb { q, n, chains })
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
