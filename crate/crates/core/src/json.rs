//! Polyhedron file format.
//!
//! ```json
//! {"dim": 2,
//!  "hrep": {"A": [["-1", "0"], ["0", "-1"]], "b": ["0", "0"]},
//!  "vrep": {"vertices": [["0", "0"]], "rays": [["1", "0"], ["0", "1"]], "lineality": []}}
//! ```
//!
//! Either representation may be omitted. Rationals are `"p/q"` or `"p"`
//! strings; bare JSON integers are accepted on input.

use serde_json::{json, Map, Value};

use crate::error::{GeomError, Result};
use crate::exact::{fmt_rat, parse_rat, Rat, RatMat, RatVec};
use crate::polyhedra::{HRep, Polyhedron, VRep};

fn perr(msg: impl Into<String>) -> GeomError {
    GeomError::Parse(msg.into())
}

fn rat_value(v: &Value, at: &str) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|e| match e {
            GeomError::Parse(m) => perr(format!("{at}: {m}")),
            other => other,
        }),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(n.as_i64().unwrap().into())),
        _ => Err(perr(format!("{at}: expected a rational string"))),
    }
}

fn vec_value(v: &Value, n: usize, at: &str) -> Result<RatVec> {
    let arr = v.as_array().ok_or_else(|| perr(format!("{at}: expected an array")))?;
    if arr.len() != n {
        return Err(GeomError::DimensionMismatch(format!("{at}: has {} entries, expected {n}", arr.len())));
    }
    arr.iter().enumerate().map(|(j, x)| rat_value(x, &format!("{at}[{j}]"))).collect()
}

fn vecs_value(v: Option<&Value>, n: usize, at: &str) -> Result<Vec<RatVec>> {
    let Some(v) = v else { return Ok(vec![]) };
    let arr = v.as_array().ok_or_else(|| perr(format!("{at}: expected an array")))?;
    arr.iter().enumerate().map(|(i, x)| vec_value(x, n, &format!("{at}[{i}]"))).collect()
}

fn rat_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn vecs_json(vs: &[RatVec]) -> Value {
    Value::Array(vs.iter().map(|v| vec_json(v)).collect())
}

pub fn hrep_from_json(v: &Value, n: usize) -> Result<HRep> {
    let a = vecs_value(Some(v.get("A").ok_or_else(|| perr("hrep: missing \"A\""))?), n, "hrep.A")?;
    let b_arr = v.get("b").and_then(Value::as_array).ok_or_else(|| perr("hrep: missing \"b\""))?;
    if b_arr.len() != a.len() {
        return Err(GeomError::DimensionMismatch(format!(
            "hrep: {} rows in A but {} entries in b",
            a.len(),
            b_arr.len()
        )));
    }
    let b = b_arr.iter().enumerate().map(|(i, x)| rat_value(x, &format!("hrep.b[{i}]"))).collect::<Result<_>>()?;
    Ok(HRep::new(RatMat::new(a, n), b))
}

pub fn vrep_from_json(v: &Value, n: usize) -> Result<VRep> {
    let vertices = vecs_value(v.get("vertices"), n, "vrep.vertices")?;
    if vertices.is_empty() {
        return Err(GeomError::Empty("vrep has no vertices".into()));
    }
    Ok(VRep {
        vertices,
        rays: vecs_value(v.get("rays"), n, "vrep.rays")?,
        lineality: vecs_value(v.get("lineality"), n, "vrep.lineality")?,
    })
}

/// Reads a polyhedron; when both representations are present they must
/// describe the same set.
pub fn polyhedron_from_json(v: &Value) -> Result<Polyhedron> {
    let n = v.get("dim").and_then(Value::as_u64).ok_or_else(|| perr("missing or invalid \"dim\""))? as usize;
    if n == 0 {
        return Err(perr("\"dim\" must be positive"));
    }
    let h = v.get("hrep").map(|h| hrep_from_json(h, n)).transpose()?;
    let g = v.get("vrep").map(|g| vrep_from_json(g, n)).transpose()?;
    match (h, g) {
        (Some(h), Some(g)) => Polyhedron::from_reps(h, g),
        (Some(h), None) => Polyhedron::from_hrep(h),
        (None, Some(g)) => Polyhedron::from_vrep(g),
        (None, None) => Err(perr("neither \"hrep\" nor \"vrep\" is present")),
    }
}

pub fn parse_polyhedron(text: &str) -> Result<Polyhedron> {
    let v: Value = serde_json::from_str(text).map_err(|e| perr(format!("invalid JSON: {e}")))?;
    polyhedron_from_json(&v)
}

pub fn hrep_json(h: &HRep) -> Value {
    json!({"A": vecs_json(&h.a.rows), "b": vec_json(&h.b)})
}

pub fn vrep_json(g: &VRep) -> Value {
    json!({"vertices": vecs_json(&g.vertices), "rays": vecs_json(&g.rays), "lineality": vecs_json(&g.lineality)})
}

/// Both representations in canonical form.
pub fn polyhedron_json(p: &Polyhedron) -> Value {
    let mut m = Map::new();
    m.insert("dim".into(), json!(p.dim()));
    m.insert("hrep".into(), hrep_json(p.hrep()));
    m.insert("vrep".into(), vrep_json(p.vrep()));
    Value::Object(m)
}

/// A subspace file: `{"dim": n, "basis": [[...], ...]}`.
pub fn parse_subspace(text: &str) -> Result<(usize, Vec<RatVec>)> {
    let v: Value = serde_json::from_str(text).map_err(|e| perr(format!("invalid JSON: {e}")))?;
    let n = v.get("dim").and_then(Value::as_u64).ok_or_else(|| perr("missing or invalid \"dim\""))? as usize;
    Ok((n, vecs_value(v.get("basis"), n, "basis")?))
}
