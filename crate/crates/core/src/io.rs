//! JSON encodings of the public data types.
//!
//! Rationals are `"p/q"` strings and roots are integer coefficient arrays.

use serde_json::{json, Map, Value};

use crate::apartment::{ApartmentPoint, BoundedSet};
use crate::concave::{ConcaveMap, ConcaveTuple, MoyPrasadDatum, TypeWitness};
use crate::error::{Error, Result};
use crate::fibre::{FibreRootDatum, McKayData};
use crate::rational::{fmt_q, parse_q, Q};
use crate::rootsystem::{DynkinType, Root, RootSystem};
use crate::series::{Coeff, TruncatedSeries};
use crate::seriesgroup::{TruncatedLaurentMatrix, ValuationPattern};

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn q_json(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

fn q_from(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap().into())),
        _ => Err(bad("a rational string", v)),
    }
}

fn int_from(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad("an integer", v))
}

fn ints_from(v: &Value) -> Result<Vec<i64>> {
    v.as_array().ok_or_else(|| bad("an integer array", v))?.iter().map(int_from).collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn dynkin_from(v: &Value) -> Result<DynkinType> {
    field(v, "type")?.as_str().ok_or_else(|| bad("a type name", v))?.parse()
}

pub fn root_json(r: &Root) -> Value {
    json!(r.coeffs)
}

pub fn root_from_json(v: &Value) -> Result<Root> {
    Ok(Root::new(ints_from(v)?))
}

pub fn point_to_json(p: &ApartmentPoint) -> Value {
    Value::Array(p.coords.iter().map(q_json).collect())
}

pub fn point_from_json(dynkin: DynkinType, v: &Value) -> Result<ApartmentPoint> {
    let coords: Vec<Q> = v.as_array().ok_or_else(|| bad("a coordinate array", v))?.iter().map(q_from).collect::<Result<_>>()?;
    if coords.len() != dynkin.rank {
        return Err(Error::RankMismatch { expected: dynkin.rank.to_string(), found: coords.len().to_string() });
    }
    Ok(ApartmentPoint::new(dynkin, coords))
}

pub fn set_to_json(omega: &BoundedSet) -> Value {
    Value::Array(omega.points().iter().map(point_to_json).collect())
}

pub fn set_from_json(dynkin: DynkinType, v: &Value) -> Result<BoundedSet> {
    let pts = v.as_array().ok_or_else(|| bad("an array of points", v))?;
    BoundedSet::new(pts.iter().map(|p| point_from_json(dynkin, p)).collect::<Result<_>>()?)
}

pub fn concave_to_json(rs: &RootSystem, f: &ConcaveMap) -> Value {
    let mut values = Map::new();
    for (r, v) in rs.roots().iter().zip(&f.values) {
        values.insert(r.to_string(), q_json(v));
    }
    json!({"type": f.dynkin.to_string(), "zero": q_json(&f.zero), "values": values})
}

pub fn concave_from_json(v: &Value) -> Result<ConcaveMap> {
    let rs = RootSystem::build(dynkin_from(v)?)?;
    let zero = match v.get("zero") {
        Some(z) => q_from(z)?,
        None => Q::from_integer(0.into()),
    };
    let obj = field(v, "values")?.as_object().ok_or_else(|| bad("an object of root values", v))?;
    let mut values: Vec<Option<Q>> = vec![None; rs.len()];
    for (key, val) in obj {
        let i = rs.require_index(&key.parse()?)?;
        values[i] = Some(q_from(val)?);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| Error::Parse(format!("no value for root {}", rs.root(i)))))
        .collect::<Result<_>>()?;
    ConcaveMap::new(&rs, zero, values)
}

/// A tuple is an array of maps; a single map is accepted as a 1-tuple.
pub fn tuple_from_json(v: &Value) -> Result<ConcaveTuple> {
    match v {
        Value::Array(items) => ConcaveTuple::new(items.iter().map(concave_from_json).collect::<Result<_>>()?),
        _ => ConcaveTuple::new(vec![concave_from_json(v)?]),
    }
}

pub fn tuple_to_json(rs: &RootSystem, fs: &ConcaveTuple) -> Value {
    Value::Array(fs.entries().iter().map(|f| concave_to_json(rs, f)).collect())
}

pub fn witness_to_json(w: &TypeWitness) -> Value {
    match w {
        TypeWitness::TypeI(p) => json!({"type": w.label(), "theta": point_to_json(p)}),
        TypeWitness::TypeII(o) => json!({"type": w.label(), "omega": set_to_json(o)}),
        TypeWitness::TypeIII(r) => json!({"type": w.label(), "certificate": root_json(r)}),
    }
}

pub fn moy_prasad_to_json(rs: &RootSystem, d: &MoyPrasadDatum) -> Value {
    let mut values = Map::new();
    for (r, v) in rs.roots().iter().zip(&d.root_values) {
        values.insert(r.to_string(), json!(v));
    }
    json!({
        "type": rs.dynkin().to_string(),
        "theta": point_to_json(&d.theta),
        "depth": q_json(&d.depth),
        "torus_level": d.torus_level,
        "root_values": values,
    })
}

pub fn fibre_to_json(f: &FibreRootDatum) -> Value {
    Value::Array(f.roots().iter().map(root_json).collect())
}

pub fn fibre_from_json(rs: &RootSystem, v: &Value) -> Result<FibreRootDatum> {
    let roots: Vec<Root> =
        v.as_array().ok_or_else(|| bad("an array of roots", v))?.iter().map(root_from_json).collect::<Result<_>>()?;
    FibreRootDatum::from_roots(rs, &roots)
}

pub fn mckay_to_json(rs: &RootSystem, m: &McKayData) -> Value {
    let components: Vec<Value> = m
        .components
        .iter()
        .map(|c| json!({"s": c.s, "tau_s": c.tau_s, "theta": point_to_json(&c.theta)}))
        .collect();
    let nodes: Vec<Value> = m
        .node_functions
        .iter()
        .zip(&m.node_fibres)
        .enumerate()
        .map(|(k, (f, fib))| json!({"s": k + 1, "function": concave_to_json(rs, f), "fibre": fibre_to_json(fib)}))
        .collect();
    json!({
        "type": rs.dynkin().to_string(),
        "d": m.d,
        "tau": m.tau,
        "end_types": [m.end_types.0, m.end_types.1],
        "alcove_reduced": m.alcove_reduced,
        "components": components,
        "nodes": nodes,
    })
}

pub fn series_to_json<C: Coeff>(s: &TruncatedSeries<C>) -> Value {
    Value::Array(s.terms().iter().map(|(e, c)| json!({"exp": e, "coef": q_json(&c.to_q())})).collect())
}

pub fn series_from_json<C: Coeff>(nvars: usize, cap: u32, pole_cap: u32, v: &Value) -> Result<TruncatedSeries<C>> {
    let items = v.as_array().ok_or_else(|| bad("an array of terms", v))?;
    let mut terms = Vec::with_capacity(items.len());
    for t in items {
        let exp = ints_from(field(t, "exp")?)?;
        let q = q_from(field(t, "coef")?)?;
        let c = C::from_q(&q).ok_or_else(|| Error::Parse(format!("coefficient {} is not defined here", fmt_q(&q))))?;
        terms.push((exp, c));
    }
    TruncatedSeries::from_terms(nvars, cap, pole_cap, terms)
}

pub fn matrix_to_json<C: Coeff>(m: &TruncatedLaurentMatrix<C>) -> Value {
    let entries: Vec<Value> =
        m.rows().iter().map(|row| Value::Array(row.iter().map(series_to_json).collect())).collect();
    json!({"m": m.size(), "nvars": m.nvars(), "cap": m.cap(), "pole_cap": m.pole_cap(), "entries": entries})
}

fn u32_field(v: &Value, key: &str) -> Result<u32> {
    let x = int_from(field(v, key)?)?;
    u32::try_from(x).map_err(|_| Error::Parse(format!("{key} must be nonnegative, got {x}")))
}

pub fn matrix_from_json<C: Coeff>(v: &Value) -> Result<TruncatedLaurentMatrix<C>> {
    let nvars = u32_field(v, "nvars")? as usize;
    let cap = u32_field(v, "cap")?;
    let pole_cap = match v.get("pole_cap") {
        Some(_) => u32_field(v, "pole_cap")?,
        None => 0,
    };
    let rows = field(v, "entries")?.as_array().ok_or_else(|| bad("an array of rows", v))?;
    let entries = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("a row of entries", row))?
                .iter()
                .map(|e| series_from_json(nvars, cap, pole_cap, e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = TruncatedLaurentMatrix::from_rows(entries)?;
    if let Some(size) = v.get("m") {
        if int_from(size)? as usize != m.size() {
            return Err(Error::SizeMismatch(format!("declared m = {size}, found {} rows", m.size())));
        }
    }
    Ok(m)
}

pub fn pattern_to_json(p: &ValuationPattern) -> Value {
    let bounds: Vec<Value> = (0..p.m)
        .map(|i| Value::Array((0..p.m).map(|j| if i == j { Value::Null } else { json!(p.bounds[i][j]) }).collect()))
        .collect();
    json!({"m": p.m, "nvars": p.nvars, "diag_unit_level": p.diag_unit_level, "bounds": bounds})
}

pub fn pattern_from_json(v: &Value) -> Result<ValuationPattern> {
    let m = u32_field(v, "m")? as usize;
    let nvars = u32_field(v, "nvars")? as usize;
    let diag_unit_level = match v.get("diag_unit_level") {
        Some(_) => u32_field(v, "diag_unit_level")?,
        None => 0,
    };
    let rows = field(v, "bounds")?.as_array().ok_or_else(|| bad("a bounds matrix", v))?;
    if rows.len() != m {
        return Err(Error::SizeMismatch(format!("{} bound rows for m = {m}", rows.len())));
    }
    let mut bounds = vec![vec![vec![0; nvars]; m]; m];
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == m).ok_or_else(|| bad("a bounds row of length m", row))?;
        for (j, b) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            let b = ints_from(b)?;
            if b.len() != nvars {
                return Err(Error::SizeMismatch(format!("bound {b:?} for {nvars} variables")));
            }
            bounds[i][j] = b;
        }
    }
    Ok(ValuationPattern { m, nvars, bounds, diag_unit_level })
}
