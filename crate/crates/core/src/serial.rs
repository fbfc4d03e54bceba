//! JSON encodings of points and morphisms.
//!
//! Matrices are row-major nested arrays; complex entries are `[re, im]` pairs.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grassmann::GrPoint;
use crate::linalg::{matrix_from_json, matrix_to_json, Field, Scalar, Tolerance};
use crate::mor::MorPoint;

fn frame_body<T: Scalar>(p: &GrPoint<T>) -> Value {
    json!({ "ambient_dim": p.ambient_dim(), "sub_dim": p.sub_dim(), "frame": matrix_to_json(p.frame()) })
}

pub fn grpoint_to_json<T: Scalar>(p: &GrPoint<T>) -> Value {
    let mut v = frame_body(p);
    v["field"] = json!(T::FIELD);
    v
}

pub fn morpoint_to_json<T: Scalar>(f: &MorPoint<T>) -> Value {
    json!({
        "field": T::FIELD,
        "source": frame_body(f.src()),
        "target": frame_body(f.dst()),
        "map": matrix_to_json(f.map()),
    })
}

pub(crate) fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Schema(format!("missing field {key:?}")))
}

pub(crate) fn get_usize(v: &Value, key: &str) -> Result<usize> {
    get(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Schema(format!("field {key:?} must be a non-negative integer")))
}

pub(crate) fn check_field<T: Scalar>(v: &Value) -> Result<()> {
    let field: Field = serde_json::from_value(get(v, "field")?.clone())
        .map_err(|e| Error::Schema(format!("field: {e}")))?;
    if field != T::FIELD {
        return Err(Error::FieldMismatch { expected: T::FIELD.as_str() });
    }
    Ok(())
}

fn frame_from_body<T: Scalar>(v: &Value, tol: &Tolerance) -> Result<GrPoint<T>> {
    let (m, k) = (get_usize(v, "ambient_dim")?, get_usize(v, "sub_dim")?);
    let frame = matrix_from_json::<T>(get(v, "frame")?, Some(k))?;
    if frame.shape() != (m, k) {
        return Err(Error::Schema(format!("frame has shape {:?}, expected ({m}, {k})", frame.shape())));
    }
    GrPoint::from_orthonormal(frame, tol)
}

pub fn grpoint_from_json<T: Scalar>(v: &Value, tol: &Tolerance) -> Result<GrPoint<T>> {
    check_field::<T>(v)?;
    frame_from_body(v, tol)
}

pub fn morpoint_from_json<T: Scalar>(v: &Value, tol: &Tolerance) -> Result<MorPoint<T>> {
    check_field::<T>(v)?;
    let src = frame_from_body::<T>(get(v, "source")?, tol)?;
    let dst = frame_from_body::<T>(get(v, "target")?, tol)?;
    let map = matrix_from_json::<T>(get(v, "map")?, Some(src.ambient_dim()))?;
    MorPoint::new(src, dst, map, tol)
}
