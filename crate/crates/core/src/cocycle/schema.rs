//! JSON encoding of cocycles.
//!
//! ```text
//! { "version": 1, "field": "real" | "complex", "rank": k,
//!   "base": { "tag": "interval_cover_circle" | "two_disk_sphere" | "abstract",
//!             "patches":  [ { "id": "U0", "samples": [[t], ...] }, ... ],
//!             "overlaps": [ { "from": "U0", "to": "U1", "samples": [[t], ...] }, ... ] },
//!   "locals":      [ [ frame (m × k), ... one per patch sample ], ... one per patch ],
//!   "transitions": [ [ map (m × m), ... one per overlap sample ], ... one per overlap ] }
//! ```

use serde_json::{json, Value};

use super::{BaseComplex, BaseTag, CechCocycle, Overlap, Patch};
use crate::error::{Error, Result};
use crate::grassmann::GrPoint;
use crate::linalg::{matrix_from_json, matrix_to_json, Scalar, Tolerance};
use crate::serial::{check_field, get, get_usize};

pub const SCHEMA_VERSION: u64 = 1;

fn params_to_json(samples: &[Vec<f64>]) -> Value {
    json!(samples)
}

pub fn cocycle_to_json<T: Scalar>(c: &CechCocycle<T>) -> Value {
    let base = c.base();
    let id = |i: usize| base.patches[i].id.clone();
    json!({
        "version": SCHEMA_VERSION,
        "field": T::FIELD,
        "rank": c.rank(),
        "base": {
            "tag": base.tag,
            "patches": base.patches.iter().map(|p| json!({ "id": p.id, "samples": params_to_json(&p.samples) })).collect::<Vec<_>>(),
            "overlaps": base.overlaps.iter().map(|o| json!({ "from": id(o.from), "to": id(o.to), "samples": params_to_json(&o.samples) })).collect::<Vec<_>>(),
        },
        "locals": (0..base.patches.len())
            .map(|p| c.locals(p).iter().map(|x| matrix_to_json(x.frame())).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "transitions": (0..base.overlaps.len())
            .map(|o| c.transitions(o).iter().map(|f| matrix_to_json(f.map())).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Schema(format!("{what} must be an array")))
}

fn params(v: &Value, what: &str) -> Result<Vec<Vec<f64>>> {
    array(v, what)?
        .iter()
        .map(|p| {
            array(p, what)?
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| Error::Schema(format!("{what}: parameters must be numbers"))))
                .collect()
        })
        .collect()
}

/// Reads the field `version`, which must be present and supported.
pub(crate) fn check_version(v: &Value) -> Result<()> {
    match get(v, "version")?.as_u64() {
        Some(SCHEMA_VERSION) => Ok(()),
        other => Err(Error::Schema(format!("unsupported version {other:?}, expected {SCHEMA_VERSION}"))),
    }
}

fn base_from_json(v: &Value) -> Result<BaseComplex> {
    let tag: BaseTag =
        serde_json::from_value(get(v, "tag")?.clone()).map_err(|e| Error::Schema(format!("base.tag: {e}")))?;
    let patches = array(get(v, "patches")?, "base.patches")?
        .iter()
        .map(|p| {
            let id = get(p, "id")?.as_str().ok_or_else(|| Error::Schema("patch id must be a string".into()))?;
            Ok(Patch { id: id.to_string(), samples: params(get(p, "samples")?, "patch samples")? })
        })
        .collect::<Result<Vec<_>>>()?;
    let lookup = |name: &Value| -> Result<usize> {
        let name = name.as_str().ok_or_else(|| Error::Schema("overlap endpoints must be patch ids".into()))?;
        patches
            .iter()
            .position(|p| p.id == name)
            .ok_or_else(|| Error::Schema(format!("overlap names unknown patch {name:?}")))
    };
    let overlaps = array(get(v, "overlaps")?, "base.overlaps")?
        .iter()
        .map(|o| {
            Ok(Overlap {
                from: lookup(get(o, "from")?)?,
                to: lookup(get(o, "to")?)?,
                samples: params(get(o, "samples")?, "overlap samples")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BaseComplex { tag, patches, overlaps })
}

pub fn cocycle_from_json<T: Scalar>(v: &Value, tol: &Tolerance) -> Result<CechCocycle<T>> {
    check_version(v)?;
    check_field::<T>(v)?;
    let rank = get_usize(v, "rank")?;
    let base = base_from_json(get(v, "base")?)?;
    let locals = array(get(v, "locals")?, "locals")?
        .iter()
        .map(|row| {
            array(row, "locals entry")?
                .iter()
                .map(|f| {
                    let frame = matrix_from_json::<T>(f, Some(rank))?;
                    if frame.ncols() != rank {
                        return Err(Error::Schema(format!("local frame has {} columns, rank is {rank}", frame.ncols())));
                    }
                    GrPoint::from_orthonormal(frame, tol)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let maps = array(get(v, "transitions")?, "transitions")?
        .iter()
        .map(|row| array(row, "transitions entry")?.iter().map(|m| matrix_from_json::<T>(m, None)).collect())
        .collect::<Result<Vec<_>>>()?;
    CechCocycle::new(base, rank, locals, maps)
}
