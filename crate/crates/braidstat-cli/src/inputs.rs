//! Resolution of racks, cocycles, fields and spaces from names or files.

use std::path::Path;

use braidstat::braided::BraidedSpace;
use braidstat::builtins::{cocycle_by_name, field_by_name, rack_by_name, space_by_name};
use braidstat::rack::{Cocycle2, Rack};
use braidstat::{Field, FieldSpec};
use serde_json::Value;

use crate::{Failure, ObjectArgs};

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// A JSON document when `s` names an existing file.
fn json_file(s: &str) -> Result<Option<Value>, Failure> {
    let p = Path::new(s);
    if !p.is_file() {
        if s.ends_with(".json") {
            return Err(usage(format!("file {s} not found")));
        }
        return Ok(None);
    }
    let text = std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read {s}: {e}")))?;
    serde_json::from_str(&text).map(Some).map_err(|e| usage(format!("{s}: invalid JSON: {e}")))
}

pub fn rack(s: &str) -> Result<Rack, Failure> {
    match json_file(s)? {
        Some(v) => Ok(Rack::from_json(&v)?),
        None => Ok(rack_by_name(s)?),
    }
}

pub fn field(obj: &ObjectArgs) -> Result<Option<Field>, Failure> {
    obj.field.as_deref().map(field_by_name).transpose().map_err(Failure::from)
}

/// The rack named by `--rack` with its display name.
pub fn rack_arg(obj: &ObjectArgs) -> Result<(String, Rack), Failure> {
    let name = obj.rack.clone().ok_or_else(|| usage("--rack is required"))?;
    let r = rack(&name)?;
    Ok((name, r))
}

/// The cocycle from `--rack`, `--cocycle` (default const:1) and `--field`.
/// A cocycle file may carry its own field.
pub fn cocycle(obj: &ObjectArgs) -> Result<(String, Cocycle2), Failure> {
    let (rname, r) = rack_arg(obj)?;
    let spec = obj.cocycle.clone().unwrap_or_else(|| "const:1".into());
    let given = field(obj)?;
    let c = match json_file(&spec)? {
        Some(v) => {
            let f = match (&given, v.get("field")) {
                (Some(f), _) => f.clone(),
                (None, Some(fs)) => {
                    let fs: FieldSpec = serde_json::from_value(fs.clone()).map_err(|e| usage(format!("{spec}: field: {e}")))?;
                    Field::new(&fs)?
                }
                (None, None) => Field::rational(),
            };
            Cocycle2::from_json(&r, &f, &v)?
        }
        None => cocycle_by_name(&r, given.as_ref().unwrap_or(&Field::rational()), &spec)?,
    };
    Ok((format!("{rname}:{spec}"), c))
}

/// The braided space from `--space`, or from `--rack` (with `--cocycle`
/// giving κR(c), without it the plain rack space).
pub fn space(obj: &ObjectArgs) -> Result<(String, BraidedSpace), Failure> {
    if let Some(s) = &obj.space {
        if obj.rack.is_some() || obj.cocycle.is_some() {
            return Err(usage("--space excludes --rack and --cocycle"));
        }
        let f = field(obj)?;
        return match json_file(s)? {
            Some(v) => Ok((s.clone(), BraidedSpace::from_json(&v)?)),
            None => Ok((s.clone(), space_by_name(s, f.as_ref())?)),
        };
    }
    if obj.rack.is_none() {
        return Err(usage("give --space or --rack"));
    }
    if obj.cocycle.is_some() {
        let (name, c) = cocycle(obj)?;
        return Ok((format!("rack:{name}"), BraidedSpace::rack_space(&c)));
    }
    let (name, r) = rack_arg(obj)?;
    let f = field(obj)?.unwrap_or_else(Field::rational);
    Ok((format!("rack:{name}"), BraidedSpace::rack_plain(&f, &r)))
}

pub fn list(s: &str, what: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|x| x.trim())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().map_err(|_| usage(format!("{what}: {x:?} is not a nonnegative integer"))))
        .collect()
}

/// `A..B` or `A..=B`, both inclusive.
pub fn range(s: &str) -> Result<(usize, usize), Failure> {
    let (a, b) = s.split_once("..").ok_or_else(|| usage(format!("range {s:?} must look like A..B")))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| usage(format!("bad range start in {s:?}")))?;
    let b: usize = b.trim().parse().map_err(|_| usage(format!("bad range end in {s:?}")))?;
    if a > b {
        return Err(usage(format!("empty range {s:?}")));
    }
    Ok((a, b))
}
