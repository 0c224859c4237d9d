//! Named objects resolvable from short strings.
//!
//! Racks: `joyce`, `s_wedge`, `t2`, `sN_transpositions` (N = 2..5),
//! `trivial:N`, `cyclic:N`, and products `A*B`.
//! Cocycles: `const:X` (X parsed in the field), `wedge`, `pm`.
//! Spaces: `kappa` (trivial, over ℚ), `kappa_zeta:K` (ζ a primitive K-th
//! root of unity, over ℚ for K ≤ 2 and over ℚ(ζ_K) otherwise),
//! `kappa_wedge`, `kappa_pm`, `rack_wedge:RACK`, `rack_pm:RACK`,
//! `rack:RACK` (trivial cocycle), `rack:RACK:const:X`.
//! Fields: `Q`, `Q(zeta_K)` or `cyclotomic:K`, `F_q` or `Fq` (q a prime power).
//! Groups: `sN`, `aN`, `dN` (order 2N), `zN`.
//! Conjugacy-closed sets: `transpositions`, `involutions`, `order:K`,
//! `nonidentity`.

use crate::braided::BraidedSpace;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rack::{transpositions, Cocycle2, Rack};
use crate::scalar::Field;

pub const RACK_NAMES: &[&str] =
    &["joyce", "s_wedge", "t2", "sN_transpositions", "trivial:N", "cyclic:N", "A*B"];

pub const SPACE_NAMES: &[&str] = &[
    "kappa",
    "kappa_zeta:K",
    "kappa_wedge",
    "kappa_pm",
    "rack_wedge:RACK",
    "rack_pm:RACK",
    "rack:RACK",
    "rack:RACK:const:X",
];

pub const FIELD_NAMES: &[&str] = &["Q", "Q(zeta_K)", "cyclotomic:K", "F_q"];
pub const GROUP_NAMES: &[&str] = &["sN", "aN", "dN", "zN"];
pub const CLASS_NAMES: &[&str] = &["transpositions", "involutions", "order:K", "nonidentity"];

fn bad(what: &str, name: &str) -> Error {
    Error::Invalid(format!("unknown {what} {name:?}"))
}

fn parse_size(s: &str, name: &str) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(n) if (1..=64).contains(&n) => Ok(n),
        _ => Err(Error::Invalid(format!("{name:?}: size must be an integer in 1..=64"))),
    }
}

/// A built-in rack, or `A*B` for the product of two built-ins.
pub fn rack_by_name(name: &str) -> Result<Rack> {
    let name = name.trim();
    if let Some((a, b)) = name.split_once('*') {
        return Ok(Rack::product(&rack_by_name(a)?, &rack_by_name(b)?));
    }
    if let Some(rest) = name.strip_prefix("trivial:") {
        return Ok(Rack::trivial(parse_size(rest, name)?));
    }
    if let Some(rest) = name.strip_prefix("cyclic:") {
        return Ok(Rack::cyclic(parse_size(rest, name)?));
    }
    if let Some(k) = name.strip_prefix('s').and_then(|s| s.strip_suffix("_transpositions")) {
        let k: usize = k.parse().map_err(|_| bad("rack", name))?;
        if !(2..=5).contains(&k) {
            return Err(bad("rack", name));
        }
        return Rack::sn_transpositions(k);
    }
    match name {
        "joyce" => Ok(Rack::joyce()),
        "s_wedge" => Ok(Rack::s_wedge()),
        "t2" => Ok(Rack::t2()),
        _ => Err(bad("rack", name)),
    }
}

pub fn cocycle_by_name(rack: &Rack, field: &Field, spec: &str) -> Result<Cocycle2> {
    let spec = spec.trim();
    if let Some(x) = spec.strip_prefix("const:") {
        return Cocycle2::constant(rack, field, &field.parse(x)?);
    }
    match spec {
        "wedge" => Cocycle2::wedge(rack, field),
        "pm" => Cocycle2::pm(rack, field),
        _ => Err(bad("cocycle", spec)),
    }
}

/// ℚ for K ≤ 2, ℚ(ζ_K) otherwise, together with a primitive K-th root.
pub fn zeta_field(k: u32) -> Result<(Field, crate::scalar::Scalar)> {
    if k == 0 {
        return Err(Error::Invalid("root of unity order must be positive".into()));
    }
    let f = if k <= 2 { Field::rational() } else { Field::cyclotomic(k)? };
    let z = f.root_of_unity(k as u64)?;
    Ok((f, z))
}

/// Resolves a space name over ℚ (or ℚ(ζ_K) for `kappa_zeta:K`), or over
/// `field` when one is given.
pub fn space_by_name(name: &str, field: Option<&Field>) -> Result<BraidedSpace> {
    let name = name.trim();
    let q = Field::rational();
    let f = field.unwrap_or(&q);
    if let Some(k) = name.strip_prefix("kappa_zeta:") {
        let k: u32 = k.parse().map_err(|_| bad("space", name))?;
        return match field {
            Some(f) => BraidedSpace::kappa_zeta(f, &f.root_of_unity(k as u64)?),
            None => {
                let (f, z) = zeta_field(k)?;
                BraidedSpace::kappa_zeta(&f, &z)
            }
        };
    }
    if let Some(r) = name.strip_prefix("rack_wedge:") {
        return BraidedSpace::rack_wedge(f, &rack_by_name(r)?);
    }
    if let Some(r) = name.strip_prefix("rack_pm:") {
        return BraidedSpace::rack_pm(f, &rack_by_name(r)?);
    }
    if let Some(rest) = name.strip_prefix("rack:") {
        let (r, coc) = split_rack_and_cocycle(rest)?;
        let r = rack_by_name(&r)?;
        return match coc {
            None => Ok(BraidedSpace::rack_plain(f, &r)),
            Some(c) => Ok(BraidedSpace::rack_space(&cocycle_by_name(&r, f, &c)?)),
        };
    }
    match name {
        "kappa" => BraidedSpace::kappa_zeta(f, &f.one()),
        "kappa_wedge" => BraidedSpace::kappa_wedge(f),
        "kappa_pm" => BraidedSpace::kappa_pm(f),
        _ => Err(bad("space", name)),
    }
}

/// Splits "RACK" or "RACK:COCYCLE" where RACK may be `trivial:N`/`cyclic:N`.
fn split_rack_and_cocycle(s: &str) -> Result<(String, Option<String>)> {
    let parts: Vec<&str> = s.split(':').collect();
    let take = if matches!(parts[0], "trivial" | "cyclic") { 2 } else { 1 };
    if parts.len() < take {
        return Err(bad("rack", s));
    }
    let rack = parts[..take].join(":");
    let rest = parts[take..].join(":");
    Ok((rack, (!rest.is_empty()).then_some(rest)))
}

/// Built-in rack cocycles with at most four rack elements.
pub fn small_cocycles() -> Vec<(String, Cocycle2)> {
    let f = Field::rational();
    let f7 = Field::finite(7).expect("F_7");
    let z3 = f7.root_of_unity(3).expect("order 3 in F_7");
    let k = |r: &Rack, x: i64| Cocycle2::constant(r, &f, &f.from_int(x)).expect("constant cocycle");
    let s3 = Rack::sn_transpositions(3).expect("S3");
    let c2t2 = Rack::product(&Rack::cyclic(2), &Rack::t2());
    vec![
        ("trivial:1".into(), k(&Rack::trivial(1), 1)),
        ("trivial:1:const:-1".into(), k(&Rack::trivial(1), -1)),
        ("cyclic:2".into(), k(&Rack::cyclic(2), 1)),
        ("cyclic:3:const:-1".into(), k(&Rack::cyclic(3), -1)),
        ("joyce".into(), k(&Rack::joyce(), 1)),
        ("joyce:const:-1".into(), k(&Rack::joyce(), -1)),
        ("s3_transpositions:const:-1".into(), k(&s3, -1)),
        ("s3_transpositions:const:z3/F7".into(), Cocycle2::constant(&s3, &f7, &z3).expect("constant cocycle")),
        ("s_wedge".into(), k(&Rack::s_wedge(), 1)),
        ("s_wedge:const:-1".into(), k(&Rack::s_wedge(), -1)),
        ("s_wedge:const:2".into(), k(&Rack::s_wedge(), 2)),
        ("t2:wedge".into(), Cocycle2::wedge(&Rack::t2(), &f).expect("wedge")),
        ("t2:pm".into(), Cocycle2::pm(&Rack::t2(), &f).expect("pm")),
        ("cyclic2xt2:pm".into(), Cocycle2::pm(&c2t2, &f).expect("pm")),
        ("cyclic2xt2:wedge".into(), Cocycle2::wedge(&c2t2, &f).expect("wedge")),
        ("trivial:4:const:-1".into(), k(&Rack::trivial(4), -1)),
    ]
}

pub fn field_by_name(name: &str) -> Result<Field> {
    let name = name.trim();
    if matches!(name, "Q" | "QQ" | "rational") {
        return Ok(Field::rational());
    }
    let cyc = name
        .strip_prefix("Q(zeta_")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| name.strip_prefix("cyclotomic:"));
    if let Some(k) = cyc {
        let k: u32 = k.parse().map_err(|_| bad("field", name))?;
        return Field::cyclotomic(k);
    }
    if let Some(q) = name.strip_prefix("F_").or_else(|| name.strip_prefix('F')) {
        let q: u32 = q.parse().map_err(|_| bad("field", name))?;
        return Field::finite(q);
    }
    Err(bad("field", name))
}

pub fn group_by_name(name: &str) -> Result<FiniteGroup> {
    let name = name.trim();
    let (kind, rest) = name.split_at(name.chars().next().map_or(0, |c| c.len_utf8()));
    let n: usize = rest.parse().map_err(|_| bad("group", name))?;
    match kind {
        "s" if (1..=6).contains(&n) => FiniteGroup::symmetric(n),
        "a" if (3..=6).contains(&n) => FiniteGroup::alternating(n),
        "d" if (3..=24).contains(&n) => FiniteGroup::dihedral(n),
        "z" if (1..=64).contains(&n) => FiniteGroup::cyclic(n),
        _ => Err(bad("group", name)),
    }
}

/// A conjugacy-closed subset of `g`, sorted.
pub fn class_by_name(g: &FiniteGroup, name: &str) -> Result<Vec<usize>> {
    let name = name.trim();
    let all = 0..g.size();
    let r: Vec<usize> = match name {
        "transpositions" => transpositions(g),
        "involutions" => all.filter(|&x| g.order_of(x) == 2).collect(),
        "nonidentity" => all.filter(|&x| x != g.identity()).collect(),
        _ => {
            let k: u64 = name.strip_prefix("order:").and_then(|k| k.parse().ok()).ok_or_else(|| bad("class", name))?;
            all.filter(|&x| g.order_of(x) == k).collect()
        }
    };
    if r.is_empty() {
        return Err(Error::Invalid(format!("class {name:?} is empty in this group")));
    }
    Ok(r)
}
