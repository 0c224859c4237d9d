//! TOML configuration merged under explicit flags.
//!
//! Top-level keys are global flags (`threads`, `format`, `output`); a table
//! named after a subcommand holds that subcommand's flags. Key `n_min` and
//! `n-min` both mean `--n-min`. Explicit command-line flags win.

use std::path::Path;

use toml::{Table, Value};

pub const SUBCOMMANDS: &[&str] = &["rack", "cocycle", "bvs", "coinv", "homology", "symstats", "hurwitz", "ffstats", "accept"];

fn scalar_token(key: &str, v: &Value) -> Result<Option<String>, String> {
    Ok(Some(match v {
        Value::String(s) => s.clone(),
        Value::Integer(i) => i.to_string(),
        Value::Float(x) => x.to_string(),
        Value::Boolean(b) => b.to_string(),
        Value::Array(a) => {
            let parts: Result<Vec<String>, String> =
                a.iter().map(|x| scalar_token(key, x).map(|t| t.unwrap_or_default())).collect();
            parts?.join(",")
        }
        _ => return Err(format!("config key {key:?}: unsupported value {v}")),
    }))
}

fn push_table(out: &mut Vec<String>, t: &Table, skip_tables: bool) -> Result<(), String> {
    for (k, v) in t {
        if let Value::Table(_) = v {
            if skip_tables {
                continue;
            }
            return Err(format!("config key {k:?}: nested tables are not supported"));
        }
        let flag = format!("--{}", k.replace('_', "-"));
        if let Some(tok) = scalar_token(k, v)? {
            out.push(format!("{flag}={tok}"));
        }
    }
    Ok(())
}

/// Command-line tokens equivalent to the config for one subcommand:
/// `[prog, globals.., subcommand, subcommand flags..]`.
pub fn config_tokens(path: &Path, subcommand: &str) -> Result<Vec<String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let table: Table = text.parse().map_err(|e| format!("config {}: {e}", path.display()))?;
    for (k, v) in &table {
        if matches!(v, Value::Table(_)) && !SUBCOMMANDS.contains(&k.as_str()) {
            return Err(format!("config {}: unknown section [{k}]", path.display()));
        }
    }
    let mut out = vec!["braidstat".to_string()];
    push_table(&mut out, &table, true)?;
    out.push(subcommand.to_string());
    if let Some(Value::Table(sub)) = table.get(subcommand) {
        push_table(&mut out, sub, false)?;
    }
    Ok(out)
}
