//! Flat `key = value` configuration files.
//!
//! Keys are long flag names (`big-l`, `seed`, ...). Values become the flag
//! defaults, so anything given on the command line wins.

use anyhow::{bail, Context, Result};

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = vec![];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected `key = value`, got {raw:?}", i + 1);
        };
        let (k, v) = (k.trim().replace('_', "-"), v.trim().trim_matches('"').to_string());
        if k.is_empty() {
            bail!("config line {}: empty key", i + 1);
        }
        if out.iter().any(|(x, _)| *x == k) {
            bail!("config line {}: duplicate key {k:?}", i + 1);
        }
        out.push((k, v));
    }
    Ok(out)
}

/// The value of `--config` in `args`, if any.
pub fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

pub fn load(path: &str) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {path}"))?;
    parse(&text)
}
