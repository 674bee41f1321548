//! Text formats.
//!
//! Solutions are written one per line as
//! `n=<int>; [k=<int>;] X=(a,b),(a,b),...; Y=(a,b),...`; the `k` field is
//! emitted only for non-ideal claims. Blank lines and lines starting with `#`
//! are ignored. Factored values use `(a,b)^e*(c,d)` with an optional unit
//! prefix `-`, `i*` or `-i*`.

use crate::gint::{GFactorization, GaussianInt, Unit};
use crate::pte::PteSolution;
use crate::{Error, Result};

fn parse_list(s: &str) -> std::result::Result<Vec<GaussianInt>, String> {
    let mut out = Vec::new();
    let mut rest = s;
    if rest.is_empty() {
        return Ok(out);
    }
    loop {
        if !rest.starts_with('(') {
            return Err(format!("expected '(' at {rest:?}"));
        }
        let close = rest.find(')').ok_or_else(|| format!("unclosed element in {rest:?}"))?;
        let elem = &rest[..=close];
        out.push(elem.parse::<GaussianInt>().map_err(|e| e.to_string())?);
        rest = &rest[close + 1..];
        if rest.is_empty() {
            return Ok(out);
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| format!("expected ',' before {rest:?}"))?;
    }
}

fn parse_line(line: &str) -> std::result::Result<PteSolution, String> {
    let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
    let mut n: Option<usize> = None;
    let mut k: Option<usize> = None;
    let mut x: Option<Vec<GaussianInt>> = None;
    let mut y: Option<Vec<GaussianInt>> = None;
    for field in compact.split(';').filter(|f| !f.is_empty()) {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| format!("field {field:?} lacks '='"))?;
        let dup = || format!("duplicate field {key:?}");
        match key {
            "n" => {
                let v = value.parse().map_err(|_| format!("bad size {value:?}"))?;
                n.replace(v).map_or(Ok(()), |_| Err(dup()))?;
            }
            "k" => {
                let v = value.parse().map_err(|_| format!("bad degree {value:?}"))?;
                k.replace(v).map_or(Ok(()), |_| Err(dup()))?;
            }
            "X" => x.replace(parse_list(value)?).map_or(Ok(()), |_| Err(dup()))?,
            "Y" => y.replace(parse_list(value)?).map_or(Ok(()), |_| Err(dup()))?,
            _ => return Err(format!("unknown field {key:?}")),
        }
    }
    let n = n.ok_or("missing n")?;
    let x = x.ok_or("missing X")?;
    let y = y.ok_or("missing Y")?;
    if x.len() != n || y.len() != n {
        return Err(format!("n={n} but |X|={} and |Y|={}", x.len(), y.len()));
    }
    let k = k.unwrap_or(n.saturating_sub(1));
    PteSolution::new(x, y, k).map_err(|e| e.to_string())
}

/// Parses one solution line.
pub fn parse_solution(line: &str) -> Result<PteSolution> {
    parse_line(line).map_err(Error::Parse)
}

/// Parses a file of solution lines, reporting the 1-based line number of the first error.
pub fn parse_solutions(text: &str) -> Result<Vec<PteSolution>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(parse_line(t).map_err(|msg| Error::ParseLine { line: i + 1, msg })?);
    }
    Ok(out)
}

fn join(v: &[GaussianInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn emit_solution(s: &PteSolution) -> String {
    let n = s.n();
    let k = if s.claimed_degree() + 1 == n {
        String::new()
    } else {
        format!(" k={};", s.claimed_degree())
    };
    format!("n={n};{k} X={}; Y={}", join(s.x()), join(s.y()))
}

/// One line per solution in canonical order, each terminated by a newline.
pub fn emit_solutions(list: &[PteSolution]) -> String {
    let mut sorted: Vec<&PteSolution> = list.iter().collect();
    sorted.sort_by(|a, b| a.cmp_canonical(b));
    let mut out = String::new();
    for s in sorted {
        out.push_str(&emit_solution(s));
        out.push('\n');
    }
    out
}

/// Parses a factored value with optional unit prefix, e.g. `-i*(1,1)^2*(3,0)`.
/// Bases may be any associates of Gaussian primes; `1`, `-1`, `i`, `-i` denote units.
pub fn parse_factored_with_unit(s: &str) -> Result<GFactorization> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (unit, body) = if let Some(r) = t.strip_prefix("-i*") {
        (Unit::NegI, r)
    } else if let Some(r) = t.strip_prefix("i*") {
        (Unit::I, r)
    } else if let Some(r) = t.strip_prefix('-') {
        (Unit::NegOne, r)
    } else {
        (Unit::One, t.as_str())
    };
    match body {
        "1" => return GFactorization::from_parts(unit, []),
        "i" => return GFactorization::from_parts(unit.mul(Unit::I), []),
        _ => {}
    }
    let mut parts = Vec::new();
    for tok in body.split('*') {
        let (base, exp) = match tok.rsplit_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
            ),
            None => (tok, 1),
        };
        parts.push((base.parse::<GaussianInt>()?, exp));
    }
    GFactorization::from_parts(unit, parts)
}
