//! Bundled published solutions and divisibility tables, and their cross-checks.

use serde::Deserialize;

use crate::bounds::{corpus_gcd_upper_bound, equal_up_to_unit, lower_bound};
use crate::format::{parse_factored_with_unit, parse_solution};
use crate::gint::{factor, GFactorization, GaussianInt};
use crate::pte::{conjugate_solution, constant, verify_degree, PteSolution};
use crate::{Error, Result};

pub const CORPUS_TOML: &str = include_str!("../data/corpus.toml");
pub const TABLE1_TOML: &str = include_str!("../data/table1.toml");
pub const TABLE2_TOML: &str = include_str!("../data/table2.toml");
pub const KNOWN_BAD_SIZE6: &str = include_str!("../data/known-bad/size6-general.txt");

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub solution: PteSolution,
    pub claimed_constant: Option<GFactorization>,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianTableRow {
    pub n: u64,
    pub lower: GFactorization,
    pub upper: Option<GFactorization>,
    pub starred: bool,
}

/// Row of the rational-integer table, stated for `C_n / (n-1)!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerTableRow {
    pub n: u64,
    pub lower: Vec<(u64, u32)>,
    pub upper: Option<Vec<(u64, u32)>>,
}

#[derive(Deserialize)]
struct RawCorpus {
    entry: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    id: String,
    source: String,
    solution: String,
    constant: Option<String>,
}

#[derive(Deserialize)]
struct RawTable {
    row: Vec<RawRow>,
}

#[derive(Deserialize)]
struct RawRow {
    n: u64,
    lower: String,
    upper: Option<String>,
    #[serde(default)]
    starred: bool,
}

fn toml_err(e: toml::de::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let raw: RawCorpus = toml::from_str(text).map_err(toml_err)?;
    raw.entry
        .into_iter()
        .map(|e| {
            let solution = parse_solution(&e.solution)
                .map_err(|err| Error::Parse(format!("entry {}: {err}", e.id)))?;
            let claimed_constant = e.constant.as_deref().map(parse_factored_with_unit).transpose()?;
            Ok(CorpusEntry {
                id: e.id,
                solution,
                claimed_constant,
                source: e.source,
            })
        })
        .collect()
}

/// The bundled corpus; fails if any entry does not re-verify.
pub fn bundled_corpus() -> Result<Vec<CorpusEntry>> {
    let entries = parse_corpus(CORPUS_TOML)?;
    for e in &entries {
        let r = check_entry(e);
        if !r.ok() {
            return Err(Error::InvalidSolution(format!("bundled entry {} fails: {}", e.id, r.describe())));
        }
    }
    Ok(entries)
}

pub fn parse_gaussian_table(text: &str) -> Result<Vec<GaussianTableRow>> {
    let raw: RawTable = toml::from_str(text).map_err(toml_err)?;
    raw.row
        .into_iter()
        .map(|r| {
            Ok(GaussianTableRow {
                n: r.n,
                lower: GFactorization::parse_factored(&r.lower)?,
                upper: r.upper.as_deref().map(GFactorization::parse_factored).transpose()?,
                starred: r.starred,
            })
        })
        .collect()
}

fn parse_rational_factored(s: &str) -> Result<Vec<(u64, u32)>> {
    let s = s.trim();
    if s == "1" {
        return Ok(Vec::new());
    }
    s.split('*')
        .map(|tok| {
            let bad = || Error::Parse(format!("bad factor {tok:?}"));
            let (p, e) = tok.split_once('^').unwrap_or((tok, "1"));
            Ok((p.trim().parse().map_err(|_| bad())?, e.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

pub fn parse_integer_table(text: &str) -> Result<Vec<IntegerTableRow>> {
    let raw: RawTable = toml::from_str(text).map_err(toml_err)?;
    raw.row
        .into_iter()
        .map(|r| {
            Ok(IntegerTableRow {
                n: r.n,
                lower: parse_rational_factored(&r.lower)?,
                upper: r.upper.as_deref().map(parse_rational_factored).transpose()?,
            })
        })
        .collect()
}

pub fn gaussian_table() -> Result<Vec<GaussianTableRow>> {
    parse_gaussian_table(TABLE1_TOML)
}

pub fn integer_table() -> Result<Vec<IntegerTableRow>> {
    parse_integer_table(TABLE2_TOML)
}

/// Outcome of re-verifying one corpus entry.
#[derive(Clone, Debug)]
pub struct EntryReport {
    pub id: String,
    pub n: usize,
    pub claimed_degree: usize,
    pub degree: usize,
    pub constant: Option<GaussianInt>,
    /// `None` when no constant is claimed.
    pub claim_matches: Option<bool>,
}

impl EntryReport {
    pub fn ok(&self) -> bool {
        self.degree >= self.claimed_degree && self.claim_matches != Some(false)
    }

    pub fn describe(&self) -> String {
        let c = match &self.constant {
            Some(c) => factor(c).map(|f| f.to_string()).unwrap_or_else(|e| e.to_string()),
            None => "-".into(),
        };
        let claim = match self.claim_matches {
            None => "none",
            Some(true) => "matches",
            Some(false) => "MISMATCH",
        };
        format!(
            "n={} claimed_degree={} degree={} constant={c} claim={claim}",
            self.n, self.claimed_degree, self.degree
        )
    }
}

pub fn check_entry(e: &CorpusEntry) -> EntryReport {
    let s = &e.solution;
    let degree = verify_degree(s);
    let constant = if degree + 1 >= s.n() { constant(s).ok() } else { None };
    let claim_matches = e.claimed_constant.as_ref().map(|claim| match &constant {
        Some(c) => equal_up_to_unit(&claim.expand(), c),
        None => false,
    });
    EntryReport {
        id: e.id.clone(),
        n: s.n(),
        claimed_degree: s.claimed_degree(),
        degree,
        constant,
        claim_matches,
    }
}

/// Full cross-check of a corpus against the bounds engine and the reference table.
#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
    /// `(id, n)` of ideal entries whose constant the engine lower bound fails to divide.
    pub unsound: Vec<(String, usize)>,
    pub lines: Vec<String>,
}

impl CorpusReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(EntryReport::ok) && self.unsound.is_empty()
    }
}

/// Prime-wise excess of `a` over `b`, i.e. the part of `a` not dividing `b`.
pub fn excess(a: &GFactorization, b: &GFactorization) -> GFactorization {
    let parts = a.factors().iter().filter_map(|(p, e)| {
        let have = b.exponent_of(p);
        (*e > have).then(|| (p.clone(), e - have))
    });
    GFactorization::from_parts(crate::gint::Unit::One, parts.collect::<Vec<_>>()).expect("primes")
}

pub fn check_corpus(entries: &[CorpusEntry], table: &[GaussianTableRow]) -> CorpusReport {
    let mut lines = Vec::new();
    let mut reports = Vec::new();
    let mut unsound = Vec::new();
    for e in entries {
        let r = check_entry(e);
        lines.push(format!("{} {} {}", if r.ok() { "ok  " } else { "FAIL" }, e.id, r.describe()));
        if let Some(c) = &r.constant {
            let lb = lower_bound(r.n as u64).lower;
            let cf = factor(c).expect("nonzero constant");
            if !lb.divides(&cf) {
                unsound.push((e.id.clone(), r.n));
                lines.push(format!("FAIL {} lower bound {} does not divide constant", e.id, lb.to_factored_string()));
            }
        }
        reports.push(r);
    }

    for row in table {
        let engine = lower_bound(row.n).lower;
        let missing = excess(&row.lower, &engine);
        let extra = excess(&engine, &row.lower);
        let mut line = format!(
            "table n={} lower={} engine={}",
            row.n,
            row.lower.to_factored_string(),
            engine.to_factored_string()
        );
        if missing.is_one() {
            line.push_str(" table-divides-engine");
        } else {
            line.push_str(&format!(
                " table factor not rule-derivable: {}",
                missing.to_factored_string()
            ));
        }
        if extra.is_one() {
            line.push_str(" engine-divides-table");
        } else {
            line.push_str(&format!(" engine exceeds table by {}", extra.to_factored_string()));
        }
        lines.push(line);

        if let Some(upper) = &row.upper {
            let mut pool: Vec<PteSolution> = Vec::new();
            for (e, r) in entries.iter().zip(&reports) {
                if e.solution.n() as u64 == row.n && r.constant.is_some() {
                    pool.push(e.solution.clone());
                    pool.push(conjugate_solution(&e.solution));
                }
            }
            if let Ok(g) = corpus_gcd_upper_bound(&pool) {
                let rel = if &g == upper {
                    "equals table upper"
                } else if upper.divides(&g) {
                    "is a multiple of table upper"
                } else if g.divides(upper) {
                    "divides table upper"
                } else {
                    "is unrelated to table upper"
                };
                lines.push(format!(
                    "table n={} upper={} corpus-gcd={} {rel}",
                    row.n,
                    upper.to_factored_string(),
                    g.to_factored_string()
                ));
            }
        }
    }
    CorpusReport { entries: reports, unsound, lines }
}
