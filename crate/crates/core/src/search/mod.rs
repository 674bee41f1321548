//! Interpolation-based search for ideal solutions.
//!
//! A prefix of enumerated values (some `x`'s and some `y`'s) determines the
//! rest of a candidate solution: the values `1/prod(y_j - x_i)` interpolate
//! `Q(z)/C`, where `Q` has the remaining `x`'s as roots, and the remaining
//! `y`'s are the roots of `prod(z - x) - C` once the known `y`'s are divided
//! out. Three modes are supported:
//!
//! - `general`: `x_1 = 0`, then `n` free values interleaved as `y_1, x_2, y_2, ...`.
//! - `sym-even`: both sides closed under negation; the search runs on squares.
//! - `sym-odd`: `Y = -X`; `prod(z - x) = z*A(z^2) + K` is solved from `(n+1)/2` values.

mod complete;
mod dedup;
mod enumerate;
mod kernel;
mod run;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::bounds::lower_bound;
use crate::gint::{is_gaussian_prime, GaussianInt};
use crate::{Error, Result};

pub use complete::{complete_general, complete_sym_even, complete_sym_odd, Completion, Outcome};
pub use dedup::{canonical_key, dedup_canonical, DedupEntry};
pub use enumerate::{plan_chunks, sieve_stream, Chunk, Prefix};
pub use run::{fingerprint, run, RunOptions, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    General,
    SymEven,
    SymOdd,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::General => "general",
            Mode::SymEven => "sym-even",
            Mode::SymOdd => "sym-odd",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Mode::General),
            "sym-even" => Ok(Mode::SymEven),
            "sym-odd" => Ok(Mode::SymOdd),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum SieveSpec {
    #[default]
    None,
    /// The two last primes, in prime order, of the engine lower bound.
    Auto,
    Primes(GaussianInt, GaussianInt),
}

impl fmt::Display for SieveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SieveSpec::None => f.write_str("none"),
            SieveSpec::Auto => f.write_str("auto"),
            SieveSpec::Primes(a, b) => write!(f, "{a},{b}"),
        }
    }
}

impl FromStr for SieveSpec {
    type Err = Error;
    /// `none`, `auto`, or `(a,b),(c,d)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "none" => return Ok(SieveSpec::None),
            "auto" => return Ok(SieveSpec::Auto),
            _ => {}
        }
        let (a, b) = t
            .split_once("),(")
            .ok_or_else(|| Error::Parse(format!("expected two primes, got {s:?}")))?;
        Ok(SieveSpec::Primes(format!("{a})").parse()?, format!("({b}").parse()?))
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    pub mode: Mode,
    /// Number of enumerated `y` values; in `sym-even` mode this counts values on
    /// the squared side. Defaults to `ceil((size + 1) / 2)` of the interpolated problem.
    pub k: Option<usize>,
    pub box_size: i64,
    pub sieve: SieveSpec,
    pub chunk_count: usize,
    pub output: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
}

impl SearchConfig {
    pub fn new(n: usize, mode: Mode, box_size: i64) -> Self {
        SearchConfig {
            n,
            mode,
            k: None,
            box_size,
            sieve: SieveSpec::None,
            chunk_count: 1,
            output: None,
            checkpoint: None,
        }
    }

    /// Size of the problem the interpolation runs on.
    fn inner_size(&self) -> usize {
        match self.mode {
            Mode::SymEven => self.n / 2,
            _ => self.n,
        }
    }

    /// Validates the configuration and fills in defaults.
    pub fn resolve(&self) -> Result<Resolved> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.n < 2 {
            return bad(format!("size {} is below 2", self.n));
        }
        if self.box_size < 0 || self.box_size > 1_000_000 {
            return bad(format!("box {} out of range", self.box_size));
        }
        if self.chunk_count == 0 {
            return bad("chunk count must be positive".into());
        }
        let mut warnings = Vec::new();
        let inner = self.inner_size();
        let (xs, ys) = match self.mode {
            Mode::General => {
                let k = self.k.unwrap_or((self.n + 1).div_ceil(2));
                if k < 2 || k + 1 > self.n {
                    return bad(format!("k={k} must satisfy 2 <= k <= n-1"));
                }
                (self.n - k + 1, k)
            }
            Mode::SymEven => {
                if self.n % 2 != 0 {
                    return bad("sym-even needs an even size".into());
                }
                let k = self.k.unwrap_or((inner + 1).div_ceil(2));
                if k < 1 || k > inner {
                    return bad(format!("k={k} must satisfy 1 <= k <= {inner}"));
                }
                (inner - k + 1, k)
            }
            Mode::SymOdd => {
                if self.n % 2 != 1 {
                    return bad("sym-odd needs an odd size".into());
                }
                if self.k.is_some() {
                    warnings.push("k is ignored in sym-odd mode".to_string());
                }
                (self.n.div_ceil(2), 0)
            }
        };
        let sieve = match (&self.sieve, self.mode) {
            (SieveSpec::None, _) => None,
            (_, Mode::SymOdd) => {
                warnings.push("the congruence sieve is not used in sym-odd mode".into());
                None
            }
            (SieveSpec::Auto, _) => {
                let lb = lower_bound(self.n as u64).lower;
                let f = lb.factors();
                if f.len() < 2 {
                    warnings.push(format!(
                        "lower bound for size {} has fewer than two primes; sieve disabled",
                        self.n
                    ));
                    None
                } else {
                    Some((f[f.len() - 2].0.clone(), f[f.len() - 1].0.clone()))
                }
            }
            (SieveSpec::Primes(a, b), _) => {
                for q in [a, b] {
                    if !is_gaussian_prime(q) {
                        return bad(format!("sieve value {q} is not a Gaussian prime"));
                    }
                }
                let lb = lower_bound(self.n as u64).lower;
                for q in [a, b] {
                    if lb.exponent_of(&q.normalized()) == 0 {
                        warnings.push(format!(
                            "sieve prime {q} does not divide the lower bound; completeness is not guaranteed"
                        ));
                    }
                }
                Some((a.clone(), b.clone()))
            }
        };
        Ok(Resolved {
            n: self.n,
            mode: self.mode,
            box_size: self.box_size,
            x_slots: xs,
            y_slots: ys,
            sieve,
            chunk_count: self.chunk_count,
            warnings,
        })
    }
}

/// A validated configuration with the enumeration layout fixed.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub n: usize,
    pub mode: Mode,
    pub box_size: i64,
    /// Enumerated `x` values, including the fixed `x_1 = 0` in general mode.
    pub x_slots: usize,
    pub y_slots: usize,
    pub sieve: Option<(GaussianInt, GaussianInt)>,
    pub chunk_count: usize,
    pub warnings: Vec<String>,
}

impl Resolved {
    /// Text hashed into the checkpoint fingerprint.
    pub fn canonical_text(&self) -> String {
        let sieve = match &self.sieve {
            Some((a, b)) => format!("{a},{b}"),
            None => "none".into(),
        };
        format!(
            "n={};mode={};x_slots={};y_slots={};box={};sieve={};chunks={}",
            self.n, self.mode, self.x_slots, self.y_slots, self.box_size, sieve, self.chunk_count
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let r = SearchConfig::new(3, Mode::General, 3).resolve().unwrap();
        assert_eq!((r.x_slots, r.y_slots), (2, 2));
        let r = SearchConfig::new(6, Mode::SymEven, 8).resolve().unwrap();
        assert_eq!((r.x_slots, r.y_slots), (2, 2));
        let r = SearchConfig::new(10, Mode::SymEven, 12).resolve().unwrap();
        assert_eq!((r.x_slots, r.y_slots), (3, 3));
        let r = SearchConfig::new(5, Mode::SymOdd, 9).resolve().unwrap();
        assert_eq!(r.x_slots, 3);
        assert!(SearchConfig::new(5, Mode::SymEven, 9).resolve().is_err());
        let mut c = SearchConfig::new(4, Mode::General, 2);
        c.k = Some(4);
        assert!(c.resolve().is_err());
    }

    #[test]
    fn auto_sieve_for_size_ten() {
        let mut c = SearchConfig::new(10, Mode::SymEven, 12);
        c.sieve = SieveSpec::Auto;
        let r = c.resolve().unwrap();
        assert_eq!(r.sieve, Some((GaussianInt::from_i64(3, 2), GaussianInt::from_i64(3, -2))));
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn sieve_spec_text() {
        let s: SieveSpec = "(3,2),(3,-2)".parse().unwrap();
        assert_eq!(s.to_string(), "(3,2),(3,-2)");
        assert_eq!("auto".parse::<SieveSpec>().unwrap(), SieveSpec::Auto);
        assert!("(3,2)".parse::<SieveSpec>().is_err());
        let mut c = SearchConfig::new(6, Mode::SymEven, 4);
        c.sieve = "(7,0),(3,2)".parse().unwrap();
        assert_eq!(c.resolve().unwrap().warnings.len(), 2);
    }
}
