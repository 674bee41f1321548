//! Factored lower bounds for the gcd `C_n` of all constants of ideal solutions
//! of size `n`, and upper bounds from gcds of known constants.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::gint::intfactor::is_prime_u64;
use crate::gint::{factor, gcd, GFactorization, GaussianInt, Unit};
use crate::pte::{constant, PteSolution};
use crate::{Error, Result};

/// How a rational prime behaves in the ring of discriminant `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeClass {
    Ramified,
    Split,
    Inert,
}

/// Which rule produced a contribution to a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleTag {
    Consecutive,
    NormPrime,
    Window,
    Amplify,
    C5Special,
}

impl RuleTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleTag::Consecutive => "consecutive",
            RuleTag::NormPrime => "norm-prime",
            RuleTag::Window => "window",
            RuleTag::Amplify => "amplify",
            RuleTag::C5Special => "c5-special",
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub prime: GaussianInt,
    pub exponent: u32,
    pub rule: RuleTag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    pub n: u64,
    pub lower: GFactorization,
    pub provenance: Vec<Contribution>,
}

impl BoundEntry {
    /// `n=<m> lower=<factored> provenance=<prime>^<e>:<rule>,...`
    pub fn to_line(&self) -> String {
        let prov: Vec<String> = self
            .provenance
            .iter()
            .map(|c| {
                if c.exponent == 1 {
                    format!("{}:{}", c.prime, c.rule)
                } else {
                    format!("{}^{}:{}", c.prime, c.exponent, c.rule)
                }
            })
            .collect();
        let prov = if prov.is_empty() { "none".to_string() } else { prov.join(",") };
        format!("n={} lower={} provenance={}", self.n, self.lower.to_factored_string(), prov)
    }
}

fn is_squarefree(mut v: u64) -> bool {
    let mut p = 2u64;
    while p * p <= v {
        if v % (p * p) == 0 {
            return false;
        }
        if v % p == 0 {
            v /= p;
        }
        p += 1;
    }
    true
}

fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let m4 = d.rem_euclid(4);
    if m4 == 1 {
        return is_squarefree(d.unsigned_abs());
    }
    if m4 == 0 {
        let m = d / 4;
        let r = m.rem_euclid(4);
        return (r == 2 || r == 3) && is_squarefree(m.unsigned_abs());
    }
    false
}

/// Splitting type of the rational prime `p` for the fundamental discriminant `d`.
pub fn classify_rational_prime(p: u64, d: i64) -> Result<PrimeClass> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::InvalidDiscriminant(d));
    }
    if !is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let pi = p as i128;
    let di = d as i128;
    if di.rem_euclid(pi) == 0 {
        return Ok(PrimeClass::Ramified);
    }
    let split = if p == 2 {
        di.rem_euclid(8) == 1
    } else {
        // Euler's criterion
        let e = BigUint::from(((p - 1) / 2) as u128);
        let base = BigUint::from(di.rem_euclid(pi) as u128);
        base.modpow(&e, &BigUint::from(p)) == BigUint::from(1u32)
    };
    Ok(if split { PrimeClass::Split } else { PrimeClass::Inert })
}

/// All canonical Gaussian primes of norm at most `limit`, in prime order.
pub fn gaussian_primes_up_to_norm(limit: u64) -> Vec<GaussianInt> {
    let mut out = Vec::new();
    for p in 2..=limit {
        if !is_prime_u64(p) {
            continue;
        }
        match p % 4 {
            3 => {
                if p.checked_mul(p).is_some_and(|sq| sq <= limit) {
                    out.push(GaussianInt::from_i64(p as i64, 0));
                }
            }
            _ => out.extend(crate::gint::factor::primes_over_u64(p)),
        }
    }
    out.sort_by(crate::gint::factor::prime_order);
    out
}

fn norm_u64(q: &GaussianInt) -> u64 {
    q.norm().to_u64().expect("small norm")
}

/// Exponent forced on each canonical prime above `p` by runs of consecutive
/// residues: `max(floor(m/p) - l, 0)` with `l` the valuation of `m` at that prime.
pub fn rule_consecutive(m: u64, p: u64) -> Result<Vec<(GaussianInt, u32)>> {
    if classify_rational_prime(p, -4)? == PrimeClass::Inert {
        return Err(Error::InvalidArgument(format!("{p} is inert")));
    }
    let s = m / p;
    let mz = GaussianInt::from_i64(m as i64, 0);
    Ok(crate::gint::factor::primes_over_u64(p)
        .into_iter()
        .map(|q| {
            let l = u64::from(mz.valuation(&q));
            (q, s.saturating_sub(l) as u32)
        })
        .collect())
}

/// Primes `q` with `N(q) = m > 3` contribute the rational integer `m`.
pub fn rule_norm_prime(m: u64) -> Vec<(GaussianInt, u32)> {
    if m <= 3 {
        return Vec::new();
    }
    let has_prime_of_norm = gaussian_primes_up_to_norm(m)
        .iter()
        .any(|q| norm_u64(q) == m);
    if !has_prime_of_norm {
        return Vec::new();
    }
    let f = factor(&GaussianInt::from_i64(m as i64, 0)).expect("nonzero");
    f.factors().to_vec()
}

/// Primes with `n+3 <= N(q) < n+3+(n-2)/6`, where `n = m-1`.
pub fn rule_window(m: u64) -> Vec<(GaussianInt, u32)> {
    if m < 3 {
        return Vec::new();
    }
    let n = m - 1;
    let lo = n + 3;
    gaussian_primes_up_to_norm(4 * m)
        .into_iter()
        .filter(|q| {
            let nq = norm_u64(q);
            nq >= lo && 6 * nq < 6 * lo + (n - 2)
        })
        .map(|q| (q, 1))
        .collect()
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Raises every present prime `q` to at least `ceil(m/N(q))`, and `(1+i)` to
/// at least 4 when `m = 5`.
pub fn amplify(m: u64, base: &GFactorization) -> GFactorization {
    amplify_traced(m, base).0
}

fn amplify_traced(m: u64, base: &GFactorization) -> (GFactorization, Vec<Contribution>) {
    let mut out = base.clone();
    let mut trace = Vec::new();
    let one_plus_i = GaussianInt::from_i64(1, 1);
    for (q, e) in base.factors() {
        if *e == 0 {
            continue;
        }
        let mut target = ceil_div(m, norm_u64(q)) as u32;
        let mut rule = RuleTag::Amplify;
        if m == 5 && *q == one_plus_i && target < 4 {
            target = 4;
            rule = RuleTag::C5Special;
        }
        if target > *e {
            out.raise_to(q, target);
            trace.push(Contribution { prime: q.clone(), exponent: target, rule });
        }
    }
    (out, trace)
}

/// Lower bound for `C_m` from all rules, with provenance.
pub fn lower_bound(m: u64) -> BoundEntry {
    assert!(m >= 2, "size must be at least 2");
    let cap = 4 * m;
    let mut provenance: Vec<Contribution> = Vec::new();
    let mut push = |parts: Vec<(GaussianInt, u32)>, rule: RuleTag| {
        for (prime, exponent) in parts {
            if exponent > 0 && norm_u64(&prime) <= cap {
                provenance.push(Contribution { prime, exponent, rule });
            }
        }
    };
    for p in 2..=m {
        if is_prime_u64(p) && p % 4 != 3 {
            push(rule_consecutive(m, p).expect("non-inert"), RuleTag::Consecutive);
        }
    }
    push(rule_norm_prime(m), RuleTag::NormPrime);
    push(rule_window(m), RuleTag::Window);

    let mut base = GFactorization::one();
    for c in &provenance {
        base.raise_to(&c.prime, c.exponent);
    }
    let (lower, trace) = amplify_traced(m, &base);
    provenance.extend(trace);
    provenance.sort_by(|a, b| {
        crate::gint::factor::prime_order(&a.prime, &b.prime)
            .then(a.rule.cmp(&b.rule))
            .then(a.exponent.cmp(&b.exponent))
    });
    BoundEntry { n: m, lower, provenance }
}

/// Lower bounds for sizes `2..=max`, computed once per process.
pub fn bounds_table(max: u64) -> Vec<BoundEntry> {
    static CACHE: OnceLock<Vec<BoundEntry>> = OnceLock::new();
    const CACHED: u64 = 32;
    if max <= CACHED {
        let t = CACHE.get_or_init(|| (2..=CACHED).map(lower_bound).collect());
        return t[..(max.saturating_sub(1)) as usize].to_vec();
    }
    (2..=max).map(lower_bound).collect()
}

/// The gcd of the constants of the given ideal solutions, unit-normalized.
pub fn corpus_gcd_upper_bound(solutions: &[PteSolution]) -> Result<GFactorization> {
    let first = solutions
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty solution list".into()))?;
    let n = first.n();
    let mut acc: Option<GaussianInt> = None;
    for s in solutions {
        if s.n() != n {
            return Err(Error::InvalidArgument("solutions of different sizes".into()));
        }
        let c = constant(s)?;
        acc = Some(match acc {
            None => c.normalized(),
            Some(a) => gcd(&a, &c)?,
        });
    }
    let g = acc.expect("nonempty");
    Ok(factor(&g)?.without_unit())
}

/// `C_b = u * C_a` for some unit `u`.
pub fn equal_up_to_unit(a: &GaussianInt, b: &GaussianInt) -> bool {
    Unit::ALL.into_iter().any(|u| &a.mul_unit(u) == b)
}
