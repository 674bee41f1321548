use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intfactor::{factor_integer, is_prime, sqrt_neg_one_mod};
use super::{gcd, GaussianInt, Unit};
use crate::{Error, Result};

/// A unit times a product of canonical Gaussian primes.
///
/// Primes are kept in canonical associate form and ordered by norm, then real
/// part, then imaginary part descending, so conjugate pairs print as
/// `(2,1)*(2,-1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GFactorization {
    unit: Unit,
    factors: Vec<(GaussianInt, u32)>,
}

/// Ordering used for primes inside a factorization.
pub fn prime_order(a: &GaussianInt, b: &GaussianInt) -> Ordering {
    a.norm()
        .cmp(&b.norm())
        .then_with(|| a.re.cmp(&b.re))
        .then_with(|| b.im.cmp(&a.im))
}

/// Irreducibility test: norm is a rational prime, or the element is an
/// associate of a rational prime `p = 3 (mod 4)`.
pub fn is_gaussian_prime(z: &GaussianInt) -> bool {
    if z.is_zero() {
        return false;
    }
    let n = z.norm();
    let nu = n.magnitude();
    if is_prime(nu) {
        return true;
    }
    let c = z.normalized();
    c.im.is_zero() && is_prime(c.re.magnitude()) && (&c.re % 4u32) == BigInt::from(3)
}

impl GFactorization {
    pub fn one() -> Self {
        GFactorization {
            unit: Unit::One,
            factors: Vec::new(),
        }
    }

    /// Builds a factorization from arbitrary prime associates; units are folded
    /// into `unit` and repeated primes merged.
    pub fn from_parts(unit: Unit, parts: impl IntoIterator<Item = (GaussianInt, u32)>) -> Result<Self> {
        let mut unit = unit;
        let mut factors: Vec<(GaussianInt, u32)> = Vec::new();
        for (p, e) in parts {
            if !is_gaussian_prime(&p) {
                return Err(Error::NotPrime(p.to_string()));
            }
            let (c, u) = p.canonical_associate()?;
            // p = u^-1 c, so p^e = u^-e c^e
            unit = unit.mul(u.inverse().pow(e));
            if e == 0 {
                continue;
            }
            match factors.iter_mut().find(|(q, _)| *q == c) {
                Some((_, f)) => *f += e,
                None => factors.push((c, e)),
            }
        }
        factors.sort_by(|a, b| prime_order(&a.0, &b.0));
        Ok(GFactorization { unit, factors })
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn factors(&self) -> &[(GaussianInt, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, p: &GaussianInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn expand(&self) -> GaussianInt {
        self.factors
            .iter()
            .fold(self.unit.to_gaussian(), |acc, (p, e)| &acc * &p.pow(*e))
    }

    pub fn without_unit(&self) -> Self {
        GFactorization {
            unit: Unit::One,
            factors: self.factors.clone(),
        }
    }

    /// Divisibility of the underlying elements (units ignored).
    pub fn divides(&self, other: &GFactorization) -> bool {
        self.factors.iter().all(|(p, e)| other.exponent_of(p) >= *e)
    }

    /// Unit-free gcd.
    pub fn gcd(&self, other: &GFactorization) -> GFactorization {
        let factors = self
            .factors
            .iter()
            .filter_map(|(p, e)| {
                let m = (*e).min(other.exponent_of(p));
                (m > 0).then(|| (p.clone(), m))
            })
            .collect();
        GFactorization {
            unit: Unit::One,
            factors,
        }
    }

    /// Unit-free prime-wise maximum (lcm).
    pub fn lcm(&self, other: &GFactorization) -> GFactorization {
        let mut out = self.without_unit();
        for (p, e) in &other.factors {
            out.raise_to(p, *e);
        }
        out
    }

    pub fn mul(&self, other: &GFactorization) -> GFactorization {
        let mut out = self.clone();
        out.unit = out.unit.mul(other.unit);
        for (p, e) in &other.factors {
            match out.factors.iter_mut().find(|(q, _)| q == p) {
                Some((_, f)) => *f += e,
                None => out.factors.push((p.clone(), *e)),
            }
        }
        out.factors.sort_by(|a, b| prime_order(&a.0, &b.0));
        out
    }

    pub fn conj(&self) -> GFactorization {
        let parts = self.factors.iter().map(|(p, e)| (p.conj(), *e));
        let unit = match self.unit {
            Unit::I => Unit::NegI,
            Unit::NegI => Unit::I,
            u => u,
        };
        GFactorization::from_parts(unit, parts).expect("conjugates of primes are prime")
    }

    /// Ensures the exponent of the canonical prime `p` is at least `e`.
    pub fn raise_to(&mut self, p: &GaussianInt, e: u32) {
        if e == 0 {
            return;
        }
        match self.factors.iter_mut().find(|(q, _)| q == p) {
            Some((_, f)) => *f = (*f).max(e),
            None => {
                self.factors.push((p.clone(), e));
                self.factors.sort_by(|a, b| prime_order(&a.0, &b.0));
            }
        }
    }

    /// Number of associate classes of divisors.
    pub fn divisor_count(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (_, e)| acc * (e + 1))
    }

    /// Unit-free textual form, e.g. `(1,1)^4*(2,1)*(2,-1)`; the empty product is `1`.
    pub fn to_factored_string(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Parses the unit-free form produced by [`to_factored_string`]. Bases may be any
    /// associate of a Gaussian prime; the result has unit one.
    ///
    /// [`to_factored_string`]: GFactorization::to_factored_string
    pub fn parse_factored(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(GFactorization::one());
        }
        let mut parts = Vec::new();
        for tok in s.split('*') {
            let tok = tok.trim();
            let (base, exp) = match tok.rsplit_once('^') {
                Some((b, e)) => (
                    b,
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            parts.push((base.parse::<GaussianInt>()?, exp));
        }
        Ok(GFactorization::from_parts(Unit::One, parts)?.without_unit())
    }
}

impl fmt::Display for GFactorization {
    /// Full form including the unit, e.g. `-i*(1,1)^2*(3,0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = match self.unit {
            Unit::One => "",
            Unit::I => "i*",
            Unit::NegOne => "-",
            Unit::NegI => "-i*",
        };
        if self.factors.is_empty() {
            let v = match self.unit {
                Unit::One => "1",
                Unit::I => "i",
                Unit::NegOne => "-1",
                Unit::NegI => "-i",
            };
            return f.write_str(v);
        }
        write!(f, "{u}{}", self.to_factored_string())
    }
}

/// The canonical primes lying over the rational prime `p`.
pub(crate) fn primes_over(p: &BigUint) -> Vec<GaussianInt> {
    let two = BigUint::from(2u32);
    if p == &two {
        return vec![GaussianInt::from_i64(1, 1)];
    }
    let r = p % 4u32;
    let pi = BigInt::from_biguint(Sign::Plus, p.clone());
    if r == BigUint::one() {
        let c = sqrt_neg_one_mod(p);
        let g = gcd(
            &GaussianInt::new(pi, 0),
            &GaussianInt::new(BigInt::from_biguint(Sign::Plus, c), 1),
        )
        .expect("nonzero");
        let h = g.conj().normalized();
        let mut v = vec![g, h];
        v.sort_by(prime_order);
        v
    } else {
        vec![GaussianInt::new(pi, 0)]
    }
}

pub(crate) fn primes_over_u64(p: u64) -> Vec<GaussianInt> {
    primes_over(&BigUint::from(p))
}

/// Factors a nonzero Gaussian integer into a unit times canonical primes.
pub fn factor(z: &GaussianInt) -> Result<GFactorization> {
    if z.is_zero() {
        return Err(Error::ZeroArgument("factor"));
    }
    let norm = z.norm().magnitude().clone();
    let mut factors = Vec::new();
    let mut rest = z.clone();
    for (p, e) in factor_integer(&norm) {
        let over = primes_over(&p);
        if over.len() == 1 && p != BigUint::from(2u32) {
            // inert: p^2 | norm for each power of p dividing z
            let k = e / 2;
            rest = rest.div_exact(&over[0].pow(k)).expect("inert prime divides");
            factors.push((over[0].clone(), k));
            continue;
        }
        for q in over {
            let mut k = 0;
            while let Some(next) = rest.div_exact(&q) {
                rest = next;
                k += 1;
            }
            if k > 0 {
                factors.push((q, k));
            }
        }
    }
    let unit = Unit::of(&rest).ok_or_else(|| Error::Internal(format!("factor of {z} left {rest}")))?;
    factors.sort_by(|a, b| prime_order(&a.0, &b.0));
    Ok(GFactorization { unit, factors })
}

/// Enumerates one canonical representative of every divisor class of `f`.
pub fn divisors(f: &GFactorization) -> Divisors<'_> {
    Divisors {
        f,
        exps: vec![0; f.factors.len()],
        done: false,
    }
}

/// Iterator returned by [`divisors`].
pub struct Divisors<'a> {
    f: &'a GFactorization,
    exps: Vec<u32>,
    done: bool,
}

impl Iterator for Divisors<'_> {
    type Item = GaussianInt;

    fn next(&mut self) -> Option<GaussianInt> {
        if self.done {
            return None;
        }
        let d = self
            .f
            .factors
            .iter()
            .zip(&self.exps)
            .fold(GaussianInt::one(), |acc, ((p, _), &e)| &acc * &p.pow(e));
        // advance the mixed-radix counter
        let mut i = 0;
        loop {
            if i == self.exps.len() {
                self.done = true;
                break;
            }
            if self.exps[i] < self.f.factors[i].1 {
                self.exps[i] += 1;
                break;
            }
            self.exps[i] = 0;
            i += 1;
        }
        Some(d.normalized())
    }
}

/// A square root of `z` in `Z[i]` if one exists; the returned root has
/// `re > 0`, or `re == 0` and `im >= 0`.
pub fn sqrt_exact(z: &GaussianInt) -> Option<GaussianInt> {
    if z.is_zero() {
        return Some(GaussianInt::zero());
    }
    // (a+bi)^2 = z  =>  a^2 + b^2 = |z|,  a^2 - b^2 = re(z)
    let n = z.norm();
    let s = n.sqrt();
    if &s * &s != n {
        return None;
    }
    let a2 = &s + &z.re;
    let b2 = &s - &z.re;
    if a2.is_odd() || b2.is_odd() {
        return None;
    }
    let a2: BigInt = a2 / 2;
    let b2: BigInt = b2 / 2;
    let a = a2.sqrt();
    let b = b2.sqrt();
    if &a * &a != a2 || &b * &b != b2 {
        return None;
    }
    let w = if (&a * &b * 2) == z.im {
        GaussianInt::new(a, b)
    } else {
        GaussianInt::new(a, -b)
    };
    if &w * &w != *z {
        return None;
    }
    if w.re.is_negative() || (w.re.is_zero() && w.im.is_negative()) {
        Some(-w)
    } else {
        Some(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::from_i64(re, im)
    }

    #[test]
    fn factor_small_examples() {
        let f = factor(&g(5, 0)).unwrap();
        assert_eq!(f.unit(), Unit::One);
        assert_eq!(f.factors(), &[(g(2, 1), 1), (g(2, -1), 1)]);

        let f = factor(&g(2, 0)).unwrap();
        assert_eq!(f.unit(), Unit::NegI);
        assert_eq!(f.factors(), &[(g(1, 1), 2)]);

        let f = factor(&g(0, 13)).unwrap();
        assert_eq!(f.expand(), g(0, 13));
        assert_eq!(f.factors(), &[(g(3, 2), 1), (g(3, -2), 1)]);

        assert!(factor(&g(0, 0)).is_err());
    }

    #[test]
    fn factor_published_constant() {
        let one_i = g(1, 1);
        let parts = [
            (one_i.clone(), 22),
            (g(2, 1), 2),
            (g(2, -1), 2),
            (g(3, 0), 2),
            (g(3, 2), 2),
            (g(3, -2), 1),
            (g(4, 1), 1),
            (g(4, -1), 1),
            (g(5, 2), 1),
        ];
        let c = parts
            .iter()
            .fold(g(-1, 0), |acc, (p, e)| &acc * &p.pow(*e));
        let f = factor(&c).unwrap();
        assert_eq!(f.expand(), c);
        let mut expected: Vec<_> = parts.to_vec();
        expected.sort_by(|a, b| prime_order(&a.0, &b.0));
        assert_eq!(f.factors(), expected.as_slice());
        assert_eq!(
            f.to_factored_string(),
            "(1,1)^22*(2,1)^2*(2,-1)^2*(3,0)^2*(3,2)^2*(3,-2)*(4,1)*(4,-1)*(5,2)"
        );
    }

    #[test]
    fn divisors_examples() {
        let set = |z: GaussianInt| {
            let mut v: Vec<_> = divisors(&factor(&z).unwrap()).collect();
            v.sort_by(|a, b| a.cmp_canonical(b));
            v
        };
        assert_eq!(set(g(2, 0)), vec![g(1, 0), g(1, 1), g(2, 0)]);
        assert_eq!(set(g(5, 0)), vec![g(1, 0), g(2, -1), g(2, 1), g(5, 0)]);
    }

    #[test]
    fn divisors_of_twelve_match_brute_force() {
        let twelve = g(12, 0);
        let found: Vec<_> = divisors(&factor(&twelve).unwrap()).collect();
        // brute force: every canonical z with norm | 144 that divides 12
        let mut brute = Vec::new();
        for a in 1..=12i64 {
            for b in -12..=12i64 {
                let z = g(a, b);
                if z.is_canonical() && z.divides(&twelve) {
                    brute.push(z);
                }
            }
        }
        assert_eq!(found.len(), 10);
        assert_eq!(brute.len(), 10);
        for d in &found {
            assert!(brute.contains(d), "{d}");
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_exact(&g(0, 2)), Some(g(1, 1)));
        assert_eq!(sqrt_exact(&g(0, 1)), None);
        assert_eq!(sqrt_exact(&g(5, 12)), Some(g(3, 2)));
        assert_eq!(sqrt_exact(&g(0, 0)), Some(g(0, 0)));
        assert_eq!(sqrt_exact(&g(-4, 0)), Some(g(0, 2)));
        assert_eq!(sqrt_exact(&g(0, 3)), None);
    }

    #[test]
    fn sqrt_of_i_has_no_integer_solution() {
        // a^2 - b^2 = 0 and 2ab = 1 over a small brute-force window
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                assert!(!(a * a - b * b == 0 && 2 * a * b == 1));
            }
        }
        assert_eq!(sqrt_exact(&g(0, 1)), None);
    }

    #[test]
    fn factored_text_round_trip() {
        let f = GFactorization::parse_factored("(1,1)^4*(2,1)*(2,-1)").unwrap();
        assert_eq!(f.to_factored_string(), "(1,1)^4*(2,1)*(2,-1)");
        let h = GFactorization::parse_factored("(-3,2)*(3,2)").unwrap();
        assert_eq!(h.to_factored_string(), "(3,2)*(3,-2)");
        assert!(GFactorization::parse_factored("(4,0)").is_err());
        assert_eq!(GFactorization::parse_factored("1").unwrap(), GFactorization::one());
    }

    #[test]
    fn display_with_unit() {
        assert_eq!(factor(&g(-2, 0)).unwrap().to_string(), "i*(1,1)^2");
        assert_eq!(factor(&g(0, -1)).unwrap().to_string(), "-i");
    }
}
