//! Exact arithmetic in the Gaussian integers `Z[i]` and the Gaussian rationals `Q(i)`.

pub(crate) mod factor;
pub mod intfactor;
mod rational;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use factor::{divisors, factor, is_gaussian_prime, prime_order, sqrt_exact, GFactorization};
pub use rational::GaussianRational;

/// A Gaussian integer `re + im*i` with arbitrary-precision parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

/// One of the four units of `Z[i]`, stored as a power of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    One,
    I,
    NegOne,
    NegI,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::I, Unit::NegOne, Unit::NegI];

    fn exponent(self) -> u8 {
        match self {
            Unit::One => 0,
            Unit::I => 1,
            Unit::NegOne => 2,
            Unit::NegI => 3,
        }
    }

    fn from_exponent(e: u32) -> Unit {
        match e % 4 {
            0 => Unit::One,
            1 => Unit::I,
            2 => Unit::NegOne,
            _ => Unit::NegI,
        }
    }

    pub fn mul(self, other: Unit) -> Unit {
        Unit::from_exponent(u32::from(self.exponent() + other.exponent()))
    }

    pub fn inverse(self) -> Unit {
        Unit::from_exponent(4 - u32::from(self.exponent()))
    }

    pub fn pow(self, e: u32) -> Unit {
        Unit::from_exponent(u32::from(self.exponent()) * (e % 4))
    }

    pub fn to_gaussian(self) -> GaussianInt {
        match self {
            Unit::One => GaussianInt::from_i64(1, 0),
            Unit::I => GaussianInt::from_i64(0, 1),
            Unit::NegOne => GaussianInt::from_i64(-1, 0),
            Unit::NegI => GaussianInt::from_i64(0, -1),
        }
    }

    /// Whether this unit is an `n`-th power of some unit.
    pub fn is_nth_power(self, n: u32) -> bool {
        // i^t = v^n solvable iff gcd(n, 4) divides t
        let g = n.gcd(&4);
        u32::from(self.exponent()) % g == 0
    }

    pub fn of(z: &GaussianInt) -> Option<Unit> {
        Unit::ALL.into_iter().find(|u| &u.to_gaussian() == z)
    }
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        GaussianInt::new(re, im)
    }

    pub fn i() -> Self {
        GaussianInt::from_i64(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GaussianInt {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn mul_unit(&self, u: Unit) -> Self {
        match u {
            Unit::One => self.clone(),
            Unit::I => GaussianInt::new(-&self.im, self.re.clone()),
            Unit::NegOne => -self,
            Unit::NegI => GaussianInt::new(self.im.clone(), -&self.re),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division `a = q*b + r` with `norm(r) < norm(b)`.
    ///
    /// The quotient rounds each coordinate of `a*conj(b)/norm(b)` to the nearest
    /// integer, with exact halves rounded toward negative infinity.
    pub fn divrem(&self, b: &GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = b.norm();
        let t = self * &b.conj();
        let q = GaussianInt::new(round_div(&t.re, &n), round_div(&t.im, &n));
        let r = self - &(&q * b);
        Ok((q, r))
    }

    /// `Some(self / b)` when `b` divides `self` exactly.
    pub fn div_exact(&self, b: &GaussianInt) -> Option<GaussianInt> {
        if b.is_zero() {
            return None;
        }
        let n = b.norm();
        let t = self * &b.conj();
        let (qr, rr) = t.re.div_rem(&n);
        if !rr.is_zero() {
            return None;
        }
        let (qi, ri) = t.im.div_rem(&n);
        if !ri.is_zero() {
            return None;
        }
        Some(GaussianInt::new(qr, qi))
    }

    pub fn divides(&self, other: &GaussianInt) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    /// Residue modulo `q` given by the Euclidean remainder; congruent inputs give equal residues.
    pub fn rem(&self, q: &GaussianInt) -> Result<GaussianInt> {
        Ok(self.divrem(q)?.1)
    }

    /// True when `re > 0` and `-re < im <= re`.
    pub fn is_canonical(&self) -> bool {
        self.re.is_positive() && -&self.re < self.im && self.im <= self.re
    }

    /// Returns `(c, u)` with `c = u*self` in the canonical half-open quadrant.
    pub fn canonical_associate(&self) -> Result<(GaussianInt, Unit)> {
        if self.is_zero() {
            return Err(Error::ZeroArgument("canonical_associate"));
        }
        for u in Unit::ALL {
            let c = self.mul_unit(u);
            if c.is_canonical() {
                return Ok((c, u));
            }
        }
        unreachable!("exactly one associate is canonical")
    }

    /// Canonical associate, with zero mapped to itself.
    pub fn normalized(&self) -> GaussianInt {
        match self.canonical_associate() {
            Ok((c, _)) => c,
            Err(_) => GaussianInt::zero(),
        }
    }

    /// Largest `e` with `p^e | self`; `self` must be nonzero and `p` a non-unit.
    pub fn valuation(&self, p: &GaussianInt) -> u32 {
        assert!(!self.is_zero() && !p.is_zero() && !p.is_unit());
        let mut e = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(p) {
            cur = q;
            e += 1;
        }
        e
    }

    /// Total order by `(norm, re, im)`, used for canonical multiset storage.
    pub fn cmp_canonical(&self, other: &GaussianInt) -> Ordering {
        self.norm()
            .cmp(&other.norm())
            .then_with(|| self.re.cmp(&other.re))
            .then_with(|| self.im.cmp(&other.im))
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        use num_traits::ToPrimitive;
        Some((self.re.to_i64()?, self.im.to_i64()?))
    }
}

/// Nearest integer to `a/n` for `n > 0`; ties go toward negative infinity.
fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
    // floor((2a + n - 1) / 2n) rounds to nearest with halves going down
    let two_n = n * 2;
    let num: BigInt = a * 2 + n - 1;
    num.div_floor(&two_n)
}

/// Gaussian gcd normalized to its canonical associate.
pub fn gcd(a: &GaussianInt, b: &GaussianInt) -> Result<GaussianInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroArgument("gcd"));
    }
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = x.divrem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.normalized())
}

impl Zero for GaussianInt {
    fn zero() -> Self {
        GaussianInt::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        GaussianInt::is_zero(self)
    }
}

impl One for GaussianInt {
    fn one() -> Self {
        GaussianInt::new(1, 0)
    }
}

impl From<i64> for GaussianInt {
    fn from(v: i64) -> Self {
        GaussianInt::from_i64(v, 0)
    }
}

impl From<BigInt> for GaussianInt {
    fn from(v: BigInt) -> Self {
        GaussianInt::new(v, 0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b GaussianInt> for &'a GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: &'b GaussianInt) -> GaussianInt {
                let f: fn(&GaussianInt, &GaussianInt) -> GaussianInt = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussianInt> for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: GaussianInt) -> GaussianInt {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b GaussianInt> for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: &'b GaussianInt) -> GaussianInt {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<GaussianInt> for &'a GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: GaussianInt) -> GaussianInt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianInt {
    re: &a.re + &b.re,
    im: &a.im + &b.im,
});
forward_binop!(Sub, sub, |a, b| GaussianInt {
    re: &a.re - &b.re,
    im: &a.im - &b.im,
});
forward_binop!(Mul, mul, |a, b| GaussianInt {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl AddAssign<&GaussianInt> for GaussianInt {
    fn add_assign(&mut self, rhs: &GaussianInt) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianInt> for GaussianInt {
    fn sub_assign(&mut self, rhs: &GaussianInt) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianInt> for GaussianInt {
    fn mul_assign(&mut self, rhs: &GaussianInt) {
        *self = &*self * rhs;
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.re, self.im)
    }
}

impl fmt::Debug for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianInt {
    type Err = Error;

    /// Parses `(re,im)`; surrounding whitespace is tolerated, inner spaces are not.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected (re,im), got {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (re, im) = inner.split_once(',').ok_or_else(bad)?;
        let parse = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        Ok(GaussianInt::new(parse(re)?, parse(im)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::from_i64(re, im)
    }

    #[test]
    fn norm_examples() {
        assert_eq!(g(3, 2).norm(), BigInt::from(13));
        assert_eq!(g(0, 0).norm(), BigInt::from(0));
        let p = &g(1, 1) * &g(2, 1);
        assert_eq!(p, g(1, 3));
        assert_eq!(p.norm(), BigInt::from(10));
        assert_eq!(p.norm(), g(1, 1).norm() * g(2, 1).norm());
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = g(7, 4).divrem(&g(2, 1)).unwrap();
        assert_eq!((q.clone(), r.clone()), (g(4, 0), g(-1, 0)));
        assert_eq!(&(&q * &g(2, 1)) + &r, g(7, 4));

        let (q, r) = g(5, -3).divrem(&g(5, -3)).unwrap();
        assert_eq!((q, r), (g(1, 0), g(0, 0)));

        let (q, r) = g(5, 0).divrem(&g(2, 1)).unwrap();
        assert_eq!((q, r), (g(2, -1), g(0, 0)));

        assert!(matches!(g(1, 0).divrem(&g(0, 0)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn divrem_ties_round_down() {
        // 1/2 and -1/2 both round toward -inf
        let (q, r) = g(1, 1).divrem(&g(2, 0)).unwrap();
        assert_eq!(q, g(0, 0));
        assert_eq!(r, g(1, 1));
        let (q, r) = g(-1, -1).divrem(&g(2, 0)).unwrap();
        assert_eq!(q, g(-1, -1));
        assert_eq!(r, g(1, 1));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&g(2, 0), &g(1, 1)).unwrap(), g(1, 1));
        assert_eq!(gcd(&g(-3, 4), &g(0, 0)).unwrap(), g(4, 3));
        assert!(gcd(&g(0, 0), &g(0, 0)).is_err());
    }

    #[test]
    fn canonical_associate_examples() {
        assert_eq!(
            g(-1, -1).canonical_associate().unwrap(),
            (g(1, 1), Unit::NegOne)
        );
        assert_eq!(g(2, -1).canonical_associate().unwrap(), (g(2, -1), Unit::One));
        assert_eq!(g(0, 13).canonical_associate().unwrap(), (g(13, 0), Unit::NegI));
        assert!(g(0, 0).canonical_associate().is_err());
    }

    #[test]
    fn units() {
        for u in Unit::ALL {
            assert!(u.mul(u.inverse()) == Unit::One);
            assert_eq!(Unit::of(&u.to_gaussian()), Some(u));
        }
        assert_eq!(Unit::I.pow(2), Unit::NegOne);
        assert!(Unit::NegOne.is_nth_power(2));
        assert!(!Unit::I.is_nth_power(2));
        assert!(Unit::I.is_nth_power(3));
        assert!(!Unit::NegOne.is_nth_power(4));
    }

    #[test]
    fn text_form() {
        assert_eq!(g(3, -2).to_string(), "(3,-2)");
        assert_eq!("(3,-2)".parse::<GaussianInt>().unwrap(), g(3, -2));
        assert_eq!("(+3,0)".parse::<GaussianInt>().unwrap(), g(3, 0));
        assert!("(3, -2)".parse::<GaussianInt>().is_err());
        assert!("3,-2".parse::<GaussianInt>().is_err());
        assert!("(3,)".parse::<GaussianInt>().is_err());
    }
}
