use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::GaussianInt;
use crate::{Error, Result};

/// An element of `Q(i)` stored as `num / den` with `den > 0` and
/// `gcd(re(num), im(num), den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    num: GaussianInt,
    den: BigInt,
}

impl GaussianRational {
    pub fn new(num: GaussianInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(mut num: GaussianInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.re.gcd(&num.im).gcd(&den);
        if !g.is_one() {
            num.re /= &g;
            num.im /= &g;
            den /= &g;
        }
        GaussianRational { num, den }
    }

    pub fn from_int(z: GaussianInt) -> Self {
        GaussianRational {
            num: z,
            den: BigInt::one(),
        }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        Self::from_int(GaussianInt::from_i64(re, im))
    }

    /// `a / b` for Gaussian integers.
    pub fn ratio(a: &GaussianInt, b: &GaussianInt) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(a * &b.conj(), b.norm()))
    }

    pub fn numer(&self) -> &GaussianInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_integer(&self) -> Option<GaussianInt> {
        self.is_integral().then(|| self.num.clone())
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            num: self.num.conj(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // den / num = den * conj(num) / norm(num)
        Ok(Self::reduced(self.num.conj().scale(&self.den), self.num.norm()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::reduced(self.num.pow(e), num_traits::pow(self.den.clone(), e as usize))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::from_int(GaussianInt::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(GaussianInt::one())
    }
}

impl From<GaussianInt> for GaussianRational {
    fn from(z: GaussianInt) -> Self {
        Self::from_int(z)
    }
}

impl From<&GaussianInt> for GaussianRational {
    fn from(z: &GaussianInt) -> Self {
        Self::from_int(z.clone())
    }
}

impl<'a, 'b> Add<&'b GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'b GaussianRational) -> GaussianRational {
        if self.den == rhs.den {
            return GaussianRational::reduced(&self.num + &rhs.num, self.den.clone());
        }
        GaussianRational::reduced(
            &self.num.scale(&rhs.den) + &rhs.num.scale(&self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a, 'b> Sub<&'b GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'b GaussianRational) -> GaussianRational {
        self + &(-rhs)
    }
}

impl<'a, 'b> Mul<&'b GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`GaussianRational::checked_div`] otherwise.
impl<'a, 'b> Div<&'b GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'b GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero Gaussian rational")
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
