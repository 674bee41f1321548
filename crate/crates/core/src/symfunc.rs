//! Polynomials over `Q(i)`, power sums, Newton's identities, Lagrange
//! interpolation and extraction of Gaussian-integer roots.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gint::{divisors, factor, GaussianInt, GaussianRational, Unit};
use crate::{Error, Result};

/// Default bound on `log2(norm(constant term))` accepted by [`gaussian_roots`].
pub const DEFAULT_ROOT_BUDGET_BITS: u64 = 128;

/// Dense polynomial; `coeffs[i]` is the coefficient of `z^i`, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[GaussianInt]) -> Self {
        Polynomial::new(coeffs.iter().map(GaussianRational::from).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `z - a`.
    pub fn linear_root(a: &GaussianInt) -> Self {
        Polynomial::from_ints(&[-a, GaussianInt::one()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> GaussianRational {
        self.coeffs.get(i).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_integral)
    }

    pub fn to_ints(&self) -> Option<Vec<GaussianInt>> {
        self.coeffs.iter().map(GaussianRational::to_integer).collect()
    }

    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * z) + c)
    }

    pub fn scale(&self, k: &GaussianRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading().expect("nonzero").recip()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &(&c * d);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `prod (z - r)` over the given roots.
pub fn poly_from_roots(roots: &[GaussianInt]) -> Polynomial {
    Polynomial::from_ints(&int_poly_from_roots(roots))
}

/// Coefficients (lowest degree first) of `prod (z - r)`.
pub(crate) fn int_poly_from_roots(roots: &[GaussianInt]) -> Vec<GaussianInt> {
    let mut c = vec![GaussianInt::one()];
    for r in roots {
        // multiply by (z - r)
        let mut next = vec![GaussianInt::zero(); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= &(a * r);
        }
        c = next;
    }
    c
}

/// `[p_1, ..., p_kmax]` with `p_j = sum s^j`.
pub fn power_sums(s: &[GaussianInt], k_max: usize) -> Vec<GaussianInt> {
    let mut powers: Vec<GaussianInt> = s.to_vec();
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        if k > 1 {
            for (p, x) in powers.iter_mut().zip(s) {
                *p = &*p * x;
            }
        }
        out.push(powers.iter().fold(GaussianInt::zero(), |acc, p| &acc + p));
    }
    out
}

/// Elementary symmetric values `[e_1, ..., e_n]` from power sums via
/// `k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) p_i`.
pub fn elem_from_power(p: &[GaussianRational], n: usize) -> Result<Vec<GaussianRational>> {
    if p.len() < n {
        return Err(Error::InvalidArgument(format!(
            "need {n} power sums, got {}",
            p.len()
        )));
    }
    let mut e = vec![GaussianRational::one()];
    for k in 1..=n {
        let mut s = GaussianRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            s = if i % 2 == 1 { &s + &term } else { &s - &term };
        }
        let k_inv = GaussianRational::new(GaussianInt::one(), BigInt::from(k))?;
        e.push(&s * &k_inv);
    }
    e.remove(0);
    Ok(e)
}

/// Power sums `[p_1, ..., p_kmax]` from elementary symmetric values `[e_1, ..., e_n]`;
/// `e_j = 0` for `j > n`.
pub fn power_from_elem(e: &[GaussianRational], k_max: usize) -> Vec<GaussianRational> {
    let e_at = |j: usize| -> GaussianRational {
        if j == 0 {
            GaussianRational::one()
        } else {
            e.get(j - 1).cloned().unwrap_or_else(GaussianRational::zero)
        }
    };
    let mut p: Vec<GaussianRational> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        // p_k = (-1)^(k-1) k e_k + sum_{i<k} (-1)^(k-i-1) e_(k-i) p_i
        let k_e = &e_at(k) * &GaussianRational::from_i64(k as i64, 0);
        let mut acc = if k % 2 == 1 { k_e } else { -k_e };
        for i in 1..k {
            let term = &e_at(k - i) * &p[i - 1];
            acc = if (k - i - 1) % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        p.push(acc);
    }
    p
}

/// The unique polynomial of degree `< points.len()` through the given points.
pub fn lagrange_interpolate(points: &[(GaussianRational, GaussianRational)]) -> Result<Polynomial> {
    for (i, (a, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(b, _)| b == a) {
            return Err(Error::DuplicateAbscissa(a.to_string()));
        }
    }
    let mut acc = Polynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Polynomial::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = (xi - xj).recip()?;
            let lin = Polynomial::new(vec![-(xj * &denom), denom]);
            basis = basis.mul(&lin);
        }
        acc = acc.add(&basis);
    }
    Ok(acc)
}

/// Gaussian-integer roots of a monic integral polynomial, with multiplicity.
pub fn gaussian_roots(p: &Polynomial) -> Result<Vec<(GaussianInt, usize)>> {
    gaussian_roots_with_budget(p, DEFAULT_ROOT_BUDGET_BITS)
}

/// As [`gaussian_roots`], refusing constant terms whose norm needs more than
/// `budget_bits` bits to factor.
pub fn gaussian_roots_with_budget(p: &Polynomial, budget_bits: u64) -> Result<Vec<(GaussianInt, usize)>> {
    if !p.is_monic() {
        return Err(Error::BadPolynomial);
    }
    let coeffs = p.to_ints().ok_or(Error::BadPolynomial)?;
    let mut roots = int_roots(coeffs, budget_bits)?;
    roots.sort_by(|a, b| a.0.cmp_canonical(&b.0));
    Ok(roots)
}

pub(crate) fn horner(c: &[GaussianInt], z: &GaussianInt) -> GaussianInt {
    c.iter()
        .rev()
        .fold(GaussianInt::zero(), |acc, a| &(&acc * z) + a)
}

/// Divides by `(z - r)` assuming `r` is a root.
pub(crate) fn deflate(c: &[GaussianInt], r: &GaussianInt) -> Vec<GaussianInt> {
    let d = c.len() - 1;
    let mut q = vec![GaussianInt::zero(); d];
    let mut carry = GaussianInt::zero();
    for i in (1..=d).rev() {
        carry = &(&carry * r) + &c[i];
        q[i - 1] = carry.clone();
    }
    q
}

fn push_root(roots: &mut Vec<(GaussianInt, usize)>, r: GaussianInt) {
    match roots.iter_mut().find(|(q, _)| *q == r) {
        Some((_, m)) => *m += 1,
        None => roots.push((r, 1)),
    }
}

/// Root search over monic integral coefficients (lowest degree first).
pub(crate) fn int_roots(mut c: Vec<GaussianInt>, budget_bits: u64) -> Result<Vec<(GaussianInt, usize)>> {
    let mut roots = Vec::new();
    let zeros = c.iter().take_while(|a| a.is_zero()).count();
    if zeros > 0 {
        roots.push((GaussianInt::zero(), zeros));
        c.drain(..zeros);
    }
    if c.len() <= 1 {
        return Ok(roots);
    }
    if c.len() == 2 {
        push_root(&mut roots, -&c[0]);
        return Ok(roots);
    }
    let a0 = c[0].clone();
    if a0.norm().bits() > budget_bits {
        return Err(Error::FactorBudget(budget_bits));
    }
    // Cauchy bound: |r| <= 1 + max |c_i|
    let max_abs = c[..c.len() - 1]
        .iter()
        .map(|a| a.norm().sqrt() + 1u32)
        .max()
        .unwrap_or_default();
    let bound = &max_abs + BigInt::one();
    let bound_sq = &bound * &bound;

    let f = factor(&a0)?;
    'outer: for d in divisors(&f) {
        if d.norm() > bound_sq {
            continue;
        }
        for u in Unit::ALL {
            let r = d.mul_unit(u);
            while horner(&c, &r).is_zero() {
                c = deflate(&c, &r);
                push_root(&mut roots, r.clone());
                if c.len() == 2 {
                    push_root(&mut roots, -&c[0]);
                    break 'outer;
                }
            }
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::from_i64(re, im)
    }

    fn q(re: i64, im: i64, den: i64) -> GaussianRational {
        GaussianRational::new(g(re, im), BigInt::from(den)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<GaussianInt> {
        v.iter().map(|&a| g(a, 0)).collect()
    }

    fn rats(v: &[GaussianInt]) -> Vec<GaussianRational> {
        v.iter().map(GaussianRational::from).collect()
    }

    #[test]
    fn from_roots_examples() {
        let p = poly_from_roots(&[g(1, 0), g(-1, 0), g(0, 1), g(0, -1)]);
        assert_eq!(p, Polynomial::from_ints(&ints(&[-1, 0, 0, 0, 1])));
        assert_eq!(poly_from_roots(&[]), Polynomial::one());
        let p = poly_from_roots(&ints(&[1, 5, 6]));
        assert_eq!(p, Polynomial::from_ints(&ints(&[-30, 41, -12, 1])));
    }

    #[test]
    fn power_sums_examples() {
        let expect = ints(&[48, 580, 7776, 109444, 1584288]);
        assert_eq!(power_sums(&ints(&[0, 3, 5, 11, 13, 16]), 5), expect);
        assert_eq!(power_sums(&ints(&[1, 1, 8, 8, 15, 15]), 5), expect);
        let z = g(2, -3);
        assert_eq!(power_sums(&[z.clone()], 3), vec![z.clone(), z.pow(2), z.pow(3)]);
    }

    #[test]
    fn newton_examples() {
        let p = rats(&power_sums(&ints(&[1, 5, 6]), 3));
        assert_eq!(elem_from_power(&p, 3).unwrap(), rats(&ints(&[12, 41, 30])));
        let z = g(4, 7);
        assert_eq!(elem_from_power(&rats(&[z.clone()]), 1).unwrap(), rats(&[z.clone()]));
        let p = rats(&power_sums(&[g(2, 1), g(2, -1)], 2));
        assert_eq!(elem_from_power(&p, 2).unwrap(), rats(&ints(&[4, 5])));
        assert!(elem_from_power(&p, 3).is_err());

        assert_eq!(power_from_elem(&rats(&ints(&[4, 5])), 2), rats(&ints(&[4, 6])));
        assert_eq!(power_from_elem(&rats(&[z.clone()]), 1), rats(&[z]));
        let s = ints(&[0, 3, 5, 11, 13, 16]);
        let e = elem_from_power(&rats(&power_sums(&s, 6)), 6).unwrap();
        assert_eq!(power_from_elem(&e, 5), rats(&ints(&[48, 580, 7776, 109444, 1584288])));
    }

    #[test]
    fn lagrange_examples() {
        let p = lagrange_interpolate(&[(q(0, 0, 1), q(1, 0, 1)), (q(1, 0, 1), q(2, 0, 1))]).unwrap();
        assert_eq!(p, Polynomial::from_ints(&ints(&[1, 1])));

        let p = lagrange_interpolate(&[(q(2, 0, 1), q(-1, 0, 3)), (q(3, 0, 1), q(-1, 0, 4))]).unwrap();
        assert_eq!(p, Polynomial::new(vec![q(-1, 0, 2), q(1, 0, 12)]));

        let p = lagrange_interpolate(&[(q(3, 1, 2), q(5, -7, 3))]).unwrap();
        assert_eq!(p, Polynomial::constant(q(5, -7, 3)));

        let dup = [(q(1, 0, 1), q(1, 0, 1)), (q(1, 0, 1), q(2, 0, 1))];
        assert!(matches!(lagrange_interpolate(&dup), Err(Error::DuplicateAbscissa(_))));
    }

    #[test]
    fn roots_examples() {
        // z^2 - 2iz - 2 = (z - (1+i))(z - (-1+i))
        let p = poly_from_roots(&[g(1, 1), g(-1, 1)]);
        assert_eq!(p, Polynomial::from_ints(&[g(-2, 0), g(0, -2), g(1, 0)]));
        let r = gaussian_roots(&p).unwrap();
        assert_eq!(r, vec![(g(-1, 1), 1), (g(1, 1), 1)]);

        let p = Polynomial::from_ints(&ints(&[-42, 41, -12, 1]));
        assert_eq!(p, poly_from_roots(&ints(&[2, 3, 7])));
        let r = gaussian_roots(&p).unwrap();
        assert_eq!(r, vec![(g(2, 0), 1), (g(3, 0), 1), (g(7, 0), 1)]);

        let r = gaussian_roots(&Polynomial::from_ints(&ints(&[1, 0, 1]))).unwrap();
        assert_eq!(r, vec![(g(0, -1), 1), (g(0, 1), 1)]);
    }

    #[test]
    fn roots_partial_and_errors() {
        // (z - 2)(z^2 - 2): only one root in Z[i]
        let p = poly_from_roots(&[g(2, 0)]).mul(&Polynomial::from_ints(&ints(&[-2, 0, 1])));
        assert_eq!(gaussian_roots(&p).unwrap(), vec![(g(2, 0), 1)]);
        // multiplicities and zero roots
        let p = poly_from_roots(&[g(0, 0), g(0, 0), g(1, 1), g(1, 1), g(-3, 2)]);
        assert_eq!(
            gaussian_roots(&p).unwrap(),
            vec![(g(0, 0), 2), (g(1, 1), 2), (g(-3, 2), 1)]
        );
        assert_eq!(gaussian_roots(&Polynomial::from_ints(&ints(&[2, 1]))).unwrap(), vec![(g(-2, 0), 1)]);
        assert!(matches!(
            gaussian_roots(&Polynomial::from_ints(&ints(&[1, 2, 2]))),
            Err(Error::BadPolynomial)
        ));
        let half = Polynomial::new(vec![q(1, 0, 2), q(0, 0, 1), q(1, 0, 1)]);
        assert!(matches!(gaussian_roots(&half), Err(Error::BadPolynomial)));
        assert!(gaussian_roots(&Polynomial::zero()).is_err());
        let big = poly_from_roots(&[g(1 << 40, 3), g(1 << 30, 1), g(7, 1 << 35)]);
        assert!(matches!(gaussian_roots_with_budget(&big, 64), Err(Error::FactorBudget(64))));
    }

    #[test]
    fn division() {
        let a = poly_from_roots(&ints(&[1, 2, 3]));
        let b = poly_from_roots(&ints(&[2]));
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot, poly_from_roots(&ints(&[1, 3])));
        assert!(a.div_rem(&Polynomial::zero()).is_err());
    }
}
