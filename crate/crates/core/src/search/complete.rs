//! Exact completion of enumerated prefixes into full solutions.

use num_traits::{One, Zero};

use crate::gint::{sqrt_exact, GaussianInt, GaussianRational};
use crate::pte::{verify_degree, PteSolution};
use crate::symfunc::{deflate, horner, int_poly_from_roots, int_roots, lagrange_interpolate, Polynomial, DEFAULT_ROOT_BUDGET_BITS};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Completion {
    /// `f` with `C*f = prod` over the non-enumerated `x`'s (general and
    /// sym-even modes, on the squared side for the latter), or
    /// `prod(z - x)` itself in sym-odd mode.
    pub interpolant: Polynomial,
    pub constant: GaussianInt,
    pub solution: PteSolution,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Found(Completion),
    Rejected(&'static str),
    /// A root search exceeded the factorization budget.
    Unresolved(String),
}

impl Outcome {
    pub fn found(self) -> Option<Completion> {
        match self {
            Outcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

fn roots_or_unresolved(c: Vec<GaussianInt>) -> Result<std::result::Result<Vec<GaussianInt>, Outcome>> {
    match int_roots(c, DEFAULT_ROOT_BUDGET_BITS) {
        Ok(r) => Ok(Ok(r
            .into_iter()
            .flat_map(|(z, m)| std::iter::repeat(z).take(m))
            .collect())),
        Err(Error::FactorBudget(b)) => Ok(Err(Outcome::Unresolved(format!("constant term exceeds {b} bits")))),
        Err(e) => Err(e),
    }
}

/// Completes `n - k + 1` enumerated `x`'s and `k` enumerated `y`'s to an ideal
/// solution of size `n`.
pub fn complete_general(xs: &[GaussianInt], ys: &[GaussianInt], n: usize) -> Result<Outcome> {
    if xs.is_empty() || ys.is_empty() || xs.len() + ys.len() != n + 1 {
        return Err(Error::InvalidArgument(format!(
            "{} x's and {} y's do not fit size {n}",
            xs.len(),
            ys.len()
        )));
    }
    let k = ys.len();
    for (j, y) in ys.iter().enumerate() {
        if ys[..j].contains(y) {
            return Ok(Outcome::Rejected("repeated y"));
        }
        if xs.contains(y) {
            return Ok(Outcome::Rejected("y coincides with an x"));
        }
    }
    let mut points = Vec::with_capacity(k);
    for y in ys {
        let prod = xs.iter().fold(GaussianInt::one(), |acc, x| &acc * &(y - x));
        points.push((GaussianRational::from(y), GaussianRational::ratio(&GaussianInt::one(), &prod)?));
    }
    let f = lagrange_interpolate(&points)?;
    if f.degree() != Some(k - 1) {
        return Ok(Outcome::Rejected("interpolant degree drops"));
    }
    let lead = f.leading().expect("nonzero").clone();
    let c = match lead.recip()?.to_integer() {
        Some(c) => c,
        None => return Ok(Outcome::Rejected("constant is not integral")),
    };
    let g = match f.scale(&GaussianRational::from(&c)).to_ints() {
        Some(g) => g,
        None => return Ok(Outcome::Rejected("scaled interpolant is not integral")),
    };
    let rest_x = match roots_or_unresolved(g)? {
        Ok(r) => r,
        Err(o) => return Ok(o),
    };
    if rest_x.len() != k - 1 {
        return Ok(Outcome::Rejected("interpolant lacks Gaussian roots"));
    }
    let mut all_x: Vec<GaussianInt> = xs.to_vec();
    all_x.extend(rest_x);

    // prod(z - x) - C, with the known y's divided out
    let mut p = int_poly_from_roots(&all_x);
    p[0] -= &c;
    for y in ys {
        if !horner(&p, y).is_zero() {
            return Err(Error::Internal(format!("enumerated y {y} is not a root")));
        }
        p = deflate(&p, y);
    }
    let rest_y = match roots_or_unresolved(p)? {
        Ok(r) => r,
        Err(o) => return Ok(o),
    };
    if rest_y.len() != n - k {
        return Ok(Outcome::Rejected("remaining y's are not Gaussian integers"));
    }
    let mut all_y: Vec<GaussianInt> = ys.to_vec();
    all_y.extend(rest_y);
    let solution = PteSolution::ideal(all_x, all_y)?;
    let degree = verify_degree(&solution);
    if degree + 1 != n {
        return Err(Error::Internal(format!("completion has degree {degree}, expected {}", n - 1)));
    }
    Ok(Outcome::Found(Completion { interpolant: f, constant: c, solution }))
}

fn plus_minus(roots: &[GaussianInt]) -> Vec<GaussianInt> {
    roots.iter().flat_map(|r| [r.clone(), -r]).collect()
}

/// Completes a solution closed under negation from enumerated half-values;
/// the completion runs on squares and takes square roots at the end.
pub fn complete_sym_even(a: &[GaussianInt], b: &[GaussianInt], n: usize) -> Result<Outcome> {
    if n % 2 != 0 {
        return Err(Error::InvalidArgument("sym-even needs an even size".into()));
    }
    let wa: Vec<GaussianInt> = a.iter().map(|z| z * z).collect();
    let wb: Vec<GaussianInt> = b.iter().map(|z| z * z).collect();
    let inner = match complete_general(&wa, &wb, n / 2)? {
        Outcome::Found(c) => c,
        other => return Ok(other),
    };
    let roots = |ws: &[GaussianInt]| -> Option<Vec<GaussianInt>> { ws.iter().map(sqrt_exact).collect() };
    let (Some(ra), Some(rb)) = (roots(inner.solution.x()), roots(inner.solution.y())) else {
        return Ok(Outcome::Rejected("squared root is not a square"));
    };
    let solution = PteSolution::ideal(plus_minus(&ra), plus_minus(&rb))?;
    let degree = verify_degree(&solution);
    if degree + 1 != n {
        return Err(Error::Internal(format!("lifted completion has degree {degree}")));
    }
    Ok(Outcome::Found(Completion {
        interpolant: inner.interpolant,
        constant: inner.constant,
        solution,
    }))
}

/// Fraction-free determinant over `Z[i]`.
fn det(mut m: Vec<Vec<GaussianInt>>) -> GaussianInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = GaussianInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return GaussianInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Completes `X` with `Y = -X` from `(n+1)/2` enumerated elements of `X`.
pub fn complete_sym_odd(xs: &[GaussianInt], n: usize) -> Result<Outcome> {
    if n % 2 != 1 || xs.len() != n.div_ceil(2) {
        return Err(Error::InvalidArgument(format!("{} values do not fit odd size {n}", xs.len())));
    }
    let m = (n - 1) / 2;
    let mut rows = Vec::with_capacity(m + 1);
    let mut rhs = Vec::with_capacity(m + 1);
    for x in xs {
        let sq = x * x;
        let mut row = Vec::with_capacity(m + 1);
        let mut p = x.clone();
        for _ in 0..m {
            row.push(p.clone());
            p = &p * &sq;
        }
        row.push(GaussianInt::one());
        rows.push(row);
        rhs.push(-p);
    }
    let d = det(rows.clone());
    if d.is_zero() {
        return Ok(Outcome::Rejected("singular system"));
    }
    let mut unknowns = Vec::with_capacity(m + 1);
    for col in 0..=m {
        let mut mc = rows.clone();
        for (row, v) in mc.iter_mut().zip(&rhs) {
            row[col] = v.clone();
        }
        match det(mc).div_exact(&d) {
            Some(v) => unknowns.push(v),
            None => return Ok(Outcome::Rejected("non-integral coefficients")),
        }
    }
    let k = unknowns.pop().expect("m + 1 unknowns");
    if k.is_zero() {
        return Ok(Outcome::Rejected("zero constant term"));
    }
    // P(z) = z^(2m+1) + sum a_j z^(2j+1) + K
    let mut p = vec![GaussianInt::zero(); n + 1];
    p[0] = k.clone();
    for (j, a) in unknowns.iter().enumerate() {
        p[2 * j + 1] = a.clone();
    }
    p[n] = GaussianInt::one();
    let interpolant = Polynomial::from_ints(&p);
    let mut q = p;
    for x in xs {
        if !horner(&q, x).is_zero() {
            return Err(Error::Internal(format!("enumerated x {x} is not a root")));
        }
        q = deflate(&q, x);
    }
    let rest = match roots_or_unresolved(q)? {
        Ok(r) => r,
        Err(o) => return Ok(o),
    };
    if rest.len() != m {
        return Ok(Outcome::Rejected("remaining roots are not Gaussian integers"));
    }
    let mut all_x = xs.to_vec();
    all_x.extend(rest);
    let all_y: Vec<GaussianInt> = all_x.iter().map(|z| -z).collect();
    let solution = PteSolution::ideal(all_x, all_y)?;
    let degree = verify_degree(&solution);
    if degree + 1 != n {
        return Err(Error::Internal(format!("odd completion has degree {degree}")));
    }
    Ok(Outcome::Found(Completion {
        interpolant,
        constant: &k + &k,
        solution,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pte::constant;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::from_i64(re, im)
    }

    fn reals(v: &[i64]) -> Vec<GaussianInt> {
        v.iter().map(|&a| g(a, 0)).collect()
    }

    #[test]
    fn worked_trace() {
        let c = complete_general(&reals(&[1, 5]), &reals(&[2, 3]), 3).unwrap().found().unwrap();
        let twelfth = |a: i64| GaussianRational::new(g(a, 0), 12.into()).unwrap();
        assert_eq!(c.interpolant, Polynomial::new(vec![twelfth(-6), twelfth(1)]));
        assert_eq!(c.constant, g(12, 0));
        assert_eq!(c.solution.x(), &reals(&[1, 5, 6])[..]);
        assert_eq!(c.solution.y(), &reals(&[2, 3, 7])[..]);
    }

    #[test]
    fn general_rejections() {
        assert!(matches!(complete_general(&reals(&[1, 5]), &reals(&[2, 2]), 3).unwrap(), Outcome::Rejected(_)));
        assert!(matches!(complete_general(&reals(&[1, 5]), &reals(&[1, 2]), 3).unwrap(), Outcome::Rejected(_)));
        assert!(complete_general(&reals(&[1]), &reals(&[2]), 3).is_err());
    }

    #[test]
    fn odd_reconstruction() {
        let x = [g(3, 3), g(3, 4), g(3, 5)];
        let c = complete_sym_odd(&x, 5).unwrap().found().unwrap();
        let want = [g(3, 3), g(3, 4), g(3, 5), g(-2, -8), g(-7, -4)];
        let mut sorted = want.to_vec();
        sorted.sort_by(GaussianInt::cmp_canonical);
        assert_eq!(c.solution.x(), &sorted[..]);
        assert_eq!(constant(&c.solution).unwrap(), c.constant);
        assert!(matches!(complete_sym_odd(&[g(1, 0), g(-1, 0)], 3).unwrap(), Outcome::Rejected(_)));
    }

    #[test]
    fn even_reconstruction() {
        let c = complete_sym_even(&[g(1, 0), g(4, 1)], &[g(0, 7), g(7, 4)], 6).unwrap().found().unwrap();
        assert_eq!(c.solution.n(), 6);
        assert!(c.solution.y().contains(&g(7, -3)));
        assert_eq!(constant(&c.solution).unwrap(), c.constant);
    }
}
