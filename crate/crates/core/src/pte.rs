//! Solutions of the Prouhet-Tarry-Escott problem over `Z[i]`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gint::{factor, GaussianInt, GaussianRational, Unit};
use crate::symfunc::int_poly_from_roots;
use crate::{Error, Result};

/// Two distinct multisets of equal size, stored in canonical `(norm, re, im)` order,
/// together with the degree they are claimed to satisfy.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PteSolution {
    x: Vec<GaussianInt>,
    y: Vec<GaussianInt>,
    claimed_degree: usize,
}

impl PteSolution {
    pub fn new(mut x: Vec<GaussianInt>, mut y: Vec<GaussianInt>, claimed_degree: usize) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidSolution(format!(
                "sides have sizes {} and {}",
                x.len(),
                y.len()
            )));
        }
        let n = x.len();
        if n < 2 {
            return Err(Error::InvalidSolution(format!("size {n} is below 2")));
        }
        if claimed_degree == 0 || claimed_degree >= n {
            return Err(Error::InvalidSolution(format!(
                "degree {claimed_degree} outside 1..={}",
                n - 1
            )));
        }
        x.sort_by(GaussianInt::cmp_canonical);
        y.sort_by(GaussianInt::cmp_canonical);
        if x == y {
            return Err(Error::InvalidSolution("the two multisets are equal".into()));
        }
        Ok(PteSolution { x, y, claimed_degree })
    }

    /// A solution claimed to be ideal (degree `n - 1`).
    pub fn ideal(x: Vec<GaussianInt>, y: Vec<GaussianInt>) -> Result<Self> {
        let n = x.len();
        Self::new(x, y, n.saturating_sub(1).max(1))
    }

    pub fn x(&self) -> &[GaussianInt] {
        &self.x
    }

    pub fn y(&self) -> &[GaussianInt] {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn claimed_degree(&self) -> usize {
        self.claimed_degree
    }

    pub fn with_claimed_degree(&self, k: usize) -> Result<Self> {
        Self::new(self.x.clone(), self.y.clone(), k)
    }

    /// The same solution with the two sides exchanged.
    pub fn swapped(&self) -> Self {
        PteSolution {
            x: self.y.clone(),
            y: self.x.clone(),
            claimed_degree: self.claimed_degree,
        }
    }

    pub fn is_ideal(&self) -> bool {
        verify_degree(self) + 1 >= self.n()
    }

    /// Lexicographic comparison of `x` then `y` under the canonical element order.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        cmp_seq(&self.x, &other.x)
            .then_with(|| cmp_seq(&self.y, &other.y))
            .then_with(|| self.claimed_degree.cmp(&other.claimed_degree))
    }
}

pub(crate) fn cmp_seq(a: &[GaussianInt], b: &[GaussianInt]) -> Ordering {
    for (p, q) in a.iter().zip(b) {
        match p.cmp_canonical(q) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

impl fmt::Debug for PteSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::emit_solution(self))
    }
}

/// Affine map `z -> scale*z + shift` over `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    scale: GaussianRational,
    shift: GaussianRational,
}

impl AffineMap {
    pub fn new(scale: GaussianRational, shift: GaussianRational) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::ZeroArgument("affine scale"));
        }
        Ok(AffineMap { scale, shift })
    }

    pub fn from_ints(scale: &GaussianInt, shift: &GaussianInt) -> Result<Self> {
        Self::new(scale.into(), shift.into())
    }

    pub fn identity() -> Self {
        AffineMap {
            scale: GaussianRational::one(),
            shift: GaussianRational::zero(),
        }
    }

    pub fn scale(&self) -> &GaussianRational {
        &self.scale
    }

    pub fn shift(&self) -> &GaussianRational {
        &self.shift
    }

    pub fn apply(&self, z: &GaussianRational) -> GaussianRational {
        &(&self.scale * z) + &self.shift
    }

    pub fn apply_int(&self, z: &GaussianInt) -> Result<GaussianInt> {
        let w = self.apply(&z.into());
        w.to_integer().ok_or_else(|| Error::NotIntegral(w.to_string()))
    }

    /// `self ∘ inner`, i.e. `z -> self(inner(z))`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            scale: &self.scale * &inner.scale,
            shift: self.apply(&inner.shift),
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.scale.recip().expect("scale is nonzero");
        AffineMap {
            shift: -(&self.shift * &inv),
            scale: inv,
        }
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z -> {}*z + {}", self.scale, self.shift)
    }
}

/// Largest `j` such that the power sums of the two multisets agree for `1..=j`,
/// capped at `n`.
pub fn power_sum_degree(x: &[GaussianInt], y: &[GaussianInt]) -> usize {
    let n = x.len().max(y.len());
    let mut px: Vec<GaussianInt> = x.to_vec();
    let mut py: Vec<GaussianInt> = y.to_vec();
    for j in 1..=n {
        if j > 1 {
            for (p, v) in px.iter_mut().zip(x) {
                *p = &*p * v;
            }
            for (p, v) in py.iter_mut().zip(y) {
                *p = &*p * v;
            }
        }
        let sx = px.iter().fold(GaussianInt::zero(), |a, b| &a + b);
        let sy = py.iter().fold(GaussianInt::zero(), |a, b| &a + b);
        if sx != sy {
            return j - 1;
        }
    }
    n
}

pub fn verify_degree(s: &PteSolution) -> usize {
    power_sum_degree(&s.x, &s.y)
}

/// Degree of `prod(z - x) - prod(z - y)`, `None` when the difference vanishes.
pub fn difference_degree(x: &[GaussianInt], y: &[GaussianInt]) -> Option<usize> {
    let d = poly_difference(x, y);
    d.iter().rposition(|c| !c.is_zero())
}

fn poly_difference(x: &[GaussianInt], y: &[GaussianInt]) -> Vec<GaussianInt> {
    let px = int_poly_from_roots(x);
    let py = int_poly_from_roots(y);
    let len = px.len().max(py.len());
    (0..len)
        .map(|i| {
            let a = px.get(i).cloned().unwrap_or_default();
            let b = py.get(i).cloned().unwrap_or_default();
            &a - &b
        })
        .collect()
}

/// `C` with `prod(z - x) - prod(z - y) = C` for an ideal solution.
pub fn constant(s: &PteSolution) -> Result<GaussianInt> {
    let degree = verify_degree(s);
    if degree + 1 < s.n() {
        return Err(Error::NotIdeal { degree, n: s.n() });
    }
    let d = poly_difference(&s.x, &s.y);
    if d[1..].iter().any(|c| !c.is_zero()) {
        return Err(Error::Internal(
            "ideal power sums but non-constant polynomial difference".into(),
        ));
    }
    if d[0].is_zero() {
        return Err(Error::InvalidSolution("zero constant".into()));
    }
    Ok(d[0].clone())
}

/// Whether `sum x(x-1)...(x-m+1)` agree on both sides for `m = 1..=k`.
pub fn falling_factorials_agree(x: &[GaussianInt], y: &[GaussianInt], k: usize) -> bool {
    let mut fx: Vec<GaussianInt> = vec![GaussianInt::one(); x.len()];
    let mut fy: Vec<GaussianInt> = vec![GaussianInt::one(); y.len()];
    for m in 1..=k {
        let shift = GaussianInt::from_i64(m as i64 - 1, 0);
        for (f, v) in fx.iter_mut().zip(x) {
            *f = &*f * &(v - &shift);
        }
        for (f, v) in fy.iter_mut().zip(y) {
            *f = &*f * &(v - &shift);
        }
        let sx = fx.iter().fold(GaussianInt::zero(), |a, b| &a + b);
        let sy = fy.iter().fold(GaussianInt::zero(), |a, b| &a + b);
        if sx != sy {
            return false;
        }
    }
    true
}

pub fn falling_factorial_check(s: &PteSolution, k: usize) -> bool {
    falling_factorials_agree(&s.x, &s.y, k)
}

/// Applies `f` to every element of both sides; the image must stay in `Z[i]`.
pub fn affine_apply(s: &PteSolution, f: &AffineMap) -> Result<PteSolution> {
    let x = s.x.iter().map(|z| f.apply_int(z)).collect::<Result<Vec<_>>>()?;
    let y = s.y.iter().map(|z| f.apply_int(z)).collect::<Result<Vec<_>>>()?;
    PteSolution::new(x, y, s.claimed_degree)
}

pub fn conjugate_solution(s: &PteSolution) -> PteSolution {
    PteSolution::new(
        s.x.iter().map(GaussianInt::conj).collect(),
        s.y.iter().map(GaussianInt::conj).collect(),
        s.claimed_degree,
    )
    .expect("conjugation preserves validity")
}

/// Witness that `map` carries one solution onto another; when `swapped` the
/// image of the first `x` side is the second `y` side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Equivalence {
    pub map: AffineMap,
    pub swapped: bool,
}

/// Whether `r` is an `n`-th power in `Q(i)`.
pub fn is_nth_power(r: &GaussianRational, n: u32) -> Result<bool> {
    if r.is_zero() {
        return Ok(true);
    }
    let num = factor(r.numer())?;
    let den = factor(&GaussianInt::from(r.denom().clone()))?;
    let unit = num.unit().mul(den.unit().inverse());
    for (p, e) in num.factors() {
        let d = den.exponent_of(p);
        if (i64::from(*e) - i64::from(d)) % i64::from(n) != 0 {
            return Ok(false);
        }
    }
    for (p, e) in den.factors() {
        if num.exponent_of(p) == 0 && e % n != 0 {
            return Ok(false);
        }
    }
    Ok(unit.is_nth_power(n))
}

type RatKey = (BigInt, BigInt, BigInt);

pub(crate) fn rat_key(q: &GaussianRational) -> RatKey {
    (q.numer().re.clone(), q.numer().im.clone(), q.denom().clone())
}

pub(crate) fn sorted_keys(v: impl Iterator<Item = GaussianRational>) -> Vec<RatKey> {
    let mut out: Vec<RatKey> = v.map(|q| rat_key(&q)).collect();
    out.sort();
    out
}

pub(crate) fn centroid(s: &PteSolution) -> GaussianRational {
    let sum = s.x.iter().fold(GaussianInt::zero(), |a, b| &a + b);
    GaussianRational::new(sum, BigInt::from(s.n())).expect("n > 0")
}

pub(crate) fn centered(v: &[GaussianInt], c: &GaussianRational) -> Vec<GaussianRational> {
    v.iter().map(|z| &GaussianRational::from(z) - c).collect()
}

/// Decides whether `b` is the image of `a` under an affine map over `Q(i)`.
pub fn equivalent(a: &PteSolution, b: &PteSolution) -> Result<Option<Equivalence>> {
    if a.n() != b.n() {
        return Err(Error::InvalidArgument("solutions of different sizes".into()));
    }
    let n = a.n();
    let ca = constant(a)?;
    let cb = constant(b)?;
    // pre-filter: C_b = ±C_a M^n
    let ratio = GaussianRational::ratio(&cb, &ca)?;
    if !is_nth_power(&ratio, n as u32)? && !is_nth_power(&-&ratio, n as u32)? {
        return Ok(None);
    }

    let ga = centroid(a);
    let gb = centroid(b);
    // both sides share the centroid since p_1 agrees
    let (ax, ay) = (centered(&a.x, &ga), centered(&a.y, &ga));
    let (bx, by) = (centered(&b.x, &gb), centered(&b.y, &gb));
    let alpha_in_x = ax.iter().find(|z| !z.is_zero()).cloned();
    let (alpha, alpha_from_x) = match alpha_in_x {
        Some(v) => (v, true),
        None => match ay.iter().find(|z| !z.is_zero()) {
            Some(v) => (v.clone(), false),
            None => return Err(Error::InvalidArgument("degenerate solution".into())),
        },
    };
    let bx_keys = sorted_keys(bx.iter().cloned());
    let by_keys = sorted_keys(by.iter().cloned());
    for swapped in [false, true] {
        let (tx, ty, tx_keys, ty_keys) = if swapped {
            (&by, &bx, &by_keys, &bx_keys)
        } else {
            (&bx, &by, &bx_keys, &by_keys)
        };
        let targets = if alpha_from_x { tx } else { ty };
        let mut tried: Vec<RatKey> = Vec::new();
        for beta in targets.iter().filter(|z| !z.is_zero()) {
            let key = rat_key(beta);
            if tried.contains(&key) {
                continue;
            }
            tried.push(key);
            let m = beta.checked_div(&alpha)?;
            let ix = sorted_keys(ax.iter().map(|z| &m * z));
            if &ix != tx_keys {
                continue;
            }
            let iy = sorted_keys(ay.iter().map(|z| &m * z));
            if &iy != ty_keys {
                continue;
            }
            let shift = &gb - &(&m * &ga);
            return Ok(Some(Equivalence {
                map: AffineMap::new(m, shift)?,
                swapped,
            }));
        }
    }
    Ok(None)
}

/// Whether the residue multisets of `x` and `y` modulo `q` coincide.
pub fn pairing_mod_q(s: &PteSolution, q: &GaussianInt) -> Result<bool> {
    let residues = |v: &[GaussianInt]| -> Result<Vec<GaussianInt>> {
        let mut r = v.iter().map(|z| z.rem(q)).collect::<Result<Vec<_>>>()?;
        r.sort_by(GaussianInt::cmp_canonical);
        Ok(r)
    };
    Ok(residues(&s.x)? == residues(&s.y)?)
}

/// Unit relating two associates: `b = u*a`.
pub fn unit_between(a: &GaussianInt, b: &GaussianInt) -> Option<Unit> {
    Unit::ALL.into_iter().find(|u| &a.mul_unit(*u) == b)
}
