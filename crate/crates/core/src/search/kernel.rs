//! Fixed-width screening of candidate prefixes.
//!
//! Every rejection here is exact; a screen returns `None` on overflow so the
//! caller falls back to arbitrary precision.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub(crate) struct G {
    pub re: i128,
    pub im: i128,
}

impl G {
    pub const ZERO: G = G { re: 0, im: 0 };
    pub const ONE: G = G { re: 1, im: 0 };

    pub fn new(re: i128, im: i128) -> G {
        G { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn add(self, o: G) -> Option<G> {
        Some(G::new(self.re.checked_add(o.re)?, self.im.checked_add(o.im)?))
    }

    pub fn sub(self, o: G) -> Option<G> {
        Some(G::new(self.re.checked_sub(o.re)?, self.im.checked_sub(o.im)?))
    }

    pub fn mul(self, o: G) -> Option<G> {
        let re = self.re.checked_mul(o.re)?.checked_sub(self.im.checked_mul(o.im)?)?;
        let im = self.re.checked_mul(o.im)?.checked_add(self.im.checked_mul(o.re)?)?;
        Some(G::new(re, im))
    }

    pub fn conj(self) -> G {
        G::new(self.re, -self.im)
    }

    pub fn norm(self) -> Option<i128> {
        self.re.checked_mul(self.re)?.checked_add(self.im.checked_mul(self.im)?)
    }

    /// `Some(Some(q))` when `d | self`, `Some(None)` when not, `None` on overflow.
    pub fn div_exact(self, d: G) -> Option<Option<G>> {
        if d.is_zero() {
            return Some(None);
        }
        let n = d.norm()?;
        let t = self.mul(d.conj())?;
        if t.re % n != 0 || t.im % n != 0 {
            return Some(None);
        }
        Some(Some(G::new(t.re / n, t.im / n)))
    }

    pub fn divides(self, v: G) -> Option<bool> {
        Some(v.div_exact(self)?.is_some())
    }

    /// Euclidean remainder with nearest rounding.
    fn rem(self, d: G) -> Option<G> {
        let n = d.norm()?;
        let t = self.mul(d.conj())?;
        let round = |a: i128| -> Option<i128> {
            let num = a.checked_mul(2)?.checked_add(n - 1)?;
            Some(num.div_euclid(n.checked_mul(2)?))
        };
        let q = G::new(round(t.re)?, round(t.im)?);
        self.sub(q.mul(d)?)
    }

    pub fn gcd(self, o: G) -> Option<G> {
        let (mut a, mut b) = (self, o);
        while !b.is_zero() {
            let r = a.rem(b)?;
            a = b;
            b = r;
        }
        Some(a)
    }

    pub fn lcm(self, o: G) -> Option<G> {
        if self.is_zero() || o.is_zero() {
            return Some(G::ZERO);
        }
        let g = self.gcd(o)?;
        let q = o.div_exact(g)?.expect("gcd divides");
        self.mul(q)
    }
}

/// Integral part of the general completion: `(C, g)` where `g = C*f` is monic
/// with the non-enumerated `x`'s as roots (coefficients lowest first, leading 1
/// omitted), or `Some(None)` when the prefix cannot complete.
pub(crate) fn general_parts(xs: &[G], ys: &[G]) -> Option<Option<(G, Vec<G>)>> {
    let k = ys.len();
    let mut r = [G::ZERO; 16];
    if k > r.len() {
        return None;
    }
    for j in 0..k {
        let mut acc = G::ONE;
        for x in xs {
            acc = acc.mul(ys[j].sub(*x)?)?;
        }
        for l in 0..k {
            if l != j {
                acc = acc.mul(ys[j].sub(ys[l])?)?;
            }
        }
        if acc.is_zero() {
            return Some(None);
        }
        r[j] = acc;
    }
    let mut lcm = r[0];
    for rj in &r[1..k] {
        lcm = lcm.lcm(*rj)?;
    }
    let mut c = [G::ZERO; 16];
    let mut lambda = G::ZERO;
    for j in 0..k {
        c[j] = lcm.div_exact(r[j])?.expect("lcm is a multiple");
        lambda = lambda.add(c[j])?;
    }
    let Some(constant) = lcm.div_exact(lambda)? else {
        return Some(None);
    };
    if lambda.is_zero() {
        return Some(None);
    }
    // coefficients of F(z) = sum_j c_j prod_{l != j} (z - y_l)
    let mut f = [G::ZERO; 16];
    for j in 0..k {
        let mut p = [G::ZERO; 16];
        p[0] = c[j];
        let mut deg = 0;
        for l in 0..k {
            if l == j {
                continue;
            }
            // p *= (z - y_l)
            deg += 1;
            for t in (0..=deg).rev() {
                let shifted = if t > 0 { p[t - 1] } else { G::ZERO };
                p[t] = shifted.sub(p[t].mul(ys[l])?)?;
            }
        }
        for t in 0..k {
            f[t] = f[t].add(p[t])?;
        }
    }
    let mut g = Vec::with_capacity(k - 1);
    for coeff in &f[..k - 1] {
        match coeff.div_exact(lambda)? {
            Some(q) => g.push(q),
            None => return Some(None),
        }
    }
    Some(Some((constant, g)))
}

/// Screen for the general completion: passes exactly when the interpolant's
/// leading coefficient is `1/C` for a nonzero Gaussian integer `C` and `C*f`
/// is integral.
pub(crate) fn screen_general(xs: &[G], ys: &[G]) -> Option<bool> {
    Some(general_parts(xs, ys)?.is_some())
}

/// The general screen on squared values, plus a square test on whichever of
/// the missing values is determined linearly: the last `x` when `g` is linear,
/// the last `y` when one is missing (power sums of degree 1 agree).
pub(crate) fn screen_sym_even(ws_x: &[G], ws_y: &[G], inner: usize) -> Option<bool> {
    let Some((_, g)) = general_parts(ws_x, ws_y)? else {
        return Some(false);
    };
    let mut sum_x = G::ZERO;
    for x in ws_x {
        sum_x = sum_x.add(*x)?;
    }
    let mut missing_x_known = g.is_empty();
    if g.len() == 1 {
        let x = G::ZERO.sub(g[0])?;
        if !x.is_square()? {
            return Some(false);
        }
        sum_x = sum_x.add(x)?;
        missing_x_known = true;
    }
    if missing_x_known && inner == ws_x.len() + g.len() && inner == ws_y.len() + 1 {
        let mut y = sum_x;
        for v in ws_y {
            y = y.sub(*v)?;
        }
        if !y.is_square()? {
            return Some(false);
        }
    }
    Some(true)
}

/// Fraction-free determinant, or `None` on overflow.
pub(crate) fn det(mut m: Vec<Vec<G>>) -> Option<G> {
    let n = m.len();
    let mut sign = false;
    let mut prev = G::ONE;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Some(G::ZERO),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(m[k][k])?.sub(m[i][k].mul(m[k][j])?)?;
                m[i][j] = v.div_exact(prev)?.expect("Bareiss division is exact");
            }
        }
        prev = m[k][k];
    }
    let d = m[n - 1][n - 1];
    Some(if sign { G::new(-d.re, -d.im) } else { d })
}

/// Rows `[x, x^3, ..., x^(2m-1), 1]` and right-hand sides `-x^(2m+1)`.
pub(crate) fn odd_system(xs: &[G]) -> Option<(Vec<Vec<G>>, Vec<G>)> {
    let m = xs.len() - 1;
    let mut rows = Vec::with_capacity(m + 1);
    let mut rhs = Vec::with_capacity(m + 1);
    for &x in xs {
        let sq = x.mul(x)?;
        let mut row = Vec::with_capacity(m + 1);
        let mut p = x;
        for _ in 0..m {
            row.push(p);
            p = p.mul(sq)?;
        }
        row.push(G::ONE);
        rows.push(row);
        rhs.push(G::ZERO.sub(p)?);
    }
    Some((rows, rhs))
}

fn isqrt(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    let mut r = (v as f64).sqrt() as i128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    (r * r == v).then_some(r)
}

impl G {
    /// Whether `self` is a square in `Z[i]`, or `None` on overflow.
    pub fn is_square(self) -> Option<bool> {
        let n = self.norm()?;
        let Some(s) = isqrt(n) else { return Some(false) };
        let (Some(a), Some(b)) = (isqrt((s + self.re) / 2), isqrt((s - self.re) / 2)) else {
            return Some(false);
        };
        let cand = [G::new(a, b), G::new(a, -b)];
        for c in cand {
            if c.mul(c)? == self {
                return Some(true);
            }
        }
        Some(false)
    }
}

/// Screen for the odd symmetric completion: passes when the system is
/// nonsingular, every unknown is integral, `K != 0` and, when two roots are
/// left after removing the enumerated ones, their discriminant is a square.
pub(crate) fn screen_sym_odd(xs: &[G]) -> Option<bool> {
    let (rows, rhs) = odd_system(xs)?;
    let d = det(rows.clone())?;
    if d.is_zero() {
        return Some(false);
    }
    let n = rows.len();
    let mut sol = vec![G::ZERO; n];
    for col in (0..n).rev() {
        let mut mc = rows.clone();
        for (row, v) in mc.iter_mut().zip(&rhs) {
            row[col] = *v;
        }
        let dc = det(mc)?;
        if col == n - 1 && dc.is_zero() {
            return Some(false);
        }
        match dc.div_exact(d)? {
            Some(q) => sol[col] = q,
            None => return Some(false),
        }
    }
    let m = n - 1;
    let deg = 2 * m + 1;
    // coefficients of z^deg + sum a_j z^(2j+1) + K, lowest first
    let mut p = vec![G::ZERO; deg + 1];
    p[deg] = G::ONE;
    p[0] = sol[m];
    for j in 0..m {
        p[2 * j + 1] = sol[j];
    }
    for &x in xs {
        let mut q = vec![G::ZERO; p.len() - 1];
        let mut acc = G::ZERO;
        for i in (1..p.len()).rev() {
            acc = acc.mul(x)?.add(p[i])?;
            q[i - 1] = acc;
        }
        if !acc.mul(x)?.add(p[0])?.is_zero() {
            return Some(false);
        }
        p = q;
    }
    if p.len() == 3 {
        let disc = p[1].mul(p[1])?.sub(p[0].mul(G::new(4, 0))?)?;
        return disc.is_square();
    }
    Some(true)
}
