//! Enumeration of prefixes: domains, normalization, the congruence sieve and chunking.

use std::ops::Range;

use crate::gint::GaussianInt;

use super::kernel::G;
use super::{Mode, Resolved};

/// A contiguous range of grid indices for the first enumerated value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chunk {
    pub id: usize,
    pub range: Range<usize>,
}

/// Enumerated values, in the plane (`x` includes the fixed `x_1 = 0` in general mode).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prefix {
    pub x: Vec<GaussianInt>,
    pub y: Vec<GaussianInt>,
}

/// Splits the `(2S+1)^2` grid of first values into `chunk_count` contiguous ranges.
pub fn plan_chunks(r: &Resolved) -> Vec<Chunk> {
    let side = (2 * r.box_size + 1) as usize;
    let total = side * side;
    let c = r.chunk_count;
    (0..c)
        .map(|id| Chunk {
            id,
            range: (total * id / c)..(total * (id + 1) / c),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    X,
    Y,
}

#[derive(Clone, Debug)]
pub(crate) struct DomainValue {
    pub grid: usize,
    pub z: (i64, i64),
    /// Value seen by the completion: `z`, or `z^2` in sym-even mode.
    pub space: G,
    /// Position in the canonical `(norm, re, im)` order of the plane values.
    pub rank: u32,
    pub canonical: bool,
    pub res1: G,
    pub res2: G,
}

pub(crate) struct Enumerator {
    pub domain: Vec<DomainValue>,
    /// Enumerated slots in order, with their index inside their side.
    pub slots: Vec<(Kind, usize)>,
    pub fixed_zero_x: bool,
    /// Require the first enumerated value to be a nonzero canonical associate.
    pub anchor: bool,
    pub sort: bool,
    pub sieve: Option<(G, G)>,
    pub x_slots: usize,
}

fn to_g(z: &GaussianInt) -> G {
    let (re, im) = z.to_i64_pair().expect("small sieve prime");
    G::new(re.into(), im.into())
}

fn residue(v: G, q: G) -> G {
    let z = GaussianInt::new(v.re, v.im);
    to_g(&z.rem(&GaussianInt::new(q.re, q.im)).expect("nonzero modulus"))
}

impl Enumerator {
    pub fn new(r: &Resolved) -> Enumerator {
        let s = r.box_size;
        let side = 2 * s + 1;
        let sieve = r.sieve.as_ref().map(|(a, b)| (to_g(a), to_g(b)));
        let mut domain = Vec::new();
        for grid in 0..(side * side) as usize {
            let re = grid as i64 / side - s;
            let im = grid as i64 % side - s;
            let keep = match r.mode {
                Mode::General => true,
                Mode::SymEven => re > 0 || (re == 0 && im >= 0),
                Mode::SymOdd => re != 0 || im != 0,
            };
            if !keep {
                continue;
            }
            let z = G::new(re.into(), im.into());
            let space = if r.mode == Mode::SymEven { z.mul(z).expect("small") } else { z };
            let (res1, res2) = match sieve {
                Some((q1, q2)) => (residue(space, q1), residue(space, q2)),
                None => (G::ZERO, G::ZERO),
            };
            domain.push(DomainValue {
                grid,
                z: (re, im),
                space,
                rank: 0,
                canonical: re > 0 && -re < im && im <= re,
                res1,
                res2,
            });
        }
        let mut order: Vec<usize> = (0..domain.len()).collect();
        let key = |d: &DomainValue| (d.z.0 * d.z.0 + d.z.1 * d.z.1, d.z.0, d.z.1);
        order.sort_by_key(|&i| key(&domain[i]));
        for (rank, &i) in order.iter().enumerate() {
            domain[i].rank = rank as u32;
        }

        let mut layout = Vec::new();
        let (mut xi, mut yi) = (0, 0);
        while xi < r.x_slots || yi < r.y_slots {
            if xi < r.x_slots {
                layout.push((Kind::X, xi));
                xi += 1;
            }
            if yi < r.y_slots {
                layout.push((Kind::Y, yi));
                yi += 1;
            }
        }
        let fixed_zero_x = r.mode == Mode::General;
        if fixed_zero_x {
            layout.remove(0);
        }
        Enumerator {
            domain,
            slots: layout,
            fixed_zero_x,
            anchor: true,
            sort: sieve.is_none(),
            sieve,
            x_slots: r.x_slots,
        }
    }

    /// Visits every admissible assignment whose first value lies in `range`;
    /// the callback receives domain indices, one per enumerated slot.
    pub fn for_each(&self, range: Range<usize>, visit: &mut dyn FnMut(&[usize])) {
        if self.slots.is_empty() {
            return;
        }
        let mut assign = vec![0usize; self.slots.len()];
        for (i, d) in self.domain.iter().enumerate() {
            if range.contains(&d.grid) && self.admissible(0, i, &assign) {
                assign[0] = i;
                self.descend(1, &mut assign, visit);
            }
        }
    }

    fn descend(&self, depth: usize, assign: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if depth == self.slots.len() {
            visit(assign);
            return;
        }
        for i in 0..self.domain.len() {
            if self.admissible(depth, i, assign) {
                assign[depth] = i;
                self.descend(depth + 1, assign, visit);
            }
        }
    }

    /// Domain index of side `kind`, position `idx`, if already assigned before `depth`.
    fn lookup(&self, kind: Kind, idx: usize, depth: usize, assign: &[usize]) -> Option<Option<usize>> {
        if kind == Kind::X && idx == 0 && self.fixed_zero_x {
            return Some(None);
        }
        self.slots[..depth]
            .iter()
            .position(|&(k, i)| k == kind && i == idx)
            .map(|p| Some(assign[p]))
    }

    fn space_of(&self, slot: Option<usize>) -> G {
        slot.map_or(G::ZERO, |i| self.domain[i].space)
    }

    fn admissible(&self, depth: usize, cand: usize, assign: &[usize]) -> bool {
        let (kind, idx) = self.slots[depth];
        let v = &self.domain[cand];
        if depth == 0 && self.anchor && !v.canonical {
            return false;
        }
        if self.fixed_zero_x && kind == Kind::Y && v.space.is_zero() {
            return false;
        }
        for p in 0..depth {
            let other = self.slots[p].0;
            if (kind == Kind::Y || other == Kind::Y) && self.domain[assign[p]].space == v.space {
                return false;
            }
        }
        if self.sort && idx > 0 {
            let prev_is_pinned = idx == 1
                && ((self.anchor && self.slots[0] == (kind, 0)) || (kind == Kind::X && self.fixed_zero_x));
            if !prev_is_pinned {
                if let Some(Some(p)) = self.lookup(kind, idx - 1, depth, assign) {
                    let pr = self.domain[p].rank;
                    let ok = match kind {
                        Kind::X => v.rank >= pr,
                        Kind::Y => v.rank > pr,
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
        if let Some((q1, q2)) = self.sieve {
            match kind {
                Kind::Y => {
                    if idx < self.x_slots {
                        if let Some(px) = self.lookup(Kind::X, idx, depth, assign) {
                            let r = px.map_or_else(|| residue(G::ZERO, q1), |i| self.domain[i].res1);
                            if r != v.res1 {
                                return false;
                            }
                        }
                    }
                }
                Kind::X => {
                    if idx > 0 {
                        if let Some(py) = self.lookup(Kind::Y, idx - 1, depth, assign) {
                            let ry = py.map_or(G::ZERO, |i| self.domain[i].res2);
                            if ry != v.res2 && !self.balanced(idx, depth, assign, q2) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Whether `sum_{j<idx} (x_j - y_j)` vanishes modulo `q`.
    fn balanced(&self, idx: usize, depth: usize, assign: &[usize], q: G) -> bool {
        let mut sum = G::ZERO;
        for j in 0..idx {
            let (Some(x), Some(y)) = (self.lookup(Kind::X, j, depth, assign), self.lookup(Kind::Y, j, depth, assign)) else {
                return false;
            };
            sum = sum
                .add(self.space_of(x))
                .and_then(|s| s.sub(self.space_of(y)))
                .expect("small values");
        }
        q.divides(sum).unwrap_or(false)
    }

    /// Splits a leaf into `(x, y)` space values, including the fixed zero.
    pub fn leaf_values(&self, assign: &[usize], xs: &mut Vec<G>, ys: &mut Vec<G>) {
        xs.clear();
        ys.clear();
        if self.fixed_zero_x {
            xs.push(G::ZERO);
        }
        let mut xo: Vec<(usize, G)> = Vec::new();
        let mut yo: Vec<(usize, G)> = Vec::new();
        for (p, &(kind, idx)) in self.slots.iter().enumerate() {
            let v = self.domain[assign[p]].space;
            match kind {
                Kind::X => xo.push((idx, v)),
                Kind::Y => yo.push((idx, v)),
            }
        }
        xo.sort_by_key(|t| t.0);
        yo.sort_by_key(|t| t.0);
        xs.extend(xo.into_iter().map(|t| t.1));
        ys.extend(yo.into_iter().map(|t| t.1));
    }

    /// Plane values of a leaf, ordered by side index.
    pub fn leaf_prefix(&self, assign: &[usize]) -> Prefix {
        let mut x = Vec::new();
        let mut y = Vec::new();
        if self.fixed_zero_x {
            x.push(GaussianInt::from_i64(0, 0));
        }
        let mut xo = Vec::new();
        let mut yo = Vec::new();
        for (p, &(kind, idx)) in self.slots.iter().enumerate() {
            let (re, im) = self.domain[assign[p]].z;
            let z = GaussianInt::from_i64(re, im);
            match kind {
                Kind::X => xo.push((idx, z)),
                Kind::Y => yo.push((idx, z)),
            }
        }
        xo.sort_by_key(|t| t.0);
        yo.sort_by_key(|t| t.0);
        x.extend(xo.into_iter().map(|t| t.1));
        y.extend(yo.into_iter().map(|t| t.1));
        Prefix { x, y }
    }
}

/// Streams every prefix of one chunk, after normalization and sieving.
pub fn sieve_stream(r: &Resolved, chunk: &Chunk, visit: &mut dyn FnMut(Prefix)) {
    let e = Enumerator::new(r);
    e.for_each(chunk.range.clone(), &mut |a| visit(e.leaf_prefix(a)));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{SearchConfig, SieveSpec};

    #[test]
    fn chunks_partition_the_grid() {
        let mut c = SearchConfig::new(10, Mode::SymEven, 30);
        c.chunk_count = 16;
        let chunks = plan_chunks(&c.resolve().unwrap());
        assert_eq!(chunks.len(), 16);
        assert_eq!(chunks[0].range.start, 0);
        assert_eq!(chunks[15].range.end, 61 * 61);
        for w in chunks.windows(2) {
            assert_eq!(w[0].range.end, w[1].range.start);
        }
        let mut c = SearchConfig::new(3, Mode::General, 1);
        c.chunk_count = 20;
        let chunks = plan_chunks(&c.resolve().unwrap());
        assert!(chunks.iter().any(|ch| ch.range.is_empty()));
        assert_eq!(chunks.iter().map(|ch| ch.range.len()).sum::<usize>(), 9);
    }

    #[test]
    fn single_unnormalized_slot_streams_box() {
        let r = SearchConfig::new(3, Mode::General, 1).resolve().unwrap();
        let mut e = Enumerator::new(&r);
        e.slots = vec![(Kind::Y, 0)];
        e.anchor = false;
        e.fixed_zero_x = false;
        let mut seen = Vec::new();
        e.for_each(0..9, &mut |a| seen.push(e.domain[a[0]].z));
        assert_eq!(seen.len(), 9);
        seen.dedup();
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn anchor_is_canonical_and_sorted() {
        let r = SearchConfig::new(5, Mode::SymOdd, 2).resolve().unwrap();
        let e = Enumerator::new(&r);
        let mut n = 0;
        e.for_each(0..25, &mut |a| {
            let d = &e.domain;
            assert!(d[a[0]].canonical);
            assert!(d[a[1]].rank <= d[a[2]].rank);
            n += 1;
        });
        assert!(n > 0);
    }

    #[test]
    fn sieve_prunes_by_norm() {
        let mut c = SearchConfig::new(6, Mode::SymEven, 6);
        let full = count(&c);
        c.sieve = SieveSpec::Primes(GaussianInt::from_i64(2, 1), GaussianInt::from_i64(2, -1));
        let sieved = count(&c);
        assert!(sieved * 5 < full, "{sieved} vs {full}");
    }

    fn count(c: &SearchConfig) -> usize {
        let r = c.resolve().unwrap();
        let mut n = 0;
        for ch in plan_chunks(&r) {
            sieve_stream(&r, &ch, &mut |_| n += 1);
        }
        n
    }
}
