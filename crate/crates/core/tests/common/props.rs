//! Randomized invariants, shared by the property tests and the acceptance run.

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use pte_core::corpus::{bundled_corpus, CorpusEntry};
use pte_core::gint::{factor, gcd, is_gaussian_prime, sqrt_exact};
use pte_core::pte::{
    affine_apply, conjugate_solution, constant, difference_degree, equivalent, falling_factorials_agree,
    pairing_mod_q, power_sum_degree,
};
use pte_core::symfunc::{elem_from_power, power_from_elem, power_sums};
use pte_core::{AffineMap, GaussianInt, GaussianRational, PteSolution};

use super::g;

pub const CASES: u32 = 1000;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn check<S: Strategy>(cases: u32, strat: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strat, test).map_err(|e| e.to_string())
}

fn gint(r: i64) -> impl Strategy<Value = GaussianInt> {
    (-r..=r, -r..=r).prop_map(|(a, b)| g(a, b))
}

fn nonzero(r: i64) -> impl Strategy<Value = GaussianInt> {
    gint(r).prop_filter("nonzero", |z| !z.is_zero())
}

/// Pairs of multisets of equal size with a known lower bound on the degree:
/// starting from `{a}`, `{b}`, each step `X, Y -> X + (Y+d), Y + (X+d)` raises
/// the degree by one. A random affine map and a random reshuffle follow.
fn doubled_pair() -> impl Strategy<Value = (Vec<GaussianInt>, Vec<GaussianInt>, usize)> {
    (gint(6), gint(6), prop::collection::vec(nonzero(5), 0..=3), nonzero(3), gint(4), any::<bool>())
        .prop_filter("distinct seeds", |t| t.0 != t.1)
        .prop_map(|(a, b, shifts, m, k, swap)| {
            let mut x = vec![a];
            let mut y = vec![b];
            for d in &shifts {
                let nx: Vec<_> = x.iter().cloned().chain(y.iter().map(|v| v + d)).collect();
                let ny: Vec<_> = y.iter().cloned().chain(x.iter().map(|v| v + d)).collect();
                x = nx;
                y = ny;
            }
            let f = |v: &GaussianInt| &(&m * v) + &k;
            let x: Vec<_> = x.iter().map(f).collect();
            let y: Vec<_> = y.iter().map(f).collect();
            let depth = shifts.len();
            if swap {
                (y, x, depth)
            } else {
                (x, y, depth)
            }
        })
}

fn random_pair() -> impl Strategy<Value = (Vec<GaussianInt>, Vec<GaussianInt>, usize)> {
    (2usize..=6)
        .prop_flat_map(|n| (prop::collection::vec(gint(4), n), prop::collection::vec(gint(4), n)))
        .prop_map(|(x, y)| (x, y, 0))
}

/// Power sums agree to `k` iff the product difference has degree below `n - k`
/// iff the falling factorial sums agree to `k`.
pub fn formulation_equivalence(cases: u32) -> Result<(), String> {
    let strat = prop_oneof![doubled_pair(), random_pair()];
    check(cases, strat, |(x, y, depth)| {
        let n = x.len();
        let ps = power_sum_degree(&x, &y);
        prop_assert!(ps >= depth);
        let dd = difference_degree(&x, &y);
        for k in 1..n {
            let by_sums = ps >= k;
            let by_diff = dd.map_or(true, |d| d + k < n);
            let by_ff = falling_factorials_agree(&x, &y, k);
            prop_assert_eq!(by_sums, by_diff, "k={}", k);
            prop_assert_eq!(by_sums, by_ff, "k={}", k);
        }
        Ok(())
    })
}

pub fn ideal_corpus() -> Vec<CorpusEntry> {
    bundled_corpus()
        .expect("bundled corpus verifies")
        .into_iter()
        .filter(|e| e.solution.is_ideal())
        .collect()
}

/// Images under `z -> M z + K` stay ideal with constant `C M^n`, and the
/// equivalence test recovers a map.
pub fn affine_closure(cases: u32) -> Result<(), String> {
    let corpus: Vec<PteSolution> = ideal_corpus()
        .into_iter()
        .map(|e| e.solution)
        .filter(|s| s.n() <= 8)
        .collect();
    let strat = (0..corpus.len(), nonzero(6), gint(20), any::<bool>());
    check(cases, strat, |(i, m, k, swap)| {
        let s = if swap { corpus[i].swapped() } else { corpus[i].clone() };
        let map = AffineMap::from_ints(&m, &k).unwrap();
        let t = affine_apply(&s, &map).unwrap();
        prop_assert!(t.is_ideal());
        let c = constant(&s).unwrap();
        let ct = constant(&t).unwrap();
        prop_assert_eq!(ct, &c * &m.pow(s.n() as u32));
        let eq = equivalent(&s, &t).unwrap();
        prop_assert!(eq.is_some());
        let eq = eq.unwrap();
        let image = affine_apply(&s, &eq.map).unwrap();
        let image = if eq.swapped { image.swapped() } else { image };
        prop_assert_eq!(image, t);
        Ok(())
    })
}

/// Conjugates of ideal solutions are ideal with the conjugate constant.
pub fn conjugation_closure(cases: u32) -> Result<(), String> {
    let corpus: Vec<PteSolution> = ideal_corpus().into_iter().map(|e| e.solution).collect();
    let strat = (0..corpus.len(), nonzero(4), gint(10));
    check(cases, strat, |(i, m, k)| {
        let s = affine_apply(&corpus[i], &AffineMap::from_ints(&m, &k).unwrap()).unwrap();
        let c = conjugate_solution(&s);
        prop_assert!(c.is_ideal());
        prop_assert_eq!(constant(&c).unwrap(), constant(&s).unwrap().conj());
        prop_assert_eq!(conjugate_solution(&c), s);
        Ok(())
    })
}

fn rat(z: &GaussianInt) -> GaussianRational {
    GaussianRational::from_int(z.clone())
}

/// Elementary symmetric values computed by expanding the product.
fn elementary(v: &[GaussianInt]) -> Vec<GaussianInt> {
    let mut e = vec![GaussianInt::one()];
    for z in v {
        let mut next = e.clone();
        next.push(GaussianInt::zero());
        for j in 1..next.len() {
            next[j] = &e.get(j).cloned().unwrap_or_default() + &(z * &e[j - 1]);
        }
        e = next;
    }
    e.remove(0);
    e
}

/// Power sums and elementary symmetric values convert into each other exactly.
pub fn newton_round_trip(cases: u32) -> Result<(), String> {
    let strat = (1usize..=7).prop_flat_map(|n| prop::collection::vec(gint(9), n));
    check(cases, strat, |v| {
        let n = v.len();
        let kmax = n + 3;
        let p: Vec<GaussianRational> = power_sums(&v, kmax).iter().map(rat).collect();
        let e: Vec<GaussianRational> = elementary(&v).iter().map(rat).collect();
        prop_assert_eq!(elem_from_power(&p, n).unwrap(), e.clone());
        prop_assert_eq!(power_from_elem(&e, kmax), p);
        Ok(())
    })
}

/// Division with remainder, gcd, factorization and exact square roots.
pub fn arithmetic_invariants(cases: u32) -> Result<(), String> {
    let strat = (gint(10_000), nonzero(10_000), nonzero(300));
    check(cases, strat, |(a, b, c)| {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.norm() * 2 <= b.norm());

        let d = gcd(&a, &b).unwrap();
        prop_assert!(d.is_canonical());
        prop_assert!(d.divides(&a) && d.divides(&b));
        let (a1, b1) = (a.div_exact(&d).unwrap(), b.div_exact(&d).unwrap());
        prop_assert!(gcd(&a1, &b1).unwrap().is_one());
        let scaled = gcd(&(&a * &c), &(&b * &c)).unwrap();
        prop_assert_eq!(scaled, (&d * &c).normalized());

        let f = factor(&b).unwrap();
        prop_assert_eq!(f.expand(), b.clone());
        for (p, e) in f.factors() {
            prop_assert!(is_gaussian_prime(p) && p.is_canonical() && *e > 0);
        }

        let sq = &c * &c;
        let root = sqrt_exact(&sq).unwrap();
        prop_assert!(root == c || root == -&c);
        // c^2 times a non-square unit is never a square
        prop_assert_eq!(sqrt_exact(&(&sq * &GaussianInt::i())), None);
        let off = &sq + &GaussianInt::one();
        if let Some(w) = sqrt_exact(&off) {
            prop_assert_eq!(&w * &w, off);
        }
        Ok(())
    })
}

/// Canonical primes above `p`.
fn primes_above(p: i64) -> Vec<GaussianInt> {
    factor(&g(p, 0))
        .unwrap()
        .factors()
        .iter()
        .map(|(q, _)| q.clone())
        .collect()
}

/// `t (t+1) ... (t + s p - 1)` is divisible by `pi^s` for each prime `pi`
/// above a ramified or split `p`.
pub fn consecutive_products(cases: u32) -> Result<(), String> {
    let strat = (prop::sample::select(vec![2i64, 5, 13]), 1u32..=3, gint(50));
    check(cases, strat, |(p, s, t)| {
        let len = s as i64 * p;
        let mut prod = GaussianInt::one();
        for j in 0..len {
            prod = &prod * &(&t + &g(j, 0));
        }
        for pi in primes_above(p) {
            prop_assert!(prod.is_zero() || prod.valuation(&pi) >= s, "pi={} t={}", pi, t);
        }
        Ok(())
    })
}

/// The inert prime 3 does not divide `i (i+1) (i+2)`.
pub fn inert_counterexample() -> bool {
    let t = GaussianInt::i();
    let prod = (0..3).fold(GaussianInt::one(), |acc, j| &acc * &(&t + &g(j, 0)));
    primes_above(3) == vec![g(3, 0)] && !g(3, 0).divides(&prod)
}

/// For every ideal corpus solution and every prime dividing its constant,
/// the residues of the two sides agree as multisets.
pub fn corpus_pairing() -> Result<usize, String> {
    let mut checked = 0;
    for e in ideal_corpus() {
        let c = constant(&e.solution).map_err(|x| x.to_string())?;
        for (q, _) in factor(&c).map_err(|x| x.to_string())?.factors() {
            if !pairing_mod_q(&e.solution, q).map_err(|x| x.to_string())? {
                return Err(format!("{}: pairing fails modulo {q}", e.id));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
