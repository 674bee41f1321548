#![allow(dead_code)]

pub mod props;

use std::collections::BTreeSet;

use pte_core::search::{canonical_key, dedup_canonical, run, Mode, RunOptions, SearchConfig};
use pte_core::{GaussianInt, PteSolution};

pub fn g(re: i64, im: i64) -> GaussianInt {
    GaussianInt::from_i64(re, im)
}

type C = (i64, i64);

fn mul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Power sums `1..=k` of a small list, in machine integers.
fn sums(v: &[C], k: usize) -> Vec<C> {
    let mut out = vec![(0, 0); k];
    for &z in v {
        let mut p = (1, 0);
        for s in out.iter_mut() {
            p = mul(p, z);
            s.0 += p.0;
            s.1 += p.1;
        }
    }
    out
}

fn box_values(s: i64) -> Vec<C> {
    let mut v = Vec::new();
    for re in -s..=s {
        for im in -s..=s {
            v.push((re, im));
        }
    }
    v
}

/// Calls `f` with every non-decreasing index tuple of length `len` over `0..m`.
fn multisets(m: usize, len: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(m: usize, len: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == len {
            f(cur);
            return;
        }
        for i in start..m {
            cur.push(i);
            go(m, len, i, cur, f);
            cur.pop();
        }
    }
    go(m, len, 0, &mut Vec::new(), f);
}

fn to_solution(x: &[C], y: &[C]) -> PteSolution {
    let conv = |v: &[C]| v.iter().map(|&(a, b)| g(a, b)).collect::<Vec<_>>();
    PteSolution::ideal(conv(x), conv(y)).expect("distinct sides")
}

/// Every ideal solution of size `n` with `0` in `X` and all values in the box,
/// by direct enumeration of the remaining `2n - 1` values.
pub fn brute_general(n: usize, s: i64) -> Vec<PteSolution> {
    let vals = box_values(s);
    let m = vals.len();
    let mut xsets: Vec<(Vec<C>, Vec<C>)> = Vec::new();
    multisets(m, n - 1, &mut |ix| {
        let mut x = vec![(0, 0)];
        x.extend(ix.iter().map(|&i| vals[i]));
        let ps = sums(&x, n - 1);
        xsets.push((x, ps));
    });
    let mut out = Vec::new();
    multisets(m, n, &mut |iy| {
        let y: Vec<C> = iy.iter().map(|&i| vals[i]).collect();
        let ps = sums(&y, n - 1);
        for (x, px) in &xsets {
            if *px == ps {
                let mut xs = x.clone();
                xs.sort();
                let mut ys = y.clone();
                ys.sort();
                if xs != ys {
                    out.push(to_solution(x, &y));
                }
            }
        }
    });
    out
}

/// Every odd symmetric ideal solution `Y = -X` of size `n` inside the box.
pub fn brute_sym_odd(n: usize, s: i64) -> Vec<PteSolution> {
    let vals = box_values(s);
    let mut out = Vec::new();
    multisets(vals.len(), n, &mut |ix| {
        let x: Vec<C> = ix.iter().map(|&i| vals[i]).collect();
        let y: Vec<C> = x.iter().map(|&(a, b)| (-a, -b)).collect();
        let mut ys = y.clone();
        ys.sort();
        if x == ys {
            return;
        }
        if sums(&x, n - 1) == sums(&y, n - 1) {
            out.push(to_solution(&x, &y));
        }
    });
    out
}

pub fn in_box(s: &PteSolution, b: i64) -> bool {
    s.x().iter().chain(s.y()).all(|z| match z.to_i64_pair() {
        Some((re, im)) => re.abs() <= b && im.abs() <= b,
        None => false,
    })
}

pub fn key_set(list: &[PteSolution]) -> BTreeSet<String> {
    dedup_canonical(list)
        .into_iter()
        .map(|d| format!("{:?}", canonical_key(&d.solution)))
        .collect()
}

/// Engine solutions lying entirely in the box, over a single worker.
pub fn engine(n: usize, mode: Mode, s: i64) -> Vec<PteSolution> {
    let cfg = SearchConfig::new(n, mode, s);
    let report = run(&cfg, &RunOptions { workers: Some(1), stop_after: None }).expect("search runs");
    report.raw.into_iter().filter(|x| in_box(x, s)).collect()
}
