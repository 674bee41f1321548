//! Collapsing solutions that are images of each other under affine maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::format::emit_solution;
use crate::gint::GaussianInt;
use crate::pte::{centered, centroid, conjugate_solution, rat_key, PteSolution};

type Key = (Vec<(BigInt, BigInt, BigInt)>, Vec<(BigInt, BigInt, BigInt)>);

/// A representative of one affine class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedupEntry {
    pub solution: PteSolution,
    /// Index (in the returned list) of the class of the complex conjugate,
    /// when it is a different class.
    pub conjugate_of: Option<usize>,
    pub self_conjugate: bool,
    pub members: usize,
}

/// Key that agrees for two solutions exactly when one is an affine image of
/// the other, possibly with the sides swapped.
pub fn canonical_key(s: &PteSolution) -> Key {
    let g = centroid(s);
    let cx = centered(s.x(), &g);
    let cy = centered(s.y(), &g);
    let mut best: Option<Key> = None;
    for (a, b) in [(&cx, &cy), (&cy, &cx)] {
        for alpha in cx.iter().chain(cy.iter()).filter(|z| !z.is_zero()) {
            let side = |v: &[crate::gint::GaussianRational]| {
                let mut k: Vec<_> = v
                    .iter()
                    .map(|z| rat_key(&z.checked_div(alpha).expect("nonzero")))
                    .collect();
                k.sort();
                k
            };
            let key = (side(a), side(b));
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.unwrap_or_default()
}

/// Translates so the least element of `X` is zero.
fn anchored(s: &PteSolution) -> PteSolution {
    let shift = s.x()[0].clone();
    let tr = |v: &[GaussianInt]| v.iter().map(|z| z - &shift).collect::<Vec<_>>();
    PteSolution::new(tr(s.x()), tr(s.y()), s.claimed_degree()).expect("translation keeps validity")
}

fn better(a: &PteSolution, b: &PteSolution) -> bool {
    match a.cmp_canonical(b) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => emit_solution(a) < emit_solution(b),
    }
}

/// One representative per affine class, in canonical order.
pub fn dedup_canonical(list: &[PteSolution]) -> Vec<DedupEntry> {
    let mut groups: BTreeMap<Key, (PteSolution, usize)> = BTreeMap::new();
    for s in list {
        let cand = anchored(s);
        let cand = {
            let sw = anchored(&s.swapped());
            if better(&sw, &cand) {
                sw
            } else {
                cand
            }
        };
        groups
            .entry(canonical_key(s))
            .and_modify(|(rep, count)| {
                *count += 1;
                if better(&cand, rep) {
                    *rep = cand.clone();
                }
            })
            .or_insert((cand, 1));
    }
    let mut items: Vec<(Key, PteSolution, usize)> =
        groups.into_iter().map(|(k, (s, c))| (k, s, c)).collect();
    items.sort_by(|a, b| a.1.cmp_canonical(&b.1));
    let keys: Vec<&Key> = items.iter().map(|t| &t.0).collect();
    items
        .iter()
        .map(|(key, s, count)| {
            let ck = canonical_key(&conjugate_solution(s));
            let self_conjugate = &ck == key;
            let conjugate_of = if self_conjugate {
                None
            } else {
                keys.iter().position(|k| **k == ck)
            };
            DedupEntry {
                solution: s.clone(),
                conjugate_of,
                self_conjugate,
                members: *count,
            }
        })
        .collect()
}
