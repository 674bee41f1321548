//! Rational integer factorization and square roots of -1 modulo primes.
//!
//! Sizes in this crate stay well under 2^128, so trial division plus
//! Miller-Rabin and Brent's variant of Pollard rho are enough.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Cofactors below this bound squared are finished by trial division.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

const SMALL_PRIMES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

/// Miller-Rabin with the first 20 prime bases; deterministic below 3.3e24.
pub fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `n > 0`, sorted by prime.
pub fn factor_integer(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut primes: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();

    let mut p = 2u64;
    while p < 1000 {
        let bp = BigUint::from(p);
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            primes.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }

    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64().filter(|&v| v < TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT) {
            primes.extend(trial_divide(small).into_iter().map(BigUint::from));
            continue;
        }
        if is_prime(&m) {
            primes.push(m);
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(&m / &d);
        stack.push(d);
    }

    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn trial_divide(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A nontrivial factor of the odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..(r - k).min(128) {
                    y = f(&y);
                    q = q * abs_diff(&x, &y) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a > b {
        a - b
    } else {
        b - a
    }
}

/// A square root of -1 modulo a prime `p` with `p % 4 == 1`.
pub fn sqrt_neg_one_mod(p: &BigUint) -> BigUint {
    debug_assert!((p % 4u32) == BigUint::one());
    let e = (p - 1u32) >> 2;
    let p_minus_1 = p - 1u32;
    // a^((p-1)/4) squares to -1 exactly when a is a non-residue
    let mut a = BigUint::from(2u32);
    loop {
        let c = a.modpow(&e, p);
        if (&c * &c) % p == p_minus_1 {
            return c;
        }
        a += 1u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: u128) -> Vec<(u128, u32)> {
        factor_integer(&BigUint::from(n))
            .into_iter()
            .map(|(p, e)| (p.to_u128().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(fac(1), vec![]);
        assert_eq!(fac(2), vec![(2, 1)]);
        assert_eq!(fac(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(fac(999_983), vec![(999_983, 1)]);
    }

    #[test]
    fn large_semiprime() {
        // two ~40-bit primes
        let p: u128 = 1_099_511_627_791;
        let q: u128 = 1_099_511_628_401;
        assert!(is_prime(&BigUint::from(p)) && is_prime(&BigUint::from(q)));
        assert_eq!(fac(p * q), vec![(p, 1), (q, 1)]);
        assert_eq!(fac(p * p * 12), vec![(2, 2), (3, 1), (p, 2)]);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..200).filter(|&n| is_prime_u64(n)).collect();
        let brute: Vec<u64> = (0..200u64)
            .filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes, brute);
        // Carmichael numbers
        assert!(!is_prime_u64(561));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn roots_of_minus_one() {
        for p in [5u32, 13, 17, 29, 37, 41, 1_000_033] {
            let bp = BigUint::from(p);
            if !is_prime(&bp) {
                continue;
            }
            let c = sqrt_neg_one_mod(&bp);
            assert_eq!((&c * &c + 1u32) % &bp, BigUint::zero());
        }
    }
}
