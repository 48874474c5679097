//! Word-sized number theory: factorization, primality, modular powers, and
//! the prime/root-of-unity selection used by the exact character-sum counter.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd_u64(a, b) * b
}

/// Prime factorization by trial division, as `(p, e)` pairs with `p` ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Inverse of `a` modulo `m`, when it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(m));
    if !e.gcd.is_one() {
        return None;
    }
    let r = e.x.mod_floor(&BigInt::from(m));
    u64::try_from(r).ok()
}

/// A prime `q ≡ 1 (mod n)` together with a primitive `n`-th root of unity mod `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootedPrime {
    pub prime: u64,
    pub root: u64,
}

const PRIME_FLOOR: u64 = 1 << 61;

/// The `count` smallest primes `q > 2^61` with `q ≡ 1 (mod n)`, each paired
/// with a primitive `n`-th root of unity. Both properties are re-checked.
pub fn rooted_primes(n: u64, count: usize) -> Result<Vec<RootedPrime>> {
    if n == 0 {
        return Err(Error::invalid("root-of-unity order must be positive"));
    }
    let n_primes: Vec<u64> = factorize(n).into_iter().map(|(p, _)| p).collect();
    let mut out = Vec::with_capacity(count);
    let mut q = (PRIME_FLOOR / n + 1) * n + 1;
    while out.len() < count {
        if is_prime(q) {
            let root = primitive_root_of_unity(q, n, &n_primes)
                .ok_or_else(|| Error::internal("no primitive root of unity found"))?;
            if pow_mod(root, n, q) != 1 || n_primes.iter().any(|&p| pow_mod(root, n / p, q) == 1) {
                return Err(Error::internal("root of unity failed verification"));
            }
            out.push(RootedPrime { prime: q, root });
        }
        q = q.checked_add(n).ok_or_else(|| Error::internal("prime search overflowed u64"))?;
    }
    Ok(out)
}

fn primitive_root_of_unity(q: u64, n: u64, n_primes: &[u64]) -> Option<u64> {
    let cofactor = (q - 1) / n;
    (2..q.min(10_000)).find_map(|g| {
        let w = pow_mod(g, cofactor, q);
        let primitive = n_primes.iter().all(|&p| pow_mod(w, n / p, q) != 1);
        primitive.then_some(w)
    })
}

/// Reconstructs the unique `x` in `[0, prod moduli)` from its residues.
pub fn crt(residues: &[u64], moduli: &[u64]) -> BigUint {
    let mut value = BigUint::zero();
    let mut modulus = BigUint::one();
    for (&r, &m) in residues.iter().zip(moduli) {
        // value ≡ r (mod m): value += modulus * ((r - value) * modulus^{-1} mod m)
        let cur = (&value % m).iter_u64_digits().next().unwrap_or(0);
        let mod_m = (&modulus % m).iter_u64_digits().next().unwrap_or(0);
        let inv = inv_mod(mod_m, m).expect("CRT moduli must be pairwise coprime");
        let diff = (r % m + m - cur) % m;
        let t = mul_mod(diff, inv, m);
        value += &modulus * t;
        modulus *= m;
    }
    value
}

/// `base^exp` as a big integer.
pub fn big_pow(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn primality_matches_sieve() {
        let limit = 5000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), p, "{i}");
        }
        assert!(is_prime((1u64 << 61) - 1));
    }

    #[test]
    fn rooted_primes_are_verified() {
        for n in [1u64, 2, 4, 6, 8, 12] {
            let ps = rooted_primes(n, 2).unwrap();
            assert!(ps[0].prime < ps[1].prime);
            for rp in ps {
                assert!(rp.prime > PRIME_FLOOR);
                assert_eq!((rp.prime - 1) % n, 0);
                let order = (1..=n).find(|&e| pow_mod(rp.root, e, rp.prime) == 1);
                assert_eq!(order, Some(n));
            }
        }
    }

    #[test]
    fn crt_reconstructs() {
        let moduli = [7u64, 11, 13];
        for x in [0u64, 1, 500, 1000] {
            let res: Vec<u64> = moduli.iter().map(|m| x % m).collect();
            assert_eq!(crt(&res, &moduli), BigUint::from(x));
        }
    }
}
