//! Independent test-side oracles. Nothing here calls into the library.

#![allow(dead_code)]

/// Smallest-prime-factor table for `0..=n`.
pub fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// `(prime, exponent)` pairs of `m ≥ 1` read off an SPF table.
pub fn factor_with(spf: &[u32], mut m: usize) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    while m > 1 {
        let p = spf[m] as usize;
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        out.push((p as u64, e));
    }
    out
}

pub fn primes_up_to(n: usize) -> Vec<u64> {
    let spf = spf_sieve(n);
    (2..=n).filter(|&i| spf[i] as usize == i).map(|i| i as u64).collect()
}

/// Trial-division primality, for spot checks.
pub fn is_prime_slow(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn euclid(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Exact integer cube root by binary search.
pub fn cube_root_exact(n: i128) -> Option<i128> {
    let neg = n < 0;
    let m = n.unsigned_abs();
    let (mut lo, mut hi) = (0u128, 1u128 << ((128 - m.leading_zeros()) / 3 + 1));
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if mid.checked_pow(3).map_or(false, |c| c <= m) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    (lo.pow(3) == m).then(|| if neg { -(lo as i128) } else { lo as i128 })
}
