use std::fmt;

use serde::Serialize;

use super::montgomery::{ModRing, Mont128, Mont64};
use super::prime::is_prime_u128;
use crate::{Error, Result};

const TRIAL_LIMIT: usize = 1024;

const fn primes_below<const N: usize>() -> [u32; N] {
    let mut composite = [false; TRIAL_LIMIT];
    let mut out = [0u32; N];
    let mut count = 0;
    let mut i = 2;
    while i < TRIAL_LIMIT {
        if !composite[i] {
            out[count] = i as u32;
            count += 1;
            let mut j = i * i;
            while j < TRIAL_LIMIT {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    assert!(count == N);
    out
}

/// All 172 primes below 1024.
static TRIAL_PRIMES: [u32; 172] = primes_below::<172>();

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePower {
    pub prime: i128,
    pub exp: u32,
}

/// Signed prime factorization of a nonzero integer.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// factorization of `±1` has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    sign: i8,
    factors: Vec<PrimePower>,
}

impl Factorization {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn iter(&self) -> impl Iterator<Item = &PrimePower> {
        self.factors.iter()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p`, zero when `p` does not divide the value.
    pub fn exponent(&self, p: i128) -> u32 {
        self.factors.binary_search_by(|f| f.prime.cmp(&p)).map(|i| self.factors[i].exp).unwrap_or(0)
    }

    /// Reconstructs the integer; `None` when it does not fit in `i128`.
    pub fn value(&self) -> Option<i128> {
        let mut acc: u128 = 1;
        for f in &self.factors {
            acc = acc.checked_mul((f.prime as u128).checked_pow(f.exp)?)?;
        }
        if self.sign < 0 {
            if acc == 1u128 << 127 {
                Some(i128::MIN)
            } else {
                i128::try_from(acc).ok().map(|v| -v)
            }
        } else {
            i128::try_from(acc).ok()
        }
    }

    /// Factorization of the product of two values.
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, b) = (self.factors[i], other.factors[j]);
            match a.prime.cmp(&b.prime) {
                std::cmp::Ordering::Less => {
                    factors.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    factors.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factors.push(PrimePower { prime: a.prime, exp: a.exp + b.exp });
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Factorization { sign: self.sign * other.sign, factors }
    }

    pub fn negate(&self) -> Factorization {
        Factorization { sign: -self.sign, factors: self.factors.clone() }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.sign < 0 {
            parts.push("-1".into());
        }
        for pp in &self.factors {
            if pp.exp == 1 {
                parts.push(pp.prime.to_string());
            } else {
                parts.push(format!("{}^{}", pp.prime, pp.exp));
            }
        }
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join(" * "))
    }
}

/// Complete factorization of a nonzero `i128`.
///
/// Trial division by the primes below 1024 strips small factors; whatever
/// remains is split with Brent's variant of Pollard rho and certified with
/// [`is_prime`](super::is_prime).
pub fn factor(n: i128) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("cannot factor zero"));
    }
    let sign = if n < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let mut factors = Vec::new();

    for &p in TRIAL_PRIMES.iter() {
        let p = p as u128;
        if p * p > m {
            break;
        }
        let mut e = 0;
        if m <= u64::MAX as u128 {
            let (mut small, p64) = (m as u64, p as u64);
            while small % p64 == 0 {
                small /= p64;
                e += 1;
            }
            m = small as u128;
        } else {
            while m % p == 0 {
                m /= p;
                e += 1;
            }
        }
        if e > 0 {
            factors.push(PrimePower { prime: p as i128, exp: e });
        }
    }

    if m > 1 {
        if m < (TRIAL_LIMIT * TRIAL_LIMIT) as u128 {
            factors.push(PrimePower { prime: m as i128, exp: 1 });
        } else {
            let mut large = Vec::new();
            split(m, &mut large);
            large.sort_unstable();
            for chunk in large.chunk_by(|a, b| a == b) {
                factors.push(PrimePower { prime: chunk[0] as i128, exp: chunk.len() as u32 });
            }
        }
    }
    Ok(Factorization { sign, factors })
}

/// Pushes the prime factors of `m` (free of primes below 1024) with multiplicity.
fn split(m: u128, out: &mut Vec<u128>) {
    if m == 1 {
        return;
    }
    if is_prime_u128(m) {
        out.push(m);
        return;
    }
    let d = find_factor(m);
    split(d, out);
    split(m / d, out);
}

fn find_factor(m: u128) -> u128 {
    let r = m.isqrt();
    if r * r == m {
        return r;
    }
    for c in 1u128.. {
        let found =
            if m <= u64::MAX as u128 { brent(&Mont64::new(m as u64), c, 2) } else { brent(&Mont128::new(m), c, 2) };
        if let Some(d) = found {
            return d;
        }
    }
    unreachable!("rho exhausted every increment")
}

fn brent<R: ModRing>(ring: &R, c: u128, x0: u128) -> Option<u128> {
    const BATCH: u64 = 128;
    let n = ring.modulus();
    let c = ring.from_u128(c);
    let f = |x| ring.add(ring.mul(x, x), c);
    let mut y = ring.from_u128(x0);
    let mut x = y;
    let mut ys = y;
    let mut q = ring.one();
    let mut g = 1u128;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = ring.mul(q, ring.sub(x, y));
            }
            g = gcd_u128(ring.raw(q), n);
            k += BATCH;
        }
        r <<= 1;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u128(ring.raw(ring.sub(x, ys)), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Non-negative greatest common divisor with `gcd(0, 0) = 0`.
///
/// # Panics
///
/// When the result is `2^127`, i.e. both arguments lie in `{0, i128::MIN}`.
pub fn gcd(a: i128, b: i128) -> i128 {
    let g = gcd_u128(a.unsigned_abs(), b.unsigned_abs());
    i128::try_from(g).expect("gcd of i128::MIN overflows i128")
}

/// Largest `e` with `p^e | n`.
pub fn valuation(p: i128, n: i128) -> Result<u32> {
    if n == 0 {
        return Err(Error::domain("valuation of zero is infinite"));
    }
    if !super::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let mut n = n;
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    Ok(e)
}

/// True when no square of a prime divides `n`; `±1` counts as squarefree.
pub fn is_squarefree(n: i128) -> Result<bool> {
    Ok(factor(n)?.iter().all(|f| f.exp == 1))
}
