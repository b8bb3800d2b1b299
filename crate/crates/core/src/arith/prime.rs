use super::montgomery::{ModRing, Mont128, Mont64};
use super::roots::is_perfect_square;

pub(crate) const SMALL_PRIMES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

// Sinclair's bases: a deterministic Miller-Rabin set for every n < 2^64.
const BASES_64: [u128; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

// The first thirteen prime bases are deterministic below this bound
// (Sorenson & Webster).
const BASES_128: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const BASES_128_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

/// Deterministic primality test over the whole `i128` range.
///
/// Returns `false` for everything below 2, including negatives. Inputs below
/// `3.3·10²⁴` are decided by a proven Miller-Rabin base set; above that the
/// test adds a strong Lucas test (Baillie-PSW), which has no known
/// counterexample.
pub fn is_prime(n: i128) -> bool {
    if n < 2 {
        return false;
    }
    is_prime_u128(n as u128)
}

pub(crate) fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = p as u128;
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 59 * 59 {
        return true;
    }
    if n <= u64::MAX as u128 {
        let ring = Mont64::new(n as u64);
        return BASES_64.iter().all(|&b| strong_probable_prime(&ring, b));
    }
    let ring = Mont128::new(n);
    if !BASES_128.iter().all(|&b| strong_probable_prime(&ring, b)) {
        return false;
    }
    n < BASES_128_BOUND || strong_lucas_probable_prime(&ring)
}

pub(crate) fn strong_probable_prime<R: ModRing>(ring: &R, base: u128) -> bool {
    let n = ring.modulus();
    let a = base % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let one = ring.one();
    let minus_one = ring.neg(one);
    let mut x = ring.pow(ring.from_u128(a), d);
    if x == one || x == minus_one {
        return true;
    }
    for _ in 1..s {
        x = ring.mul(x, x);
        if x == minus_one {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
fn jacobi(a: i128, n: u128) -> i8 {
    debug_assert!(n & 1 == 1);
    let mut a = if a < 0 {
        let r = a.unsigned_abs() % n;
        if r == 0 {
            0
        } else {
            n - r
        }
    } else {
        a as u128 % n
    };
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z & 1 == 1 && (n % 8 == 3 || n % 8 == 5) {
            t = -t;
        }
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Strong Lucas test with Selfridge parameters (P = 1).
fn strong_lucas_probable_prime<R: ModRing>(ring: &R) -> bool {
    let n = ring.modulus();
    if n <= i128::MAX as u128 && is_perfect_square(n as i128).is_some() {
        return false;
    }
    let mut d: i128 = 5;
    loop {
        match jacobi(d, n) {
            -1 => break,
            0 if d.unsigned_abs() != n => return false,
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let q = (1 - d) / 4;
    let dm = ring.from_i128(d);
    let qm = ring.from_i128(q);
    let two = ring.from_u128(2);

    let s = (n + 1).trailing_zeros();
    let k = (n + 1) >> s;
    let mut u = ring.one();
    let mut v = ring.one();
    let mut qk = qm;
    let bits = 128 - k.leading_zeros();
    for i in (0..bits - 1).rev() {
        u = ring.mul(u, v);
        v = ring.sub(ring.mul(v, v), ring.mul(two, qk));
        qk = ring.mul(qk, qk);
        if (k >> i) & 1 == 1 {
            let nu = ring.half(ring.add(u, v));
            let nv = ring.half(ring.add(ring.mul(dm, u), v));
            u = nu;
            v = nv;
            qk = ring.mul(qk, qm);
        }
    }
    if u == ring.zero() || v == ring.zero() {
        return true;
    }
    for _ in 1..s {
        v = ring.sub(ring.mul(v, v), ring.mul(two, qk));
        if v == ring.zero() {
            return true;
        }
        qk = ring.mul(qk, qk);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(n: u128) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn examples() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(9800));
        assert!(!is_prime(-7));
        assert!(!is_prime(0));
    }

    #[test]
    fn agrees_with_trial_division_small() {
        for n in 0..20_000u128 {
            assert_eq!(is_prime_u128(n), trial(n), "{n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_are_rejected() {
        // spsp to bases 2, 3, 5, 7
        assert!(!is_prime(3_215_031_751));
        // Carmichael numbers
        for c in [561i128, 1105, 1729, 2465, 2821, 6601, 8911, 41041, 825265] {
            assert!(!is_prime(c));
        }
        // strong pseudoprime to the first 12 prime bases
        assert!(!is_prime(318_665_857_834_031_151_167_461));
        // spsp to all prime bases up to 41
        assert!(!is_prime(3_317_044_064_679_887_385_961_981));
    }

    #[test]
    fn large_known_values() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest prime below 2^64
        assert!(is_prime((1 << 61) - 1));
        assert!(is_prime((1 << 89) - 1));
        assert!(is_prime((1 << 107) - 1));
        assert!(is_prime(i128::MAX)); // 2^127 - 1
        assert!(!is_prime(((1 << 31) - 1) * ((1 << 89) - 1)));
        assert!(!is_prime(((1 << 61) - 1) * ((1 << 61) - 1)));
        assert!(!is_prime((1 << 67) - 1));
        assert!(!is_prime(i128::MAX - 2));
    }

    #[test]
    fn lucas_alone_on_primes_and_composites() {
        for p in [(1u128 << 89) - 1, (1 << 107) - 1, (1 << 127) - 1, 1_000_000_007] {
            assert!(strong_lucas_probable_prime(&Mont128::new(p)), "{p}");
        }
        for c in [((1u128 << 31) - 1) * ((1 << 61) - 1), 1_000_000_007 * 998_244_353, 5461] {
            assert!(!strong_lucas_probable_prime(&Mont128::new(c)), "{c}");
        }
        // the first strong Lucas pseudoprimes pass the Lucas half alone
        for c in [5459u128, 5777, 10877, 16109, 18971] {
            assert!(strong_lucas_probable_prime(&Mont128::new(c)), "{c}");
            assert!(!is_prime_u128(c));
        }
    }

    #[test]
    fn jacobi_small() {
        assert_eq!(jacobi(5, 3), -1);
        assert_eq!(jacobi(-7, 11), 1);
        assert_eq!(jacobi(2, 15), 1);
        assert_eq!(jacobi(6, 9), 0);
    }
}
