//! Montgomery residue rings for odd moduli below `2^64` and `2^127`.
//!
//! Elements are kept in Montgomery form throughout; `raw` exposes the stored
//! representative, which is enough for gcd extraction since `R` is a unit.

pub(crate) trait ModRing {
    type Elem: Copy + Eq + std::fmt::Debug;

    fn modulus(&self) -> u128;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Maps `a` (any value) into Montgomery form.
    fn from_u128(&self, a: u128) -> Self::Elem;
    fn raw(&self, e: Self::Elem) -> u128;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// `a / 2 mod n`.
    fn half(&self, a: Self::Elem) -> Self::Elem;

    fn from_i128(&self, a: i128) -> Self::Elem {
        let n = self.modulus();
        let r = a.unsigned_abs() % n;
        let e = self.from_u128(r);
        if a < 0 {
            self.sub(self.zero(), e)
        } else {
            e
        }
    }

    fn neg(&self, a: Self::Elem) -> Self::Elem {
        self.sub(self.zero(), a)
    }

    fn pow(&self, base: Self::Elem, mut exp: u128) -> Self::Elem {
        let mut acc = self.one();
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Mont64 {
    n: u64,
    inv: u64,
    r2: u64,
    one: u64,
}

impl Mont64 {
    pub fn new(n: u64) -> Self {
        assert!(n & 1 == 1 && n > 1, "Montgomery modulus must be odd and > 1");
        let mut inv = n;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
        }
        debug_assert_eq!(n.wrapping_mul(inv), 1);
        let r = ((1u128 << 64) % n as u128) as u64;
        let r2 = ((r as u128 * r as u128) % n as u128) as u64;
        Mont64 { n, inv, r2, one: r }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.inv);
        let mn = m as u128 * self.n as u128;
        let t_hi = (t >> 64) as u64;
        let mn_hi = (mn >> 64) as u64;
        if t_hi >= mn_hi {
            t_hi - mn_hi
        } else {
            t_hi.wrapping_sub(mn_hi).wrapping_add(self.n)
        }
    }
}

impl ModRing for Mont64 {
    type Elem = u64;

    fn modulus(&self) -> u128 {
        self.n as u128
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        self.one
    }
    fn from_u128(&self, a: u128) -> u64 {
        let a = (a % self.n as u128) as u64;
        self.redc(a as u128 * self.r2 as u128)
    }
    fn raw(&self, e: u64) -> u128 {
        e as u128
    }
    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let (s, o) = a.overflowing_add(b);
        if o || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.n)
        }
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }
    fn half(&self, a: u64) -> u64 {
        if a & 1 == 0 {
            a >> 1
        } else {
            (a >> 1) + (self.n >> 1) + 1
        }
    }
}

/// Full 128×128 → 256-bit product as `(hi, lo)`.
#[inline]
pub(crate) fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a1, a0) = (a >> 64, a & MASK);
    let (b1, b0) = (b >> 64, b & MASK);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & MASK) + (p10 & MASK);
    let lo = (p00 & MASK) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Mont128 {
    n: u128,
    inv: u128,
    r2: u128,
    one: u128,
}

impl Mont128 {
    /// `n` must be odd and below `2^127`.
    pub fn new(n: u128) -> Self {
        assert!(n & 1 == 1 && n > 1 && n < 1 << 127);
        let mut inv = n;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        debug_assert_eq!(n.wrapping_mul(inv), 1);
        let one = (u128::MAX % n + 1) % n;
        let mut ring = Mont128 { n, inv, r2: 0, one };
        let mut r2 = one;
        for _ in 0..128 {
            r2 = ring.add(r2, r2);
        }
        ring.r2 = r2;
        ring
    }

    #[inline]
    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.inv);
        let (mn_hi, _) = mul_wide(m, self.n);
        if hi >= mn_hi {
            hi - mn_hi
        } else {
            hi.wrapping_sub(mn_hi).wrapping_add(self.n)
        }
    }
}

impl ModRing for Mont128 {
    type Elem = u128;

    fn modulus(&self) -> u128 {
        self.n
    }
    fn zero(&self) -> u128 {
        0
    }
    fn one(&self) -> u128 {
        self.one
    }
    fn from_u128(&self, a: u128) -> u128 {
        let (hi, lo) = mul_wide(a % self.n, self.r2);
        self.redc(hi, lo)
    }
    fn raw(&self, e: u128) -> u128 {
        e
    }
    #[inline]
    fn add(&self, a: u128, b: u128) -> u128 {
        // both < n < 2^127, so the sum cannot wrap
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.n)
        }
    }
    #[inline]
    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }
    fn half(&self, a: u128) -> u128 {
        if a & 1 == 0 {
            a >> 1
        } else {
            (a >> 1) + (self.n >> 1) + 1
        }
    }
}
