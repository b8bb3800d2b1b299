use crate::{Error, Result};

/// `⌊√n⌋` for `n ≥ 0`.
pub fn isqrt(n: i128) -> Result<i128> {
    if n < 0 {
        return Err(Error::domain(format!("isqrt of negative value {n}")));
    }
    Ok((n as u128).isqrt() as i128)
}

/// Integer cube root truncated toward zero.
///
/// For `n ≥ 0` the result `r` satisfies `r³ ≤ n < (r+1)³`; negative inputs
/// mirror that, so `icbrt(-n) == -icbrt(n)`.
pub fn icbrt(n: i128) -> i128 {
    let r = icbrt_u128(n.unsigned_abs()) as i128;
    if n < 0 {
        -r
    } else {
        r
    }
}

pub(crate) fn icbrt_u128(n: u128) -> u128 {
    if n < 8 {
        return u128::from(n > 0);
    }
    let cube_le = |r: u128| -> bool {
        match r.checked_mul(r).and_then(|sq| sq.checked_mul(r)) {
            Some(c) => c <= n,
            None => false,
        }
    };
    let mut r = (n as f64).cbrt() as u128;
    while !cube_le(r) {
        r -= 1;
    }
    while cube_le(r + 1) {
        r += 1;
    }
    r
}

// Quadratic residues modulo 64, 63 and 65 as bitmasks.
const fn residue_mask(m: u64) -> u128 {
    let mut mask = 0u128;
    let mut i = 0;
    while i < m {
        mask |= 1 << ((i * i) % m);
        i += 1;
    }
    mask
}

const SQ64: u128 = residue_mask(64);
const SQ63: u128 = residue_mask(63);
const SQ65: u128 = residue_mask(65);

/// The non-negative square root of `n` when `n` is a perfect square.
pub fn is_perfect_square(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let u = n as u128;
    if SQ64 >> (u % 64) & 1 == 0 || SQ63 >> (u % 63) & 1 == 0 || SQ65 >> (u % 65) & 1 == 0 {
        return None;
    }
    let r = u.isqrt();
    (r * r == u).then_some(r as i128)
}

/// The (signed) cube root of `n` when `n` is a perfect cube.
pub fn is_perfect_cube(n: i128) -> Option<i128> {
    // cubes are 0, ±1 mod 9 and 0, ±1 mod 7
    let r9 = n.rem_euclid(9);
    let r7 = n.rem_euclid(7);
    if !matches!(r9, 0 | 1 | 8) || !matches!(r7, 0 | 1 | 6) {
        return None;
    }
    let r = icbrt(n);
    (r * r * r == n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(0), Ok(0));
        assert_eq!(isqrt(1), Ok(1));
        assert_eq!(isqrt(99), Ok(9));
        assert!(matches!(isqrt(-1), Err(Error::Domain(_))));
        assert_eq!(isqrt(i128::MAX), Ok(13_043_817_825_332_782_212));
    }

    #[test]
    fn icbrt_examples() {
        assert_eq!(icbrt(27), 3);
        assert_eq!(icbrt(-28), -3);
        assert_eq!(icbrt(0), 0);
        assert_eq!(icbrt(26), 2);
        assert_eq!(icbrt(i128::MIN), -5_541_191_377_756);
        assert_eq!(icbrt(i128::MAX), 5_541_191_377_756);
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(is_perfect_square(1296), Some(36));
        assert_eq!(is_perfect_square(2), None);
        assert_eq!(is_perfect_square(-4), None);
        assert_eq!(is_perfect_square(0), Some(0));
        assert_eq!(is_perfect_cube(-8), Some(-2));
        assert_eq!(is_perfect_cube(7), None);
        assert_eq!(is_perfect_cube(5832), Some(18));
        assert_eq!(is_perfect_cube(0), Some(0));
        let big = 5_541_191_377_756i128;
        assert_eq!(is_perfect_cube(big * big * big), Some(big));
        assert_eq!(is_perfect_cube(-(big * big * big)), Some(-big));
    }

    #[test]
    fn residue_filters_do_not_reject_squares() {
        for r in 0..10_000i128 {
            assert_eq!(is_perfect_square(r * r), Some(r));
            assert_eq!(is_perfect_cube(r * r * r), Some(r));
            assert_eq!(is_perfect_cube(-r * r * r), Some(-r));
        }
    }
}
