use serde::Serialize;

use super::MAX_THEOREM_X;
use crate::arith::{gcd, valuation};
use crate::{Error, Result};

/// `g₋ = gcd(x − 1, x² + x + 1)` and `g₊ = gcd(x + 1, x² − x + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GcdPair {
    pub x: i64,
    pub g_minus: i64,
    pub g_plus: i64,
}

/// Computes both gcds directly and checks them against `x mod 3`.
///
/// # Panics
///
/// If either gcd disagrees with `gcd(x ∓ 1, 3)`, which would contradict the
/// polynomial identities `x² ± x + 1 = (x ∓ 1)(x ± 2) + 3`.
pub fn gcd_pair(x: i64) -> GcdPair {
    let xi = x as i128;
    let g_minus = gcd(xi - 1, xi * xi + xi + 1) as i64;
    let g_plus = gcd(xi + 1, xi * xi - xi + 1) as i64;
    let r = x.rem_euclid(3);
    assert_eq!(g_minus, if r == 1 { 3 } else { 1 }, "g₋ at x = {x}");
    assert_eq!(g_plus, if r == 2 { 3 } else { 1 }, "g₊ at x = {x}");
    GcdPair { x, g_minus, g_plus }
}

/// 3-adic valuations around `x³ + 1 = (x + 1)(x² − x + 1)` for `x ≡ 2 (mod 3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LteRecord {
    pub x: i64,
    pub v3_x_plus_1: u32,
    pub v3_x2_minus_x_plus_1: u32,
    pub v3_x3_plus_1: u32,
    /// `v₃(x³+1) = v₃(x+1) + v₃(x²−x+1)`, `v₃(x²−x+1) = 1` and
    /// `v₃(x³+1) = v₃(x+1) + 1` all hold.
    pub identity_holds: bool,
}

/// Valuations behind the lifting-the-exponent step for `p = 3`.
pub fn lte_v3_check(x: i64) -> Result<LteRecord> {
    if x.rem_euclid(3) != 2 {
        return Err(Error::domain(format!("lte_v3_check needs x ≡ 2 (mod 3), got x = {x}")));
    }
    if x == -1 {
        return Err(Error::domain("x = −1 makes x³ + 1 vanish"));
    }
    if x.unsigned_abs() > MAX_THEOREM_X as u64 {
        return Err(Error::RangeOverflow { what: "|x| (x³ ± 1 must fit in 128 bits)", max: MAX_THEOREM_X as i128 });
    }
    let xi = x as i128;
    let v3_x_plus_1 = valuation(3, xi + 1)?;
    let v3_x2_minus_x_plus_1 = valuation(3, xi * xi - xi + 1)?;
    let v3_x3_plus_1 = valuation(3, xi * xi * xi + 1)?;
    let identity_holds = v3_x3_plus_1 == v3_x_plus_1 + v3_x2_minus_x_plus_1
        && v3_x2_minus_x_plus_1 == 1
        && v3_x3_plus_1 == v3_x_plus_1 + 1;
    Ok(LteRecord { x, v3_x_plus_1, v3_x2_minus_x_plus_1, v3_x3_plus_1, identity_holds })
}

/// `x ≡ −1 (mod 9)`.
pub fn xmod9_filter(x: i64) -> bool {
    x.rem_euclid(9) == 8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_pair_examples() {
        assert_eq!(gcd_pair(4), GcdPair { x: 4, g_minus: 3, g_plus: 1 });
        assert_eq!(gcd_pair(5), GcdPair { x: 5, g_minus: 1, g_plus: 3 });
        assert_eq!(gcd_pair(6), GcdPair { x: 6, g_minus: 1, g_plus: 1 });
        assert_eq!(gcd_pair(1), GcdPair { x: 1, g_minus: 3, g_plus: 1 });
        assert_eq!(gcd_pair(-1), GcdPair { x: -1, g_minus: 1, g_plus: 3 });
    }

    #[test]
    fn lte_examples() {
        let r = lte_v3_check(2).unwrap();
        assert_eq!((r.v3_x_plus_1, r.v3_x2_minus_x_plus_1, r.identity_holds), (1, 1, true));
        let r = lte_v3_check(8).unwrap();
        assert_eq!((r.v3_x_plus_1, r.v3_x2_minus_x_plus_1, r.identity_holds), (2, 1, true));
        assert_eq!(r.v3_x3_plus_1, 3);
        let r = lte_v3_check(26).unwrap();
        assert_eq!((r.v3_x_plus_1, r.v3_x2_minus_x_plus_1, r.identity_holds), (3, 1, true));
        assert_eq!(r.v3_x3_plus_1, 4);
        assert!(lte_v3_check(3).is_err());
        assert!(lte_v3_check(-1).is_err());
        assert!(lte_v3_check(-4).unwrap().identity_holds);
    }

    #[test]
    fn xmod9_examples() {
        assert!(xmod9_filter(8));
        assert!(xmod9_filter(17));
        assert!(!xmod9_filter(2));
        assert!(xmod9_filter(-1));
        assert!(xmod9_filter(-10));
    }
}
