use serde::Serialize;

use super::{CubeCoeff, QuadSign};
use crate::arith::{icbrt, is_perfect_square};
use crate::{Error, Result};

/// The curve `y² = x³ + k`, `k ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MordellCurve {
    k: i128,
}

impl MordellCurve {
    pub fn new(k: i128) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("Mordell curve needs k ≠ 0"));
        }
        Ok(MordellCurve { k })
    }

    pub fn k(&self) -> i128 {
        self.k
    }

    pub fn contains(&self, x: i128, y: i128) -> bool {
        let rhs = x.checked_pow(3).and_then(|c| c.checked_add(self.k));
        let lhs = y.checked_mul(y);
        matches!((lhs, rhs), (Some(l), Some(r)) if l == r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MordellPoint {
    pub x: i128,
    pub y: i128,
    pub k: i128,
}

impl MordellPoint {
    pub fn curve(&self) -> MordellCurve {
        MordellCurve { k: self.k }
    }
}

/// Integer-linear substitution carrying `u² + s·u + 1 = k·v³` onto a Mordell
/// curve: `x = x_scale·v`, `y = y_scale·u + y_offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineMap {
    pub sign: QuadSign,
    pub coeff: CubeCoeff,
    pub curve: MordellCurve,
    pub x_scale: i128,
    pub y_scale: i128,
    pub y_offset: i128,
    /// Human-readable record of each substitution, in order.
    pub steps: Vec<String>,
}

impl AffineMap {
    pub fn forward(&self, u: i128, v: i128) -> (i128, i128) {
        (self.x_scale * v, self.y_scale * u + self.y_offset)
    }

    /// Inverse map; `None` unless `x_scale | x` and `y_scale | (y − y_offset)`.
    pub fn inverse(&self, x: i128, y: i128) -> Option<(i128, i128)> {
        let shifted = y.checked_sub(self.y_offset)?;
        if x % self.x_scale != 0 || shifted % self.y_scale != 0 {
            return None;
        }
        Some((shifted / self.y_scale, x / self.x_scale))
    }

    /// Whether `(u, v)` solves the source equation.
    pub fn source_holds(&self, u: i128, v: i128) -> bool {
        let lhs = u.checked_mul(u).and_then(|sq| sq.checked_add(self.sign.value() * u)).and_then(|t| t.checked_add(1));
        let rhs = v.checked_pow(3).and_then(|c| c.checked_mul(self.coeff.value()));
        matches!((lhs, rhs), (Some(l), Some(r)) if l == r)
    }
}

/// Reduces `u² + s·u + 1 = k·v³` to `y² = x³ + K`.
///
/// The chain is built step by step rather than looked up: reflect `u ↦ −u`
/// when `s = +1`, scale by `k²` so the cube becomes monic, complete the square,
/// then scale by 16 to clear the 4 on the cube. The curve constant falls out of
/// the arithmetic.
pub fn to_mordell(sign: QuadSign, coeff: CubeCoeff) -> (MordellCurve, AffineMap) {
    let k = coeff.value();
    let mut steps = Vec::new();
    // state: w² + b·w + c = m·z³ with w = w_u·u + w_0 and z = z_v·v
    let (mut w_u, mut w_0, mut z_v) = (1i128, 0i128, 1i128);
    let (mut b, mut c, mut m) = (sign.value(), 1i128, k);
    steps.push(format!("u² {} u + 1 = {k}·v³", sign_str(b)));

    if sign == QuadSign::Plus {
        w_u = -w_u;
        b = -b;
        steps.push(format!("substitute u ↦ −u: u² {} u + 1 = {k}·v³", sign_str(b)));
    }

    if m != 1 {
        w_u *= m;
        w_0 *= m;
        z_v *= m;
        b *= m;
        c *= m * m;
        steps.push(format!(
            "multiply by {m}², u' = {m}u, v' = {m}v: (u')² {} {}u' + {c} = (v')³",
            sign_str(b),
            b.abs()
        ));
        m = 1;
    }
    debug_assert_eq!(m, 1);

    // 4w² + 4bw + 4c = 4z³  →  (2w + b)² + (4c − b²) = 4z³
    w_u *= 2;
    w_0 = 2 * w_0 + b;
    let d = 4 * c - b * b;
    steps.push(format!("multiply by 4, u'' = 2u' {} {}: (u'')² + {d} = 4(v'')³", sign_str(b), b.abs()));

    // ×16 with y = 4u'', x = 4v''
    w_u *= 4;
    w_0 *= 4;
    z_v *= 4;
    let curve = MordellCurve { k: -16 * d };
    steps.push(format!("multiply by 16, x = 4v'', y = 4u'': y² = x³ − {}", 16 * d));

    let map = AffineMap { sign, coeff, curve, x_scale: z_v, y_scale: w_u, y_offset: w_0, steps };
    (curve, map)
}

fn sign_str(v: i128) -> &'static str {
    if v < 0 {
        "−"
    } else {
        "+"
    }
}

/// Largest `x_bound` for which `x³ + k` cannot overflow.
fn max_x_bound(k: i128) -> i128 {
    icbrt(i128::MAX - k.unsigned_abs().min(i128::MAX as u128) as i128)
}

/// All integer points with `|x| ≤ x_bound`, ordered by `x` then `y`.
///
/// Completeness beyond `x_bound` is not claimed.
pub fn mordell_points(curve: MordellCurve, x_bound: i128) -> Result<Vec<MordellPoint>> {
    if x_bound < 1 {
        return Err(Error::domain("x_bound must be at least 1"));
    }
    let max = max_x_bound(curve.k);
    if x_bound > max {
        return Err(Error::RangeOverflow { what: "Mordell x bound", max });
    }
    // x³ + k ≥ 0 requires x ≥ ∛(−k)
    let lo = (icbrt(-curve.k) - 1).max(-x_bound);
    let mut points = Vec::new();
    for x in lo..=x_bound {
        if let Some(y) = is_perfect_square(x * x * x + curve.k) {
            if y == 0 {
                points.push(MordellPoint { x, y, k: curve.k });
            } else {
                points.push(MordellPoint { x, y: -y, k: curve.k });
                points.push(MordellPoint { x, y, k: curve.k });
            }
        }
    }
    Ok(points)
}
