use serde::Serialize;

use crate::arith::{factor, gcd, is_perfect_cube, is_prime};
use crate::{Error, Result};

/// Shape families for coprime-or-prime-gcd factor pairs of `p²·C³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ShapeTag {
    /// `{C₁³, p²·C₂³}`, gcd 1.
    #[serde(rename = "CUBE_AND_P2CUBE")]
    CubeAndP2Cube,
    /// `(g·C₁³, g·C₂³)`.
    #[serde(rename = "G_CUBE_BOTH")]
    GCubeBoth,
    /// `{g·C₁³, g²p²·C₂³}`.
    #[serde(rename = "G_CUBE_AND_G2P2CUBE")]
    GCubeAndG2P2Cube,
    /// `{g·p²·C₁³, g²·C₂³}`.
    #[serde(rename = "GP2_CUBE_AND_G2CUBE")]
    GP2CubeAndG2Cube,
}

impl ShapeTag {
    /// Scalars `(s₁, s₂)` so the family reads `{s₁·C₁³, s₂·C₂³}`.
    pub fn scalars(self, p: i128, g: i128) -> (i128, i128) {
        match self {
            ShapeTag::CubeAndP2Cube => (1, p * p),
            ShapeTag::GCubeBoth => (g, g),
            ShapeTag::GCubeAndG2P2Cube => (g, g * g * p * p),
            ShapeTag::GP2CubeAndG2Cube => (g * p * p, g * g),
        }
    }
}

/// One way the pair `(R, S)` realises a shape family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ShapeMatch {
    pub tag: ShapeTag,
    /// `R` takes the first shape `s₁·C₁³` (otherwise `S` does).
    pub r_takes_first: bool,
    pub c1: i128,
    pub c2: i128,
}

impl ShapeMatch {
    /// The `(R, S)` pair this match describes.
    pub fn reconstruct(&self, p: i128, g: i128) -> (i128, i128) {
        let (s1, s2) = self.tag.scalars(p, g);
        let first = s1 * self.c1.pow(3);
        let second = s2 * self.c2.pow(3);
        if self.r_takes_first {
            (first, second)
        } else {
            (second, first)
        }
    }
}

/// The realised shape of a factor pair with `R·S = p²·C³`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitShape {
    pub r: i128,
    pub s: i128,
    pub p: i128,
    pub g: i128,
    /// The selected match, earliest family first.
    pub shape: ShapeMatch,
    /// Every family and orientation that matches, including `shape`.
    pub all_matches: Vec<ShapeMatch>,
}

fn cube_quotient(value: i128, scalar: i128) -> Option<i128> {
    if value % scalar != 0 {
        return None;
    }
    is_perfect_cube(value / scalar)
}

fn try_match(tag: ShapeTag, r_takes_first: bool, r: i128, s: i128, p: i128, g: i128) -> Option<ShapeMatch> {
    let (s1, s2) = tag.scalars(p, g);
    let (first, second) = if r_takes_first { (r, s) } else { (s, r) };
    let c1 = cube_quotient(first, s1)?;
    let c2 = cube_quotient(second, s2)?;
    Some(ShapeMatch { tag, r_takes_first, c1, c2 })
}

/// Splits `R`, `S` with `R·S = p²·C³` into cube shapes.
///
/// With `gcd(R, S) = 1` one factor is a cube and the other `p²` times a cube.
/// With a prime gcd `g` the pair falls in one of the families `G_CUBE_BOTH`,
/// `G_CUBE_AND_G2P2CUBE`, `GP2_CUBE_AND_G2CUBE`; when several match, the first
/// in that order is selected (R-first orientation before S-first) and all are
/// listed in `all_matches`.
pub fn split_shapes(r: i128, s: i128, p: i128) -> Result<SplitShape> {
    if r == 0 || s == 0 {
        return Err(Error::domain("R and S must be nonzero"));
    }
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let product = factor(r)?.mul(&factor(s)?);
    let is_instance =
        product.iter().all(|pp| if pp.prime == p { pp.exp >= 2 && (pp.exp - 2) % 3 == 0 } else { pp.exp % 3 == 0 })
            && product.exponent(p) >= 2;
    if !is_instance {
        return Err(Error::NotAnInstance(format!("{r}·{s} is not {p}² times a cube")));
    }
    let g = gcd(r, s);
    if g != 1 && !is_prime(g) {
        return Err(Error::OutsideHypotheses(format!("gcd({r}, {s}) = {g} is neither 1 nor prime")));
    }

    // candidate order doubles as the tie-break order
    let candidates: &[(ShapeTag, bool)] = if g == 1 {
        &[(ShapeTag::CubeAndP2Cube, true), (ShapeTag::CubeAndP2Cube, false)]
    } else {
        &[
            (ShapeTag::GCubeBoth, true),
            (ShapeTag::GCubeAndG2P2Cube, true),
            (ShapeTag::GCubeAndG2P2Cube, false),
            (ShapeTag::GP2CubeAndG2Cube, true),
            (ShapeTag::GP2CubeAndG2Cube, false),
        ]
    };
    let all_matches: Vec<ShapeMatch> =
        candidates.iter().filter_map(|&(tag, first)| try_match(tag, first, r, s, p, g)).collect();
    let Some(&shape) = all_matches.first() else {
        return Err(Error::CrossCheck(format!("no shape family matches R = {r}, S = {s}, p = {p}, g = {g}")));
    };
    for m in &all_matches {
        assert_eq!(m.reconstruct(p, g), (r, s), "shape witnesses must reconstruct (R, S)");
    }
    Ok(SplitShape { r, s, p, g, shape, all_matches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coprime_example() {
        let sp = split_shapes(8, 25, 5).unwrap();
        assert_eq!(sp.g, 1);
        assert_eq!(sp.shape, ShapeMatch { tag: ShapeTag::CubeAndP2Cube, r_takes_first: true, c1: 2, c2: 1 });
        assert_eq!(sp.all_matches.len(), 1);
        let sp = split_shapes(25, 8, 5).unwrap();
        assert!(!sp.shape.r_takes_first);
    }

    #[test]
    fn prime_gcd_example() {
        let sp = split_shapes(2, 100, 5).unwrap();
        assert_eq!(sp.g, 2);
        assert_eq!(sp.shape, ShapeMatch { tag: ShapeTag::GCubeAndG2P2Cube, r_takes_first: true, c1: 1, c2: 1 });
        assert_eq!(sp.all_matches.len(), 1);
    }

    #[test]
    fn g_equal_p_overlap_prefers_both_cubes() {
        // R = 5, S = 5^4: 5·1³ and 5·5³, but also 5 and 5²·5²·1³
        let sp = split_shapes(5, 625, 5).unwrap();
        assert_eq!(sp.shape.tag, ShapeTag::GCubeBoth);
        assert_eq!((sp.shape.c1, sp.shape.c2), (1, 5));
        assert!(sp.all_matches.iter().any(|m| m.tag == ShapeTag::GCubeAndG2P2Cube));
    }

    #[test]
    fn negative_factors() {
        let sp = split_shapes(-1, -49, 7).unwrap();
        assert_eq!(sp.shape.c1, -1);
        assert_eq!(sp.shape.c2, -1);
    }

    #[test]
    fn errors() {
        assert!(matches!(split_shapes(24, 3, 5), Err(Error::NotAnInstance(_))));
        // 6·(6·25) = 900 = 5²·36: not a cube cofactor
        assert!(matches!(split_shapes(6, 150, 5), Err(Error::NotAnInstance(_))));
        // 6·900 = 5²·6³ is an instance, but gcd(6, 900) = 6
        let (r, s) = (6, 6 * 6 * 25);
        assert!(matches!(split_shapes(r, s, 5), Err(Error::OutsideHypotheses(_))));
        assert!(matches!(split_shapes(0, 5, 5), Err(Error::Domain(_))));
        assert!(matches!(split_shapes(8, 25, 4), Err(Error::Domain(_))));
    }
}
