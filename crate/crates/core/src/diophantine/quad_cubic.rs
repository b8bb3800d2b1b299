use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::mordell::{mordell_points, to_mordell};
use super::{CubeCoeff, QuadSign};
use crate::arith::{icbrt, is_perfect_cube};
use crate::{Error, Result};

const MAX_U_BOUND: i128 = 1_000_000_000_000;
const BLOCK: i128 = 1 << 16;

/// Solutions of `u² + s·u + 1 = k·v³` with `|u| ≤ search_bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadCubicSolutionSet {
    pub sign: QuadSign,
    pub coeff: CubeCoeff,
    /// `(u, v)` pairs in ascending `u`.
    pub solutions: Vec<(i128, i128)>,
    pub search_bound: i128,
    /// Set only when the caller asserts the known completeness of the
    /// Mordell-curve integer points; enumeration alone certifies `|u| ≤ search_bound`.
    pub complete: bool,
}

impl QuadCubicSolutionSet {
    pub fn u_values(&self) -> Vec<i128> {
        self.solutions.iter().map(|&(u, _)| u).collect()
    }
}

fn enumerate(sign: QuadSign, coeff: CubeCoeff, bound: i128) -> Vec<(i128, i128)> {
    let (s, k) = (sign.value(), coeff.value());
    let blocks: Vec<i128> = (-bound..=bound).step_by(BLOCK as usize).collect();
    blocks
        .par_iter()
        .flat_map_iter(|&start| {
            let end = (start + BLOCK - 1).min(bound);
            (start..=end).filter_map(move |u| {
                let lhs = u * u + s * u + 1;
                if lhs % k != 0 {
                    return None;
                }
                is_perfect_cube(lhs / k).map(|v| (u, v))
            })
        })
        .collect()
}

/// Enumerates `u² + s·u + 1 = k·v³` over `|u| ≤ u_bound` and cross-checks the
/// result against the integer points of the associated Mordell curve.
///
/// `assume_complete` records the external claim that no solutions exist past
/// the bound; it does not change what is computed.
pub fn solve_quad_cubic(
    sign: QuadSign,
    coeff: CubeCoeff,
    u_bound: i128,
    assume_complete: bool,
) -> Result<QuadCubicSolutionSet> {
    if u_bound < 1 {
        return Err(Error::domain("u_bound must be at least 1"));
    }
    if u_bound > MAX_U_BOUND {
        return Err(Error::RangeOverflow { what: "u bound", max: MAX_U_BOUND });
    }
    let solutions = enumerate(sign, coeff, u_bound);

    // second route: curve points pulled back through the affine map
    let (curve, map) = to_mordell(sign, coeff);
    let v_max = icbrt((u_bound * u_bound + u_bound + 1) / coeff.value());
    let points = mordell_points(curve, map.x_scale * (v_max + 1))?;
    let via_curve: BTreeSet<(i128, i128)> =
        points.iter().filter_map(|pt| map.inverse(pt.x, pt.y)).filter(|&(u, _)| u.abs() <= u_bound).collect();
    let direct: BTreeSet<(i128, i128)> = solutions.iter().copied().collect();
    if direct != via_curve {
        return Err(Error::CrossCheck(format!(
            "direct enumeration {direct:?} disagrees with curve points {via_curve:?}"
        )));
    }

    Ok(QuadCubicSolutionSet { sign, coeff, solutions, search_bound: u_bound, complete: assume_complete })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_sets() {
        let set = solve_quad_cubic(QuadSign::Plus, CubeCoeff::Three, 100_000, false).unwrap();
        assert_eq!(set.solutions, vec![(-2, 1), (1, 1)]);
        assert!(!set.complete);
        let set = solve_quad_cubic(QuadSign::Minus, CubeCoeff::Three, 100_000, true).unwrap();
        assert_eq!(set.solutions, vec![(-1, 1), (2, 1)]);
        assert!(set.complete);
    }

    #[test]
    fn k1_sets() {
        let set = solve_quad_cubic(QuadSign::Plus, CubeCoeff::One, 100_000, false).unwrap();
        assert_eq!(set.u_values(), vec![-19, -1, 0, 18]);
        let set = solve_quad_cubic(QuadSign::Minus, CubeCoeff::One, 100_000, false).unwrap();
        assert_eq!(set.u_values(), vec![-18, 0, 1, 19]);
    }

    #[test]
    fn small_bound_truncates() {
        let set = solve_quad_cubic(QuadSign::Plus, CubeCoeff::One, 5, false).unwrap();
        assert_eq!(set.solutions, vec![(-1, 1), (0, 1)]);
        assert!(solve_quad_cubic(QuadSign::Plus, CubeCoeff::One, 0, false).is_err());
    }
}
