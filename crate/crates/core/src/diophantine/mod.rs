//! Equation-level machinery: factor-shape splitting of `R·S = p²·C³`, the
//! equations `u² ± u + 1 = k·v³` (k ∈ {1, 3}) with their Mordell-curve
//! reductions, and the cube-difference equations `u³ − v³ = d`.

mod cube_diff;
mod mordell;
mod quad_cubic;
mod split;

use serde::Serialize;

use crate::{Error, Result};

pub use cube_diff::cube_diff_solutions;
pub use mordell::{mordell_points, to_mordell, AffineMap, MordellCurve, MordellPoint};
pub use quad_cubic::{solve_quad_cubic, QuadCubicSolutionSet};
pub use split::{split_shapes, ShapeMatch, ShapeTag, SplitShape};

/// Sign `s` of the linear term in `u² + s·u + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "i8")]
pub enum QuadSign {
    Plus,
    Minus,
}

impl QuadSign {
    pub fn value(self) -> i128 {
        match self {
            QuadSign::Plus => 1,
            QuadSign::Minus => -1,
        }
    }

    pub fn flip(self) -> QuadSign {
        match self {
            QuadSign::Plus => QuadSign::Minus,
            QuadSign::Minus => QuadSign::Plus,
        }
    }
}

impl From<QuadSign> for i8 {
    fn from(s: QuadSign) -> i8 {
        s.value() as i8
    }
}

impl TryFrom<i64> for QuadSign {
    type Error = Error;

    fn try_from(s: i64) -> Result<QuadSign> {
        match s {
            1 => Ok(QuadSign::Plus),
            -1 => Ok(QuadSign::Minus),
            _ => Err(Error::Unsupported(format!("s must be +1 or -1, got {s}"))),
        }
    }
}

/// Coefficient `k` of the cube in `u² ± u + 1 = k·v³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "i8")]
pub enum CubeCoeff {
    One,
    Three,
}

impl CubeCoeff {
    pub fn value(self) -> i128 {
        match self {
            CubeCoeff::One => 1,
            CubeCoeff::Three => 3,
        }
    }
}

impl From<CubeCoeff> for i8 {
    fn from(k: CubeCoeff) -> i8 {
        k.value() as i8
    }
}

impl TryFrom<i64> for CubeCoeff {
    type Error = Error;

    fn try_from(k: i64) -> Result<CubeCoeff> {
        match k {
            1 => Ok(CubeCoeff::One),
            3 => Ok(CubeCoeff::Three),
            _ => Err(Error::Unsupported(format!("k must be 1 or 3, got {k}"))),
        }
    }
}
