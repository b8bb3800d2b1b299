use crate::arith::is_perfect_square;
use crate::{Error, Result};

/// All integer `(u, v)` with `u³ − v³ = d`, for `d ∈ {1, 2}`, ascending in `u`.
///
/// `u³ − v³ = (u − v)(u² + uv + v²)` and the second factor is positive, so
/// `t = u − v` is a positive divisor of `d`. Substituting `v = u − t` leaves
/// `3u² − 3tu + t² − d/t = 0`, a quadratic with discriminant `12·d/t − 3t²`.
pub fn cube_diff_solutions(d: i128) -> Result<Vec<(i128, i128)>> {
    if d != 1 && d != 2 {
        return Err(Error::Unsupported(format!("u³ − v³ = {d} is only solved for d ∈ {{1, 2}}")));
    }
    let mut out = Vec::new();
    for t in (1..=d).filter(|t| d % t == 0) {
        let disc = 12 * (d / t) - 3 * t * t;
        let Some(root) = is_perfect_square(disc) else {
            continue;
        };
        for numerator in [3 * t - root, 3 * t + root] {
            if numerator % 6 == 0 {
                let u = numerator / 6;
                out.push((u, u - t));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    debug_assert!(out.iter().all(|&(u, v)| u.pow(3) - v.pow(3) == d));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(cube_diff_solutions(2).unwrap(), vec![(1, -1)]);
        assert_eq!(cube_diff_solutions(1).unwrap(), vec![(0, -1), (1, 0)]);
        assert!(matches!(cube_diff_solutions(3), Err(Error::Unsupported(_))));
        assert!(cube_diff_solutions(0).is_err());
    }
}
