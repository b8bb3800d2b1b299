//! Powerful numbers: detection, the unique `n = a²·b³` decomposition with `b`
//! squarefree, generation up to a bound and runs of consecutive values.

use serde::Serialize;

use crate::arith::{factor, icbrt, isqrt};
use crate::{Error, Result};

/// `n = a²·b³` with `a ≥ 0`, `|b|` squarefree and `b` carrying the sign of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PowerfulDecomposition {
    pub n: i128,
    pub a: i128,
    pub b: i128,
}

impl PowerfulDecomposition {
    pub fn reconstruct(&self) -> i128 {
        self.a * self.a * self.b * self.b * self.b
    }
}

/// True iff `n ≥ 1` and every prime of `n` appears at least squared.
pub fn is_powerful(n: i128) -> bool {
    n >= 1 && factor(n).map(|f| f.iter().all(|pp| pp.exp >= 2)).unwrap_or(false)
}

/// Splits `n` (with `|n|` powerful) into its `a²·b³` form.
///
/// Each prime exponent `e ≥ 2` goes to `b` once when `e` is odd and the rest,
/// now even, to `a`. That is the only assignment keeping `b` squarefree.
pub fn decompose_powerful(n: i128) -> Result<PowerfulDecomposition> {
    if n == 0 {
        return Err(Error::domain("0 is not powerful"));
    }
    let f = factor(n)?;
    let mut a: i128 = 1;
    let mut b: i128 = 1;
    for pp in f.iter() {
        if pp.exp < 2 {
            return Err(Error::domain(format!("|{n}| is not powerful: {} appears to the first power", pp.prime)));
        }
        let beta = pp.exp % 2;
        let alpha = (pp.exp - 3 * beta) / 2;
        a *= pp.prime.pow(alpha);
        if beta == 1 {
            b *= pp.prime;
        }
    }
    let b = if f.sign() < 0 { -b } else { b };
    Ok(PowerfulDecomposition { n, a, b })
}

/// Squarefree flags for `0..=limit` (index 0 unused).
fn squarefree_sieve(limit: usize) -> Vec<bool> {
    let mut flags = vec![true; limit + 1];
    let mut d = 2;
    while d * d <= limit {
        let sq = d * d;
        let mut m = sq;
        while m <= limit {
            flags[m] = false;
            m += sq;
        }
        d += 1;
    }
    flags
}

/// Largest accepted `limit`; the output holds about `2.2·√limit` values.
pub const MAX_POWERFUL_LIMIT: u64 = 10_000_000_000_000;

/// All powerful numbers in `[1, limit]`, ascending.
///
/// Enumerates `a²·b³` over squarefree `b ≤ limit^(1/3)` and `a ≤ √(limit / b³)`
/// instead of factoring every integer.
pub fn powerful_up_to(limit: u64) -> Result<Vec<u64>> {
    if limit < 1 {
        return Err(Error::domain("limit must be at least 1"));
    }
    if limit > MAX_POWERFUL_LIMIT {
        return Err(Error::RangeOverflow { what: "powerful-number limit", max: MAX_POWERFUL_LIMIT as i128 });
    }
    let limit_i = limit as i128;
    let b_max = icbrt(limit_i) as usize;
    let squarefree = squarefree_sieve(b_max);
    let mut out = Vec::new();
    for b in 1..=b_max {
        if !squarefree[b] {
            continue;
        }
        let cube = (b as i128).pow(3);
        let a_max = isqrt(limit_i / cube)?;
        out.extend((1..=a_max).map(|a| (a * a * cube) as u64));
    }
    out.sort_unstable();
    assert!(out.windows(2).all(|w| w[0] < w[1]), "a²b³ representation with squarefree b must be unique");
    Ok(out)
}

/// Starting points `n ≤ limit − run_len + 1` of runs `n, n+1, …, n+run_len−1`
/// that are all powerful.
pub fn consecutive_runs(limit: u64, run_len: usize) -> Result<Vec<u64>> {
    if run_len < 2 {
        return Err(Error::domain("run length must be at least 2"));
    }
    if limit < run_len as u64 {
        return Err(Error::domain("limit must be at least the run length"));
    }
    let values = powerful_up_to(limit)?;
    let span = run_len as u64 - 1;
    Ok(values.windows(run_len).filter(|w| w[run_len - 1] - w[0] == span).map(|w| w[0]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn is_powerful_examples() {
        assert!(is_powerful(8));
        assert!(!is_powerful(12));
        assert!(is_powerful(9800));
        assert!(is_powerful(1));
        assert!(!is_powerful(0));
        assert!(!is_powerful(-8));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose_powerful(72).unwrap(), PowerfulDecomposition { n: 72, a: 3, b: 2 });
        assert_eq!(decompose_powerful(64).unwrap(), PowerfulDecomposition { n: 64, a: 8, b: 1 });
        assert_eq!(decompose_powerful(-8).unwrap(), PowerfulDecomposition { n: -8, a: 1, b: -2 });
        assert_eq!(decompose_powerful(1).unwrap(), PowerfulDecomposition { n: 1, a: 1, b: 1 });
        assert!(matches!(decompose_powerful(0), Err(Error::Domain(_))));
        assert!(matches!(decompose_powerful(12), Err(Error::Domain(_))));
        // 2^5 * 3^7 = (2 * 3^2)^2 * (2*3)^3
        let d = decompose_powerful(32 * 2187).unwrap();
        assert_eq!((d.a, d.b), (18, 6));
    }

    #[test]
    fn generation_examples() {
        assert_eq!(powerful_up_to(10).unwrap(), vec![1, 4, 8, 9]);
        assert_eq!(powerful_up_to(1).unwrap(), vec![1]);
        assert_eq!(powerful_up_to(100).unwrap().len(), 14);
        assert!(powerful_up_to(0).is_err());
    }

    #[test]
    fn runs_examples() {
        assert_eq!(consecutive_runs(10, 2).unwrap(), vec![8]);
        assert_eq!(consecutive_runs(300, 2).unwrap(), vec![8, 288]);
        assert_eq!(consecutive_runs(9, 2).unwrap(), vec![8]);
        assert_eq!(consecutive_runs(8, 2).unwrap(), Vec::<u64>::new());
        assert!(consecutive_runs(1, 2).is_err());
        assert!(consecutive_runs(10, 1).is_err());
    }
}
