//! Bounded property suites for the lemmas the casework depends on.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, is_perfect_cube, is_prime, valuation};
use crate::diophantine::{
    cube_diff_solutions, mordell_points, solve_quad_cubic, split_shapes, to_mordell, CubeCoeff, MordellCurve, QuadSign,
};
use crate::engine::{lte_v3_check, trace_case};

/// Range used by the gcd and 3-adic suites.
pub const PROPERTY_BOUND: i64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

/// Runs `check` over `items` in parallel; `check` returns a description of
/// the failure, if any.
fn run<T, F>(name: &str, items: Vec<T>, check: F) -> CheckResult
where
    T: Send + Sync,
    F: Fn(&T) -> Option<String> + Sync,
{
    let failures: Vec<String> = items.par_iter().filter_map(&check).collect();
    CheckResult {
        name: name.to_string(),
        cases: items.len() as u64,
        failures: failures.len() as u64,
        first_failure: failures.into_iter().next(),
    }
}

fn symmetric(bound: i64) -> Vec<i64> {
    (-bound..=bound).collect()
}

fn split_suite() -> CheckResult {
    let mut cases = Vec::new();
    for p in [2i128, 3, 5, 7, 11, 13] {
        for r in -200i128..=200 {
            for s in -200i128..=200 {
                if r == 0 || s == 0 {
                    continue;
                }
                let g = gcd(r, s);
                if g != 1 && !is_prime(g) {
                    continue;
                }
                let prod = r * s;
                if prod % (p * p) == 0 && is_perfect_cube(prod / (p * p)).is_some() {
                    cases.push((r, s, p));
                }
            }
        }
    }
    run("split_shape_witnesses", cases, |&(r, s, p)| match split_shapes(r, s, p) {
        Ok(shape) if shape.shape.reconstruct(p, shape.g) == (r, s) => None,
        Ok(shape) => Some(format!("({r}, {s}, {p}) reconstructs to {:?}", shape.shape.reconstruct(p, shape.g))),
        Err(e) => Some(format!("({r}, {s}, {p}): {e}")),
    })
}

fn quad_suite(name: &str, coeff: CubeCoeff, expected: [(QuadSign, &[i128]); 2]) -> CheckResult {
    run(name, expected.to_vec(), |(sign, want)| match solve_quad_cubic(*sign, coeff, PROPERTY_BOUND as i128, false) {
        Ok(set) if set.u_values() == *want => None,
        Ok(set) => Some(format!("s = {}: got {:?}", sign.value(), set.u_values())),
        Err(e) => Some(e.to_string()),
    })
}

fn mordell_suite() -> CheckResult {
    run("mordell_anchor", vec![QuadSign::Plus, QuadSign::Minus], |&sign| {
        let (curve, map) = to_mordell(sign, CubeCoeff::Three);
        if curve != MordellCurve::new(-432).ok()? {
            return Some(format!("curve constant {}", curve.k()));
        }
        let points = match mordell_points(curve, 10_000) {
            Ok(p) => p,
            Err(e) => return Some(e.to_string()),
        };
        let xy: Vec<(i128, i128)> = points.iter().map(|p| (p.x, p.y)).collect();
        if xy != [(12, -36), (12, 36)] {
            return Some(format!("points {xy:?}"));
        }
        let mut back: Vec<(i128, i128)> = points.iter().filter_map(|p| map.inverse(p.x, p.y)).collect();
        back.sort_unstable();
        let direct = solve_quad_cubic(sign, CubeCoeff::Three, 1_000, false).ok()?.solutions;
        if back != direct || back.iter().any(|&(u, v)| !map.source_holds(u, v) || !xy.contains(&map.forward(u, v))) {
            return Some(format!("pull-back {back:?} vs enumeration {direct:?}"));
        }
        None
    })
}

fn gcd_suite() -> CheckResult {
    run("gcd_identities", symmetric(PROPERTY_BOUND), |&x| {
        let x = x as i128;
        let minus = gcd(x - 1, x * x + x + 1) == gcd(x - 1, 3);
        let plus = gcd(x + 1, x * x - x + 1) == gcd(x + 1, 3);
        (!(minus && plus)).then(|| format!("x = {x}"))
    })
}

fn no_33_suite() -> CheckResult {
    run("gcd_pair_never_3_3", symmetric(PROPERTY_BOUND), |&x| {
        let x = x as i128;
        (gcd(x - 1, x * x + x + 1) == 3 && gcd(x + 1, x * x - x + 1) == 3).then(|| format!("x = {x}"))
    })
}

fn two_mod_three() -> Vec<i64> {
    symmetric(PROPERTY_BOUND).into_iter().filter(|x| x.rem_euclid(3) == 2 && *x != -1).collect()
}

fn quadratic_v3_suite() -> CheckResult {
    run("v3_quadratic_is_one", two_mod_three(), |&x| {
        let x = x as i128;
        (valuation(3, x * x - x + 1).ok() != Some(1)).then(|| format!("x = {x}"))
    })
}

fn lte_suite() -> CheckResult {
    run("lte_v3_identity", two_mod_three(), |&x| match lte_v3_check(x) {
        Ok(r) if r.identity_holds => None,
        Ok(r) => Some(format!("{r:?}")),
        Err(e) => Some(format!("x = {x}: {e}")),
    })
}

fn cube_diff_suite() -> CheckResult {
    run("cube_difference_sets", vec![1i128, 2], |&d| {
        let mut brute = Vec::new();
        for u in -1000i128..=1000 {
            for v in -1000i128..=1000 {
                if u.pow(3) - v.pow(3) == d {
                    brute.push((u, v));
                }
            }
        }
        match cube_diff_solutions(d) {
            Ok(sol) if sol == brute => None,
            Ok(sol) => Some(format!("d = {d}: {sol:?} vs brute force {brute:?}")),
            Err(e) => Some(e.to_string()),
        }
    })
}

fn trace_suite() -> CheckResult {
    let xs: Vec<i64> = symmetric(2_000).into_iter().filter(|x| x.abs() > 1).collect();
    run("case_trace_consistency", xs, |&x| match trace_case(x) {
        Ok(t) if t.consistent && !t.verdict.is_counterexample() => None,
        Ok(t) => Some(format!("x = {x}: verdict {:?}, consistent {}", t.verdict, t.consistent)),
        Err(e) => Some(format!("x = {x}: {e}")),
    })
}

/// Runs every suite.
pub fn verify_lemmas() -> VerifyReport {
    use QuadSign::{Minus, Plus};
    let checks = vec![
        split_suite(),
        quad_suite("quadcubic_k3_sets", CubeCoeff::Three, [(Plus, &[-2, 1]), (Minus, &[-1, 2])]),
        quad_suite("quadcubic_k1_sets", CubeCoeff::One, [(Plus, &[-19, -1, 0, 18]), (Minus, &[-18, 0, 1, 19])]),
        mordell_suite(),
        gcd_suite(),
        no_33_suite(),
        quadratic_v3_suite(),
        lte_suite(),
        cube_diff_suite(),
        trace_suite(),
    ];
    let all_passed = checks.iter().all(CheckResult::passed);
    VerifyReport { checks, all_passed }
}
