use std::sync::LazyLock;

use serde::Serialize;

use super::classify::{p2a3_from, FormOutcome, RejectReason};
use super::congruence::{gcd_pair, lte_v3_check, xmod9_filter, GcdPair, LteRecord};
use super::MAX_THEOREM_X;
use crate::arith::{factor, is_perfect_cube, valuation, Factorization};
use crate::diophantine::{cube_diff_solutions, solve_quad_cubic, split_shapes, CubeCoeff, QuadSign, SplitShape};
use crate::{Error, Result};

/// Bound used when the lemma solution sets are enumerated for the trace.
const LEMMA_BOUND: i128 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseLabel {
    /// `(g₋, g₊) = (1, 1)`, `x ≡ 0 (mod 3)`.
    Case1,
    /// `(g₋, g₊) = (1, 3)`, `x ≡ 2 (mod 3)`.
    Case2,
    /// `(g₋, g₊) = (3, 1)`, `x ≡ 1 (mod 3)`.
    Case3,
}

impl CaseLabel {
    fn from_pair(pair: &GcdPair) -> CaseLabel {
        match (pair.g_minus, pair.g_plus) {
            (1, 1) => CaseLabel::Case1,
            (1, 3) => CaseLabel::Case2,
            (3, 1) => CaseLabel::Case3,
            other => unreachable!("gcd pair {other:?} cannot occur"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Side {
    /// `x³ − 1`
    Minus,
    /// `x³ + 1`
    Plus,
}

/// `x³ ∓ 1` with its factorization, `p²·a³` outcome and, when a witness
/// exists, the shape of the split `(x ∓ 1)·(x² ± x + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideClassification {
    pub value: i128,
    pub factorization: String,
    pub outcome: FormOutcome,
    pub split: Option<SplitShape>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceFacts {
    pub x_mod_3: i64,
    pub x_mod_9: i64,
    pub v3_x_minus_1: u32,
    pub v3_x_plus_1: u32,
    pub v3_x2_plus_x_plus_1: u32,
    pub v3_x2_minus_x_plus_1: u32,
    pub v3_x3_minus_1: u32,
    pub v3_x3_plus_1: u32,
    /// 3-adic record at the point the case logic is evaluated (`x` for
    /// CASE2, `−x` for CASE3).
    pub lte: Option<LteRecord>,
    /// `xmod9_filter` at the evaluation point.
    pub xmod9_pass: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Rejected { side: Side, reason: RejectReason },
    Counterexample,
}

impl Verdict {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, Verdict::Counterexample)
    }
}

/// One subcase of the casework.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub label: String,
    /// The subcase's defining shapes hold for this value, checked directly.
    pub hypothesis_holds: bool,
    /// First step of the subcase's argument that rules the value out.
    pub closed_by: Option<RejectReason>,
    pub steps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTrace {
    pub x: i64,
    pub gcd_pair: GcdPair,
    pub case_label: CaseLabel,
    /// CASE3 runs the CASE2 logic at `−x`.
    pub mirrored: bool,
    /// The value the branch logic is evaluated at.
    pub evaluated_at: i64,
    pub minus_side: SideClassification,
    pub plus_side: SideClassification,
    pub congruence_facts: CongruenceFacts,
    pub branches: Vec<Branch>,
    pub verdict: Verdict,
    /// No branch is closed while its hypothesis holds, and some hypothesis
    /// holds exactly when the verdict is COUNTEREXAMPLE.
    pub consistent: bool,
}

struct LemmaSets {
    /// `x` with `x − 1 = u³`, `x + 1 = s³`.
    cube_diff_x: Vec<i128>,
    /// `u` with `u² − u + 1 = v³`.
    minus_unit: Vec<i128>,
    /// `u` with `u² + u + 1 = v³`.
    plus_unit: Vec<i128>,
    /// `u` with `u² − u + 1 = 3v³`.
    minus_three: Vec<i128>,
}

static LEMMAS: LazyLock<LemmaSets> = LazyLock::new(|| {
    let u_set = |sign, coeff| {
        solve_quad_cubic(sign, coeff, LEMMA_BOUND, true).expect("lemma enumeration within bounds").u_values()
    };
    LemmaSets {
        cube_diff_x: cube_diff_solutions(2)
            .expect("d = 2 is supported")
            .into_iter()
            .map(|(_, u)| u.pow(3) + 1)
            .collect(),
        minus_unit: u_set(QuadSign::Minus, CubeCoeff::One),
        plus_unit: u_set(QuadSign::Plus, CubeCoeff::One),
        minus_three: u_set(QuadSign::Minus, CubeCoeff::Three),
    }
});

fn fmt_set(values: &[i128]) -> String {
    let items: Vec<String> = values.iter().map(i128::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

/// Accumulates the ordered steps of one branch.
struct BranchBuilder {
    label: &'static str,
    steps: Vec<String>,
    closed_by: Option<RejectReason>,
}

impl BranchBuilder {
    fn new(label: &'static str) -> Self {
        BranchBuilder { label, steps: Vec::new(), closed_by: None }
    }

    fn note(&mut self, text: String) {
        self.steps.push(text);
    }

    /// Records a step; the first failing step closes the branch.
    fn step(&mut self, text: String, failure: Option<RejectReason>) {
        match failure {
            None => self.steps.push(format!("{text}: holds")),
            Some(reason) => {
                self.steps.push(format!("{text}: fails ({reason})"));
                self.closed_by.get_or_insert(reason);
            }
        }
    }

    fn finish(self, hypothesis_holds: bool) -> Branch {
        Branch { label: self.label.to_string(), hypothesis_holds, closed_by: self.closed_by, steps: self.steps }
    }
}

fn cube_failure(n: i128) -> Option<RejectReason> {
    match is_perfect_cube(n) {
        Some(_) => None,
        None => Some(RejectReason::WrongExponentPattern),
    }
}

fn p2a3_failure(n: i128) -> Result<Option<RejectReason>> {
    Ok(p2a3_outcome(n)?.reason())
}

fn p2a3_outcome(n: i128) -> Result<FormOutcome> {
    if n == 0 {
        return Ok(FormOutcome::Rejected(RejectReason::Degenerate));
    }
    Ok(p2a3_from(n, &factor(n)?))
}

fn member_failure(x: i128, set: &[i128], reason: RejectReason) -> Option<RejectReason> {
    if set.contains(&x) {
        None
    } else {
        Some(reason)
    }
}

/// The four quantities `x − 1`, `x² + x + 1`, `x + 1`, `x² − x + 1`.
struct Pieces {
    x: i128,
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

impl Pieces {
    fn at(x: i128) -> Pieces {
        Pieces { x, a: x - 1, b: x * x + x + 1, c: x + 1, d: x * x - x + 1 }
    }
}

fn case1_branches(p: &Pieces) -> Result<Vec<Branch>> {
    let lemmas = &*LEMMAS;
    let x = p.x;
    let both = |l: &[i128], r: &[i128]| -> Vec<i128> { l.iter().copied().filter(|v| r.contains(v)).collect() };
    let mut out = Vec::with_capacity(4);

    let hyp_i = cube_failure(p.a).is_none() && p2a3_failure(p.b)?.is_none();
    let hyp_ii = p2a3_failure(p.a)?.is_none() && cube_failure(p.b).is_none();
    let hyp_a = cube_failure(p.c).is_none() && p2a3_failure(p.d)?.is_none();
    let hyp_b = p2a3_failure(p.c)?.is_none() && cube_failure(p.d).is_none();

    let mut br = BranchBuilder::new("(i)+(a)");
    br.note(format!("x − 1 = u³ and x + 1 = s³ give s³ − u³ = 2, so x ∈ {}", fmt_set(&lemmas.cube_diff_x)));
    br.step(
        format!("x = {x} in that set"),
        member_failure(x, &lemmas.cube_diff_x, RejectReason::CubeDiffContradiction),
    );
    br.step(format!("x² + x + 1 = {} is p²·v³", p.b), p2a3_failure(p.b)?);
    br.step(format!("x² − x + 1 = {} is q²·t³", p.d), p2a3_failure(p.d)?);
    out.push(br.finish(hyp_i && hyp_a));

    let mut br = BranchBuilder::new("(i)+(b)");
    br.note(format!("x² − x + 1 = t³ forces x ∈ {}", fmt_set(&lemmas.minus_unit)));
    br.step(format!("x = {x} in that set"), member_failure(x, &lemmas.minus_unit, RejectReason::WrongExponentPattern));
    br.step(format!("x + 1 = {} is q²·s³", p.c), p2a3_failure(p.c)?);
    br.step(format!("x − 1 = {} is a cube", p.a), cube_failure(p.a));
    br.step(format!("x² + x + 1 = {} is p²·v³", p.b), p2a3_failure(p.b)?);
    out.push(br.finish(hyp_i && hyp_b));

    let mut br = BranchBuilder::new("(ii)+(a)");
    br.note(format!("x² + x + 1 = v³ forces x ∈ {}", fmt_set(&lemmas.plus_unit)));
    br.step(format!("x = {x} in that set"), member_failure(x, &lemmas.plus_unit, RejectReason::WrongExponentPattern));
    br.step(format!("x − 1 = {} is p²·u³", p.a), p2a3_failure(p.a)?);
    br.step(format!("x + 1 = {} is a cube", p.c), cube_failure(p.c));
    br.step(format!("x² − x + 1 = {} is q²·t³", p.d), p2a3_failure(p.d)?);
    out.push(br.finish(hyp_ii && hyp_a));

    let common = both(&lemmas.plus_unit, &lemmas.minus_unit);
    let mut br = BranchBuilder::new("(ii)+(b)");
    br.note(format!("x² + x + 1 and x² − x + 1 both cubes forces x ∈ {}", fmt_set(&common)));
    br.step(format!("x = {x} in that set"), member_failure(x, &common, RejectReason::WrongExponentPattern));
    br.step(format!("x + 1 = {} is q²·s³", p.c), p2a3_failure(p.c)?);
    br.step(format!("x − 1 = {} is p²·u³", p.a), p2a3_failure(p.a)?);
    out.push(br.finish(hyp_ii && hyp_b));

    Ok(out)
}

/// Case 2 logic evaluated at `y ≡ 2 (mod 3)`.
fn case2_branches(p: &Pieces) -> Result<Vec<Branch>> {
    let lemmas = &*LEMMAS;
    let y = p.x;
    let minus = p2a3_outcome(p.a * p.b)?;
    let plus = p2a3_outcome(p.c * p.d)?;
    let plus_prime = plus.witness().map(|w| w.primes[0]);
    let mut out = Vec::with_capacity(3);

    let mut br = BranchBuilder::new("q = 3");
    br.note(format!("y² − y + 1 = 3s³ forces y ∈ {}", fmt_set(&lemmas.minus_three)));
    br.step(format!("y = {y} in that set"), member_failure(y, &lemmas.minus_three, RejectReason::WrongExponentPattern));
    let q3 = match (&plus, plus_prime) {
        (FormOutcome::Rejected(r), _) => Some(*r),
        (_, Some(3)) => None,
        _ => Some(RejectReason::WrongExponentPattern),
    };
    br.step(format!("y³ + 1 = {} is 3²·b³", p.c * p.d), q3);
    br.step(format!("y³ − 1 = {} is p²·a³", p.a * p.b), minus.reason());
    out.push(br.finish(q3.is_none() && minus.witness().is_some()));

    let q_not_3 = match (&plus, plus_prime) {
        (FormOutcome::Rejected(r), _) => Some(*r),
        (_, Some(3)) => Some(RejectReason::WrongExponentPattern),
        _ => None,
    };
    let mod9 = if xmod9_filter(y as i64) { None } else { Some(RejectReason::CongruenceFiltered) };
    let identity = "v₃(y + 1) = v₃((y³ + 1)/(y² − y + 1)) ≥ 2 gives y ≡ −1 (mod 9)".to_string();

    let mut br = BranchBuilder::new("q ≠ 3 (i)");
    br.note(identity.clone());
    br.step(format!("y = {y} ≡ −1 (mod 9)"), mod9);
    let residue = p.a.rem_euclid(9);
    let cube_residue = if [0, 1, 8].contains(&residue) { None } else { Some(RejectReason::CongruenceFiltered) };
    br.step(format!("y − 1 ≡ {residue} (mod 9) is a cube residue"), cube_residue);
    br.step(format!("y − 1 = {} is a cube", p.a), cube_failure(p.a));
    br.step(format!("y² + y + 1 = {} is p²·v³", p.b), p2a3_failure(p.b)?);
    br.step(format!("y³ + 1 = {} is q²·b³ with q ≠ 3", p.c * p.d), q_not_3);
    let hyp = q_not_3.is_none() && cube_failure(p.a).is_none() && p2a3_failure(p.b)?.is_none();
    out.push(br.finish(hyp));

    let mut br = BranchBuilder::new("q ≠ 3 (ii)");
    br.note(identity);
    br.step(format!("y = {y} ≡ −1 (mod 9)"), mod9);
    br.note(format!("y² + y + 1 = v³ forces y ∈ {}", fmt_set(&lemmas.plus_unit)));
    br.step(format!("y = {y} in that set"), member_failure(y, &lemmas.plus_unit, RejectReason::WrongExponentPattern));
    br.step(format!("y − 1 = {} is p²·u³", p.a), p2a3_failure(p.a)?);
    br.step(format!("y³ + 1 = {} is q²·b³ with q ≠ 3", p.c * p.d), q_not_3);
    let hyp = q_not_3.is_none() && p2a3_failure(p.a)?.is_none() && cube_failure(p.b).is_none();
    out.push(br.finish(hyp));

    Ok(out)
}

fn classify_side(r: i128, s: i128) -> Result<SideClassification> {
    let f: Factorization = factor(r)?.mul(&factor(s)?);
    let value = r * s;
    let outcome = p2a3_from(value, &f);
    let split = match outcome.witness() {
        Some(w) => Some(split_shapes(r, s, w.primes[0])?),
        None => None,
    };
    Ok(SideClassification { value, factorization: f.to_string(), outcome, split })
}

fn verdict(minus: &SideClassification, plus: &SideClassification) -> Verdict {
    if let Some(reason) = minus.outcome.reason() {
        Verdict::Rejected { side: Side::Minus, reason }
    } else if let Some(reason) = plus.outcome.reason() {
        Verdict::Rejected { side: Side::Plus, reason }
    } else {
        Verdict::Counterexample
    }
}

/// Runs the casework for one `x ∉ {−1, 0, 1}` and reports where it stops.
pub fn trace_case(x: i64) -> Result<CaseTrace> {
    if (-1..=1).contains(&x) {
        return Err(Error::domain(format!("x = {x} is degenerate: x³ − 1 or x³ + 1 has no p²·a³ form")));
    }
    if x.unsigned_abs() > MAX_THEOREM_X as u64 {
        return Err(Error::RangeOverflow { what: "|x| (x³ ± 1 must fit in 128 bits)", max: MAX_THEOREM_X as i128 });
    }
    let pair = gcd_pair(x);
    let case_label = CaseLabel::from_pair(&pair);
    let (mirrored, evaluated_at) = match case_label {
        CaseLabel::Case3 => (true, -x),
        _ => (false, x),
    };

    let here = Pieces::at(x as i128);
    let minus_side = classify_side(here.a, here.b)?;
    let plus_side = classify_side(here.c, here.d)?;

    let v3 = |n: i128| valuation(3, n);
    let congruence_facts = CongruenceFacts {
        x_mod_3: x.rem_euclid(3),
        x_mod_9: x.rem_euclid(9),
        v3_x_minus_1: v3(here.a)?,
        v3_x_plus_1: v3(here.c)?,
        v3_x2_plus_x_plus_1: v3(here.b)?,
        v3_x2_minus_x_plus_1: v3(here.d)?,
        v3_x3_minus_1: v3(minus_side.value)?,
        v3_x3_plus_1: v3(plus_side.value)?,
        lte: match case_label {
            CaseLabel::Case1 => None,
            _ => Some(lte_v3_check(evaluated_at)?),
        },
        xmod9_pass: match case_label {
            CaseLabel::Case1 => None,
            _ => Some(xmod9_filter(evaluated_at)),
        },
    };

    let branches = match case_label {
        CaseLabel::Case1 => case1_branches(&here)?,
        _ => case2_branches(&Pieces::at(evaluated_at as i128))?,
    };

    let verdict = verdict(&minus_side, &plus_side);
    let no_closed_hypothesis = branches.iter().all(|b| !(b.hypothesis_holds && b.closed_by.is_some()));
    let any_hypothesis = branches.iter().any(|b| b.hypothesis_holds);
    let consistent = no_closed_hypothesis && any_hypothesis == verdict.is_counterexample();

    Ok(CaseTrace {
        x,
        gcd_pair: pair,
        case_label,
        mirrored,
        evaluated_at,
        minus_side,
        plus_side,
        congruence_facts,
        branches,
        verdict,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case1_example() {
        let t = trace_case(3).unwrap();
        assert_eq!(t.case_label, CaseLabel::Case1);
        assert_eq!(t.minus_side.value, 26);
        assert_eq!(t.minus_side.factorization, "2 * 13");
        assert_eq!(t.verdict, Verdict::Rejected { side: Side::Minus, reason: RejectReason::WrongExponentPattern });
        assert_eq!(t.branches.len(), 4);
        assert_eq!(t.branches[0].closed_by, Some(RejectReason::CubeDiffContradiction));
        assert!(t.consistent);
        assert!(t.congruence_facts.lte.is_none());
    }

    #[test]
    fn case2_example() {
        let t = trace_case(8).unwrap();
        assert_eq!(t.case_label, CaseLabel::Case2);
        assert_eq!(t.minus_side.value, 511);
        assert_eq!(t.minus_side.factorization, "7 * 73");
        assert_eq!(t.congruence_facts.xmod9_pass, Some(true));
        assert_eq!(t.congruence_facts.lte.unwrap().v3_x_plus_1, 2);
        assert_eq!(t.verdict, Verdict::Rejected { side: Side::Minus, reason: RejectReason::WrongExponentPattern });
        assert!(!t.mirrored);
        assert!(t.consistent);
        // q ≠ 3 (i) passes the mod-9 filter and dies on the cube residue of y − 1
        assert_eq!(t.branches[1].closed_by, Some(RejectReason::CongruenceFiltered));
    }

    #[test]
    fn case3_mirrors_case2() {
        let t = trace_case(4).unwrap();
        let m = trace_case(-4).unwrap();
        assert_eq!(t.case_label, CaseLabel::Case3);
        assert_eq!(m.case_label, CaseLabel::Case2);
        assert!(t.mirrored);
        assert_eq!(t.evaluated_at, -4);
        assert_eq!(t.branches, m.branches);
        assert_eq!(t.congruence_facts.lte, m.congruence_facts.lte);
        assert!(t.consistent && m.consistent);
    }

    #[test]
    fn special_value_walks_deeper() {
        // 19² − 19 + 1 = 343 = 7³ but 19 ≡ 1 (mod 3); -18 is the Case 1 member
        let t = trace_case(-18).unwrap();
        let b = &t.branches[1];
        assert_eq!(b.label, "(i)+(b)");
        assert_eq!(b.closed_by, Some(RejectReason::WrongExponentPattern));
        assert!(b.steps[1].ends_with("holds"));
        assert!(t.consistent);
        // y = −19 in Case 2 survives the mod-9 filter and the Mordell set
        let t = trace_case(-19).unwrap();
        let b = &t.branches[2];
        assert!(b.steps.iter().filter(|s| s.ends_with("holds")).count() >= 2);
        assert_eq!(b.closed_by, Some(RejectReason::WrongExponentPattern));
    }

    #[test]
    fn plus_side_split_recorded() {
        // 2³ + 1 = 9 = 3²·1³ splits as (3, 3) with g = 3
        let t = trace_case(2).unwrap();
        assert!(t.plus_side.outcome.witness().is_some());
        let split = t.plus_side.split.as_ref().unwrap();
        assert_eq!((split.r, split.s, split.g), (3, 3, 3));
        assert_eq!(t.verdict, Verdict::Rejected { side: Side::Minus, reason: RejectReason::WrongExponentPattern });
    }

    #[test]
    fn degenerate_rejected() {
        for x in -1..=1 {
            assert!(matches!(trace_case(x), Err(Error::Domain(_))));
        }
        assert!(matches!(trace_case(i64::MAX), Err(Error::RangeOverflow { .. })));
    }

    #[test]
    fn traces_consistent_on_small_range() {
        for x in (-500..=500).filter(|x: &i64| x.abs() > 1) {
            assert!(trace_case(x).unwrap().consistent, "x = {x}");
        }
    }
}
