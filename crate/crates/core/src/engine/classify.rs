use std::fmt;

use serde::Serialize;

use crate::arith::{factor, Factorization};
use crate::{Error, Result};

/// Why a candidate fails to be a counterexample. The set is closed so
/// statistics and golden reports stay stable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RejectReason {
    /// Some prime exponent cannot be split into the required square and cube parts.
    WrongExponentPattern,
    /// The value is a cube (up to sign), so no prime is left for the square slot(s).
    NoPrimeSlot,
    /// Ruled out by a residue condition modulo 9.
    CongruenceFiltered,
    /// Ruled out by the solutions of `u³ − v³ = d`.
    CubeDiffContradiction,
    /// `x ∈ {−1, 0, 1}` (or `x = 0` for the corollary).
    Degenerate,
}

impl RejectReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectReason::WrongExponentPattern => "WRONG_EXPONENT_PATTERN",
            RejectReason::NoPrimeSlot => "NO_PRIME_SLOT",
            RejectReason::CongruenceFiltered => "CONGRUENCE_FILTERED",
            RejectReason::CubeDiffContradiction => "CUBE_DIFF_CONTRADICTION",
            RejectReason::Degenerate => "DEGENERATE",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exhibits `m = p²·a³` (one prime) or `m = p²·q²·a³` (two primes, `p ≤ q`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FormWitness {
    pub m: i128,
    pub primes: Vec<i128>,
    pub a: i128,
}

impl FormWitness {
    /// `∏ p² · a³`, or `None` on overflow.
    pub fn reconstruct(&self) -> Option<i128> {
        let mut acc = self.a.checked_pow(3)?;
        for &p in &self.primes {
            acc = acc.checked_mul(p.checked_mul(p)?)?;
        }
        Some(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormOutcome {
    Witness(FormWitness),
    Rejected(RejectReason),
}

impl FormOutcome {
    pub fn witness(&self) -> Option<&FormWitness> {
        match self {
            FormOutcome::Witness(w) => Some(w),
            FormOutcome::Rejected(_) => None,
        }
    }

    pub fn reason(&self) -> Option<RejectReason> {
        match self {
            FormOutcome::Witness(_) => None,
            FormOutcome::Rejected(r) => Some(*r),
        }
    }

    pub fn into_option(self) -> Option<FormWitness> {
        match self {
            FormOutcome::Witness(w) => Some(w),
            FormOutcome::Rejected(_) => None,
        }
    }
}

/// Cofactor `a` once the listed prime slots are removed: each remaining
/// exponent must be a multiple of three.
fn cube_part(f: &Factorization, slots: &[(i128, u32)]) -> i128 {
    let mut a: i128 = f.sign().into();
    for pp in f.iter() {
        let used = slots.iter().find(|s| s.0 == pp.prime).map_or(0, |s| s.1);
        debug_assert_eq!((pp.exp - used) % 3, 0);
        a *= pp.prime.pow((pp.exp - used) / 3);
    }
    a
}

fn checked(m: i128, w: FormWitness) -> FormOutcome {
    assert_eq!(w.reconstruct(), Some(m), "form witness must reconstruct {m}");
    FormOutcome::Witness(w)
}

/// `p²·a³` classification from a known factorization of `m`.
pub(crate) fn p2a3_from(m: i128, f: &Factorization) -> FormOutcome {
    let mut slot = None;
    for pp in f.iter() {
        match pp.exp % 3 {
            0 => {}
            2 if slot.is_none() => slot = Some(pp.prime),
            _ => return FormOutcome::Rejected(RejectReason::WrongExponentPattern),
        }
    }
    let Some(p) = slot else {
        return FormOutcome::Rejected(RejectReason::NoPrimeSlot);
    };
    let a = cube_part(f, &[(p, 2)]);
    checked(m, FormWitness { m, primes: vec![p], a })
}

/// `p²·q²·a³` classification from a known factorization of `m`, with `p = q`
/// allowed.
pub(crate) fn p2q2a3_from(m: i128, f: &Factorization) -> FormOutcome {
    let mut twos = Vec::new();
    let mut ones = Vec::new();
    for pp in f.iter() {
        match pp.exp % 3 {
            0 => {}
            1 => ones.push(pp),
            _ => twos.push(pp),
        }
    }
    match (twos.as_slice(), ones.as_slice()) {
        ([], []) => FormOutcome::Rejected(RejectReason::NoPrimeSlot),
        // a lone p²·a³ pattern leaves the q slot empty
        ([_], []) => FormOutcome::Rejected(RejectReason::NoPrimeSlot),
        ([p, q], []) => {
            let a = cube_part(f, &[(p.prime, 2), (q.prime, 2)]);
            checked(m, FormWitness { m, primes: vec![p.prime, q.prime], a })
        }
        ([], [p]) if p.exp >= 4 => {
            let a = cube_part(f, &[(p.prime, 4)]);
            checked(m, FormWitness { m, primes: vec![p.prime, p.prime], a })
        }
        _ => FormOutcome::Rejected(RejectReason::WrongExponentPattern),
    }
}

/// Full outcome (witness or rejection reason) for `m = p²·a³`.
pub fn assess_p2a3(m: i128) -> Result<FormOutcome> {
    if m == 0 {
        return Err(Error::domain("0 has no p²·a³ witness with a ≠ 0"));
    }
    Ok(p2a3_from(m, &factor(m)?))
}

/// Full outcome (witness or rejection reason) for `m = p²·q²·a³`.
pub fn assess_p2q2a3(m: i128) -> Result<FormOutcome> {
    if m == 0 {
        return Err(Error::domain("0 has no p²·q²·a³ witness with a ≠ 0"));
    }
    Ok(p2q2a3_from(m, &factor(m)?))
}

/// `Some(witness)` iff `m = p²·a³` with `p` prime and `a ≠ 0`.
///
/// Exactly one prime may carry an exponent `≡ 2 (mod 3)`, all others `≡ 0`;
/// the sign of `m` lands on `a`.
pub fn classify_p2a3(m: i128) -> Result<Option<FormWitness>> {
    assess_p2a3(m).map(FormOutcome::into_option)
}

/// `Some(witness)` iff `m = p²·q²·a³` with primes `p ≤ q` and `a ≠ 0`.
pub fn classify_p2q2a3(m: i128) -> Result<Option<FormWitness>> {
    assess_p2q2a3(m).map(FormOutcome::into_option)
}
