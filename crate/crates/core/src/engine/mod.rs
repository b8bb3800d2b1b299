//! Form classifiers, gcd and 3-adic constraints, per-x case traces and
//! parallel range scans for the triplet `(x³ − 1, x³, x³ + 1)`.

mod classify;
mod congruence;
mod scan;
mod trace;

pub use classify::{
    assess_p2a3, assess_p2q2a3, classify_p2a3, classify_p2q2a3, FormOutcome, FormWitness, RejectReason,
};
pub use congruence::{gcd_pair, lte_v3_check, xmod9_filter, GcdPair, LteRecord};
pub use scan::{corollary_scan, theorem_scan, Counterexample, ScanKind, ScanOptions, ScanStatistics, SearchReport};
pub use trace::{trace_case, Branch, CaseLabel, CaseTrace, CongruenceFacts, Side, SideClassification, Verdict};

/// Largest `|x|` with `x³ ± 1` inside `i128`.
pub const MAX_THEOREM_X: i64 = 5_541_191_377_756;

/// Largest `|x|` with `(2x)⁶ ± 1` inside `i128`.
pub const MAX_COROLLARY_X: i64 = 1_176_986;
