mod common;

use common::{factor_with, spf_sieve};
use proptest::prelude::*;
use ptl_core::powerful::{consecutive_runs, decompose_powerful, is_powerful, powerful_up_to};

fn oracle_powerful(limit: usize) -> Vec<u64> {
    let spf = spf_sieve(limit);
    (1..=limit).filter(|&n| factor_with(&spf, n).iter().all(|&(_, e)| e >= 2)).map(|n| n as u64).collect()
}

#[test]
fn generation_matches_factorization_oracle() {
    assert_eq!(powerful_up_to(1_000_000).unwrap(), oracle_powerful(1_000_000));
}

#[test]
fn count_to_one_hundred() {
    let brute = (1..=100u64).filter(|&n| oracle_powerful(100).contains(&n)).count();
    assert_eq!(powerful_up_to(100).unwrap().len(), brute);
    assert_eq!(brute, 14);
}

#[test]
fn decomposition_is_unique_below_ten_thousand() {
    for n in powerful_up_to(10_000).unwrap() {
        let n = n as i128;
        let d = decompose_powerful(n).unwrap();
        assert_eq!(d.reconstruct(), n);
        // every (a, b) with a²b³ = n and b squarefree
        let mut found = Vec::new();
        for b in 1i128..=21 {
            let squarefree = (2..=b).all(|d| b % (d * d) != 0);
            if !squarefree || n % (b * b * b) != 0 {
                continue;
            }
            let rest = n / (b * b * b);
            let a = (rest as f64).sqrt().round() as i128;
            if a * a == rest {
                found.push((a, b));
            }
        }
        assert_eq!(found, vec![(d.a, d.b)], "n = {n}");
    }
}

#[test]
fn no_three_consecutive_below_one_million() {
    assert!(consecutive_runs(1_000_000, 3).unwrap().is_empty());
    assert_eq!(consecutive_runs(300, 2).unwrap(), vec![8, 288]);
    let list = oracle_powerful(100_000);
    let pairs: Vec<u64> = list.windows(2).filter(|w| w[1] == w[0] + 1).map(|w| w[0]).collect();
    assert_eq!(consecutive_runs(100_000, 2).unwrap(), pairs);
}

proptest! {
    #[test]
    fn a2b3_is_always_powerful(a in 1i128..100_000, b in 1i128..1_000) {
        let n = a * a * b * b * b;
        prop_assert!(is_powerful(n));
        let d = decompose_powerful(n).unwrap();
        prop_assert_eq!(d.reconstruct(), n);
        prop_assert!((2..=d.b.abs()).take_while(|k| k * k <= d.b.abs()).all(|k| d.b % (k * k) != 0));
    }

    #[test]
    fn sign_goes_to_b(n in prop::sample::select(powerful_up_to(5_000).unwrap())) {
        let d = decompose_powerful(-(n as i128)).unwrap();
        prop_assert!(d.b < 0);
        prop_assert_eq!(d.reconstruct(), -(n as i128));
    }
}
