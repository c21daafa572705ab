use std::collections::HashSet;

use homogeo::combinatorics::{
    family_to_hadamard, hadamard_to_family, is_hadamard, max_orthogonal_tuples,
    orthogonal_pair_count, sylvester, Budget, Maximality, MaximalityProof, SearchOptions,
    SignTuple,
};
use proptest::prelude::*;

/// Largest orthogonal family (capped at `limit`) over all `2^k` tuples, by
/// plain enumeration without any normalisation.
fn brute_force_max(k: usize, limit: usize) -> usize {
    let all: Vec<Vec<i64>> = (0..1u32 << k)
        .map(|m| (0..k).map(|j| if m >> j & 1 == 1 { -1 } else { 1 }).collect())
        .collect();
    let dot = |u: &[i64], v: &[i64]| -> i64 { u.iter().zip(v).map(|(a, b)| a * b).sum() };
    let mut best = 1;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if dot(&all[i], &all[j]) != 0 {
                continue;
            }
            best = best.max(2);
            if limit < 3 {
                continue;
            }
            for l in j + 1..all.len() {
                if dot(&all[i], &all[l]) == 0 && dot(&all[j], &all[l]) == 0 {
                    best = 3;
                }
            }
        }
    }
    best.min(limit)
}

#[test]
fn canonical_search_matches_unrestricted_enumeration() {
    for k in 1..=6 {
        let out = max_orthogonal_tuples(k, &SearchOptions::default()).unwrap();
        assert_eq!(out.family.len().min(3), brute_force_max(k, 3), "k = {k}");
    }
}

#[test]
fn odd_lengths_admit_no_orthogonal_pair() {
    for k in [3, 5, 7, 9, 11] {
        assert_eq!(orthogonal_pair_count(k, 1), 0, "k = {k}");
    }
}

#[test]
fn twice_odd_lengths_cap_at_two() {
    for k in [2, 6, 10] {
        let out = max_orthogonal_tuples(k, &SearchOptions::default()).unwrap();
        assert_eq!(out.family.len(), 2);
        assert_eq!(out.family.maximality(), Maximality::Certified);
        assert_eq!(out.family.proof(), Some(MaximalityProof::ExhaustiveSearch));
    }
}

#[test]
fn full_families_give_hadamard_matrices() {
    for k in [4, 8, 12] {
        let out = max_orthogonal_tuples(k, &SearchOptions::default()).unwrap();
        assert_eq!(out.family.len(), k);
        assert_eq!(out.family.maximality(), Maximality::Certified);
        assert!(is_hadamard(&family_to_hadamard(&out.family).unwrap()));
    }
}

#[test]
fn search_is_deterministic() {
    for k in [6, 8, 12] {
        let a = max_orthogonal_tuples(k, &SearchOptions::default()).unwrap();
        let b = max_orthogonal_tuples(k, &SearchOptions::default()).unwrap();
        let par = max_orthogonal_tuples(
            k,
            &SearchOptions {
                jobs: 3,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(a.family, b.family);
        assert_eq!(a.family, par.family);
    }
}

#[test]
fn exhausted_budget_is_a_lower_bound_when_unproven() {
    // k = 28 sits above the certification cap and has no construction here.
    let out = max_orthogonal_tuples(
        28,
        &SearchOptions {
            budget: Budget::nodes(10),
            ..SearchOptions::default()
        },
    )
    .unwrap();
    assert_eq!(out.family.maximality(), Maximality::LowerBoundOnly);
    assert!(out.family.len() >= 2);
    assert!(out.family.is_orthogonal());
}

#[test]
fn hadamard_family_round_trip() {
    let h = sylvester(2).unwrap();
    let fam = hadamard_to_family(&h).unwrap();
    assert_eq!(fam.len(), 4);
    let distinct: HashSet<_> = fam.members().iter().collect();
    assert_eq!(distinct.len(), 4);
    assert!(is_hadamard(&family_to_hadamard(&fam).unwrap()));
}

proptest! {
    #[test]
    fn dot_parity_and_range(k in 1usize..=100, seed_a in any::<u128>(), seed_b in any::<u128>()) {
        let signs = |s: u128| (0..k).map(move |i| if (s >> (i % 128)) & 1 == 1 { -1i64 } else { 1 });
        let u = SignTuple::from_signs(signs(seed_a)).unwrap();
        let v = SignTuple::from_signs(signs(seed_b)).unwrap();
        let d = u.dot(&v).unwrap();
        prop_assert!(d.abs() <= k as i64);
        prop_assert_eq!(d.rem_euclid(2), (k as i64).rem_euclid(2));
        let naive: i64 = u.signs().iter().zip(v.signs()).map(|(a, b)| i64::from(a * b)).sum();
        prop_assert_eq!(d, naive);
    }
}
