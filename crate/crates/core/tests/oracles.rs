//! Production search paths against naive full-scan references.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relieve_core::evalharness::knn_predict;
use relieve_core::redundancy::{redundancy_level, RedundancyOptions};
use relieve_core::relief::find_neighbors;

use common::naive::{full_sort, naive_redundancy, nearest_label, random_factors};
use common::{random_dataset, random_pdm, Shape};

#[test]
fn neighbor_search_matches_full_sort() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..200 {
        let d = random_dataset(&mut rng, &Shape::default());
        let k = rng.random_range(1..=6);
        let factors = rng.random_bool(0.5).then(|| random_factors(&mut rng, d.n_features()));
        for q in 0..d.n_instances() {
            let got = find_neighbors(&d, q, k, factors.as_deref()).unwrap();
            let sorted = full_sort(&d, q, factors.as_deref());
            let own = d.label(q);
            let hits: Vec<usize> = sorted.iter().copied().filter(|&j| d.label(j) == own).take(k).collect();
            assert_eq!(got.hits, hits, "case {case}, query {q}");
            for c in (0..d.n_classes()).filter(|&c| c != own) {
                let misses: Vec<usize> =
                    sorted.iter().copied().filter(|&j| d.label(j) == c).take(k).collect();
                assert_eq!(
                    got.misses.get(&c).cloned().unwrap_or_default(),
                    misses,
                    "case {case}, query {q}, class {c}"
                );
            }
        }
    }
}

#[test]
fn one_nn_matches_naive_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..200 {
        let d = random_dataset(&mut rng, &Shape::default());
        let n = d.n_instances();
        let train: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.7)).collect();
        if train.is_empty() {
            continue;
        }
        let factors = rng.random_bool(0.5).then(|| random_factors(&mut rng, d.n_features()));
        for q in 0..n {
            let expected = nearest_label(&d, &train, q, factors.as_deref());
            let got = knn_predict(&d, &train, q, factors.as_deref()).unwrap();
            assert_eq!(got, expected, "case {case}, query {q}");
        }
    }
}

#[test]
fn redundancy_matches_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for case in 0..120 {
        let nv = rng.random_range(2..=6);
        let cards: Vec<usize> = (0..nv).map(|_| rng.random_range(2..=3)).collect();
        let sparsity = rng.random_range(0.0..0.6);
        let pdm = random_pdm(&mut rng, &cards, sparsity);
        let alpha = rng.random_range(0..nv);
        let universe: Vec<usize> = (0..nv)
            .filter(|&v| v == alpha || rng.random_bool(0.8))
            .collect();
        if universe.len() < 2 {
            continue;
        }
        let names: Vec<&str> = universe.iter().map(|&v| pdm.variables()[v].as_str()).collect();
        let got = redundancy_level(
            &pdm,
            &pdm.variables()[alpha],
            Some(&names),
            &RedundancyOptions::default(),
        )
        .unwrap();
        let (level, subset) = naive_redundancy(&pdm, alpha, &universe);
        assert!(
            (got.level - level).abs() <= 1e-12,
            "case {case}: {} vs {level}",
            got.level
        );
        let subset: Vec<String> = subset.iter().map(|&v| pdm.variables()[v].clone()).collect();
        assert_eq!(got.best_subset, subset, "case {case}");
    }
}
