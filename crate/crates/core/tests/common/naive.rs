//! Brute-force references for neighbor search, 1-NN and redundancy level.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use relieve_core::datamodel::Cell;
use relieve_core::probstats::EmpiricalPDM;
use relieve_core::redundancy::{DEFAULT_TOLERANCE, TIE_EPSILON};
use relieve_core::Dataset;

use super::LINEAR_MAX;

pub fn naive_diff(d: &Dataset, a: usize, i: usize, j: usize) -> f64 {
    match (d.cell(i, a), d.cell(j, a)) {
        (Cell::Symbol(x), Cell::Symbol(y)) => f64::from(u8::from(x != y)),
        (Cell::Number(x), Cell::Number(y)) => ((x - y) / LINEAR_MAX).abs(),
        _ => 1.0,
    }
}

pub fn naive_distance(d: &Dataset, i: usize, j: usize, factors: Option<&[f64]>) -> f64 {
    (0..d.n_features())
        .map(|a| factors.map_or(1.0, |w| w[a]) * naive_diff(d, a, i, j))
        .sum()
}

/// Every other instance sorted by `(distance, index)`.
pub fn full_sort(d: &Dataset, q: usize, factors: Option<&[f64]>) -> Vec<usize> {
    let mut all: Vec<(f64, usize)> = (0..d.n_instances())
        .filter(|&j| j != q)
        .map(|j| (naive_distance(d, q, j, factors), j))
        .collect();
    all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    all.into_iter().map(|(_, j)| j).collect()
}

pub fn random_factors(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| [0.0, 0.5, 1.0, 2.0][rng.random_range(0..4)]).collect()
}

/// `P(alpha = a | vars = values of r)` by summing over the full support.
pub fn conditional(pdm: &EmpiricalPDM, alpha: usize, a: usize, vars: &[usize], r: &[usize]) -> f64 {
    let mut joint = 0.0;
    let mut marginal = 0.0;
    for (config, &p) in pdm.support() {
        if vars.iter().all(|&v| config[v] == r[v]) {
            marginal += p;
            if config[alpha] == a {
                joint += p;
            }
        }
    }
    joint / marginal
}

pub fn subsets_by_size(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in subsets_by_size(&items[i + 1..], size - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Level and best subset by direct enumeration over subsets, configurations
/// and alpha values.
pub fn naive_redundancy(pdm: &EmpiricalPDM, alpha: usize, universe: &[usize]) -> (f64, Vec<usize>) {
    let others: Vec<usize> = universe.iter().copied().filter(|&v| v != alpha).collect();
    let mut configs: Vec<Vec<usize>> = Vec::new();
    for config in pdm.support().keys() {
        let mut r = config.clone();
        for v in 0..r.len() {
            if !others.contains(&v) {
                r[v] = usize::MAX;
            }
        }
        if !configs.contains(&r) {
            configs.push(r);
        }
    }
    let alpha_card = pdm.values(alpha).len();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for size in 0..others.len() {
        for s in subsets_by_size(&others, size) {
            let mut total = 0.0;
            for r in &configs {
                for a in 0..alpha_card {
                    total += (conditional(pdm, alpha, a, &s, r)
                        - conditional(pdm, alpha, a, &others, r))
                    .abs();
                }
            }
            let disc = total / (configs.len() * alpha_card) as f64;
            if best.as_ref().is_none_or(|b| disc < b.0 - TIE_EPSILON) {
                best = Some((disc, s));
            }
        }
        if best.as_ref().is_some_and(|b| b.0 <= DEFAULT_TOLERANCE) {
            return (1.0, best.unwrap().1);
        }
    }
    let (disc, s) = best.unwrap();
    (1.0 - disc, s)
}


/// Label of the nearest training instance by a full sort.
pub fn nearest_label(d: &Dataset, train: &[usize], q: usize, factors: Option<&[f64]>) -> usize {
    let mut scored: Vec<(f64, usize)> = train
        .iter()
        .map(|&j| (naive_distance(d, q, j, factors), j))
        .collect();
    scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    d.label(scored[0].1)
}
