//! Random inputs shared by the integration suites.

#![allow(dead_code)]

pub mod naive;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use relieve_core::datamodel::{Cell, FeatureSchema};
use relieve_core::probstats::EmpiricalPDM;
use relieve_core::Dataset;

/// Linear features take integer values in `0..=LINEAR_MAX` over the range
/// `[0, LINEAR_MAX]`, so every normalized difference is an exact dyadic
/// fraction and distance ties are exact.
pub const LINEAR_MAX: f64 = 4.0;

pub struct Shape {
    pub rows: std::ops::RangeInclusive<usize>,
    pub features: std::ops::RangeInclusive<usize>,
    pub classes: std::ops::RangeInclusive<usize>,
    pub missing: f64,
    pub linear: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            rows: 3..=50,
            features: 1..=5,
            classes: 2..=3,
            missing: 0.1,
            linear: 0.3,
        }
    }
}

/// Mixed nominal/linear dataset with at least two distinct class labels.
pub fn random_dataset(rng: &mut ChaCha8Rng, shape: &Shape) -> Dataset {
    let n = rng.random_range(shape.rows.clone());
    let nf = rng.random_range(shape.features.clone());
    let nc = rng.random_range(shape.classes.clone());
    let schema: Vec<FeatureSchema> = (0..nf)
        .map(|j| {
            if rng.random_bool(shape.linear) {
                FeatureSchema::linear(format!("f{j}"), 0.0, LINEAR_MAX)
            } else {
                let card = rng.random_range(2..=4);
                FeatureSchema::nominal(format!("f{j}"), (0..card).map(|v| v.to_string()).collect())
            }
        })
        .collect();
    let rows = (0..n)
        .map(|_| {
            schema
                .iter()
                .map(|f| {
                    if rng.random_bool(shape.missing) {
                        Cell::Missing
                    } else if let Some(card) = f.cardinality() {
                        Cell::Symbol(rng.random_range(0..card))
                    } else {
                        Cell::Number(rng.random_range(0..=LINEAR_MAX as u32) as f64)
                    }
                })
                .collect()
        })
        .collect();
    let mut labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..nc)).collect();
    labels[0] = 0;
    labels[1] = 1;
    let classes = (0..nc).map(|c| format!("c{c}")).collect();
    Dataset::new("random", "class", schema, classes, rows, labels).unwrap()
}

/// Random joint over `cards.len()` variables named `v0, v1, ...`; each
/// configuration is dropped with probability `sparsity`.
pub fn random_pdm(rng: &mut ChaCha8Rng, cards: &[usize], sparsity: f64) -> EmpiricalPDM {
    let total: usize = cards.iter().product();
    let mut entries: Vec<(Vec<usize>, f64)> = Vec::new();
    for idx in 0..total {
        if rng.random_bool(sparsity) {
            continue;
        }
        entries.push((decode(idx, cards), rng.random_range(0.05..1.0)));
    }
    if entries.is_empty() {
        entries.push((vec![0; cards.len()], 1.0));
    }
    normalized_pdm(cards, entries)
}

pub fn normalized_pdm(cards: &[usize], mut entries: Vec<(Vec<usize>, f64)>) -> EmpiricalPDM {
    let sum: f64 = entries.iter().map(|e| e.1).sum();
    for e in &mut entries {
        e.1 /= sum;
    }
    EmpiricalPDM::new(
        (0..cards.len()).map(|v| format!("v{v}")).collect(),
        cards
            .iter()
            .map(|&c| (0..c).map(|x| x.to_string()).collect())
            .collect(),
        entries,
    )
    .unwrap()
}

/// Mixed-radix digits of `idx`, first variable most significant.
pub fn decode(mut idx: usize, cards: &[usize]) -> Vec<usize> {
    let mut out = vec![0; cards.len()];
    for (slot, &c) in out.iter_mut().zip(cards).rev() {
        *slot = idx % c;
        idx /= c;
    }
    out
}
