//! Scoring weight vectors against known relevant features, and 1-NN
//! cross-validation curves over weight-ordered feature subsets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datamodel::{Dataset, FeatureWeights};
use crate::error::{Error, Result};
use crate::relief::{DiffContext, DiffMetric};
use crate::synthgen::GroundTruth;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaReport {
    /// Worst relevant weight minus best irrelevant weight.
    pub separability: f64,
    /// Best relevant weight minus best irrelevant weight.
    pub usability: f64,
    /// Relevant count over the number of features weighted at least as high
    /// as the worst relevant one.
    pub minimality: f64,
    /// Share of relevant features weighted above the best irrelevant one.
    pub completeness: f64,
    pub ordering: Vec<String>,
}

pub fn criteria(w: &FeatureWeights, truth: &GroundTruth) -> Result<CriteriaReport> {
    if truth.relevant.is_empty() || truth.irrelevant.is_empty() {
        return Err(Error::usage(
            "criteria need at least one relevant and one irrelevant feature",
        ));
    }
    let weight = |f: &String| w.get(f).ok_or_else(|| Error::UnknownFeature(f.clone()));
    let rel = truth.relevant.iter().map(weight).collect::<Result<Vec<_>>>()?;
    let irr = truth.irrelevant.iter().map(weight).collect::<Result<Vec<_>>>()?;
    let worst_rel = rel.iter().copied().fold(f64::INFINITY, f64::min);
    let best_rel = rel.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let best_irr = irr.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let selected = w.weights.values().filter(|&&v| v >= worst_rel).count();
    let complete = rel.iter().filter(|&&v| v > best_irr).count();
    Ok(CriteriaReport {
        separability: worst_rel - best_irr,
        usability: best_rel - best_irr,
        minimality: rel.len() as f64 / selected as f64,
        completeness: complete as f64 / rel.len() as f64,
        ordering: w.ordering().into_iter().map(str::to_string).collect(),
    })
}

/// Class index of the training instance nearest to `query`, ties to the
/// lowest index. `factors` scale per-feature differences (0 drops a feature).
pub fn knn_predict(
    d: &Dataset,
    train: &[usize],
    query: usize,
    factors: Option<&[f64]>,
) -> Result<usize> {
    if train.is_empty() {
        return Err(Error::usage("empty training set"));
    }
    if let Some(&bad) = train.iter().chain([&query]).find(|&&i| i >= d.n_instances()) {
        return Err(Error::usage(format!("instance index {bad} out of range")));
    }
    if let Some(f) = factors {
        crate::relief::check_factors(f, d.n_features())?;
    }
    let ctx = DiffContext::new(d, DiffMetric::heom())?;
    Ok(nearest_label(&ctx, train, query, factors))
}

fn nearest_label(ctx: &DiffContext<'_>, train: &[usize], query: usize, factors: Option<&[f64]>) -> usize {
    let mut best = (f64::INFINITY, usize::MAX);
    for &j in train {
        let dist = ctx.distance(query, j, factors);
        if dist < best.0 || (dist == best.0 && j < best.1) {
            best = (dist, j);
        }
    }
    ctx.data().label(best.1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub n_features: usize,
    pub feature_set: Vec<String>,
    /// Percentage of held-out instances classified correctly over all folds.
    pub accuracy: f64,
    pub folds: usize,
}

/// Fold index of every instance. Stratified (each class shuffled and dealt
/// round-robin) unless some class has fewer members than `folds`.
pub fn fold_assignment(d: &Dataset, folds: usize, seed: u64) -> Result<Vec<usize>> {
    if folds < 2 {
        return Err(Error::param("at least two folds are required"));
    }
    let n = d.n_instances();
    if n < folds {
        return Err(Error::param(format!("{n} instances cannot fill {folds} folds")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts = d.class_counts();
    let stratified = counts.iter().all(|&c| c == 0 || c >= folds);
    let groups: Vec<Vec<usize>> = if stratified {
        (0..d.n_classes())
            .map(|c| (0..n).filter(|&i| d.label(i) == c).collect())
            .collect()
    } else {
        log::warn!("a class has fewer than {folds} members; using unstratified folds");
        vec![(0..n).collect()]
    };
    let mut assignment = vec![0; n];
    let mut next = 0;
    for mut members in groups {
        members.shuffle(&mut rng);
        for i in members {
            assignment[i] = next % folds;
            next += 1;
        }
    }
    Ok(assignment)
}

/// 1-NN cross-validated accuracy using the top 1, 2, ... features by weight.
/// The last point uses every feature.
pub fn cv_curve(d: &Dataset, w: &FeatureWeights, folds: usize, seed: u64) -> Result<Vec<CurvePoint>> {
    w.aligned(d)?;
    let assignment = fold_assignment(d, folds, seed)?;
    let ctx = DiffContext::new(d, DiffMetric::heom())?;
    let ordering: Vec<usize> = w
        .ordering()
        .into_iter()
        .map(|name| d.feature_index(name))
        .collect::<Result<_>>()?;
    let splits: Vec<(Vec<usize>, Vec<usize>)> = (0..folds)
        .map(|f| {
            (0..d.n_instances()).partition::<Vec<usize>, _>(|&i| assignment[i] != f)
        })
        .collect();

    let points = (1..=d.n_features())
        .into_par_iter()
        .map(|k| {
            let mut factors = vec![0.0; d.n_features()];
            for &j in &ordering[..k] {
                factors[j] = 1.0;
            }
            let correct: usize = splits
                .iter()
                .map(|(train, test)| {
                    test.iter()
                        .filter(|&&q| nearest_label(&ctx, train, q, Some(&factors)) == d.label(q))
                        .count()
                })
                .sum();
            CurvePoint {
                n_features: k,
                feature_set: ordering[..k]
                    .iter()
                    .map(|&j| d.feature(j).name.clone())
                    .collect(),
                accuracy: 100.0 * correct as f64 / d.n_instances() as f64,
                folds,
            }
        })
        .collect();
    Ok(points)
}

/// Curve as `n_features,accuracy` CSV.
pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from("n_features,accuracy\n");
    for p in points {
        out.push_str(&format!("{},{}\n", p.n_features, p.accuracy));
    }
    out
}
