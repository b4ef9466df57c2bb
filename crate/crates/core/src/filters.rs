//! Classical single-feature filter measures.
//!
//! Every measure is a pure function of the class-vs-value contingency table
//! of one feature. Linear features are discretized into
//! [`DEFAULT_BINS`](crate::probstats::DEFAULT_BINS) equal-width bins first,
//! which is recorded in the score notes.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use rayon::prelude::*;

use crate::datamodel::{Dataset, FeatureWeights};
use crate::error::{Error, Result};
use crate::probstats::{self, contingency_at, entropy_unchecked, ContingencyTable};

/// Replacement for zero expected counts in the chi-squared statistic.
pub const CHI2_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilterMeasure {
    Ccf,
    GiniGain,
    InfoGain,
    GainRatio,
    EntropyDist,
    MantarasDist,
    DistDiff,
    /// Numerically identical to [`FilterMeasure::InfoGain`].
    KlDiff,
    Chi2,
}

impl FilterMeasure {
    pub const ALL: [FilterMeasure; 9] = [
        FilterMeasure::Ccf,
        FilterMeasure::GiniGain,
        FilterMeasure::InfoGain,
        FilterMeasure::GainRatio,
        FilterMeasure::EntropyDist,
        FilterMeasure::MantarasDist,
        FilterMeasure::DistDiff,
        FilterMeasure::KlDiff,
        FilterMeasure::Chi2,
    ];

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            FilterMeasure::Ccf => "ccf",
            FilterMeasure::GiniGain => "gini",
            FilterMeasure::InfoGain => "ig",
            FilterMeasure::GainRatio => "gr",
            FilterMeasure::EntropyDist => "entdist",
            FilterMeasure::MantarasDist => "mantaras",
            FilterMeasure::DistDiff => "diffdist",
            FilterMeasure::KlDiff => "kl",
            FilterMeasure::Chi2 => "chi2",
        }
    }
}

impl fmt::Display for FilterMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FilterMeasure::ALL
            .into_iter()
            .find(|m| m.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::usage(format!("unknown filter measure `{s}`")))
    }
}

/// A measure value with provenance notes.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterScore {
    pub value: f64,
    pub notes: Vec<String>,
}

fn table_for(d: &Dataset, feature: &str) -> Result<(ContingencyTable, Vec<String>)> {
    let j = d.feature_index(feature)?;
    let (data, binned) = probstats::nominalized(d, j)?;
    let mut notes = Vec::new();
    if binned {
        notes.push(format!(
            "`{feature}` discretized into {} equal-width bins",
            probstats::DEFAULT_BINS
        ));
    }
    Ok((contingency_at(&data, j)?, notes))
}

/// Index of the positive value: the named one, else the first in domain order.
fn positive_index(t: &ContingencyTable, positive: Option<&str>) -> Result<usize> {
    match positive {
        None => Ok(0),
        Some(p) => t
            .feature_values
            .iter()
            .position(|v| v == p)
            .ok_or_else(|| Error::param(format!("positive value `{p}` does not occur"))),
    }
}

/// Per-category feature importance: `P(c | x+)` for each class.
/// Only defined for binary features.
pub fn pcf_weights(
    d: &Dataset,
    feature: &str,
    positive: Option<&str>,
) -> Result<IndexMap<String, f64>> {
    let (t, _) = table_for(d, feature)?;
    if t.n_values() != 2 {
        return Err(Error::usage(format!(
            "PCF needs a binary feature; `{feature}` has {} values",
            t.n_values()
        )));
    }
    let x = positive_index(&t, positive)?;
    Ok((0..t.n_classes())
        .map(|c| (t.class_values[c].clone(), t.p_class_given_value(c, x)))
        .collect())
}

fn ccf_term(t: &ContingencyTable, x: usize) -> f64 {
    (0..t.n_classes())
        .map(|c| t.p_class_given_value(c, x).powi(2))
        .sum()
}

/// One-vs-rest cross-category importance `sum_c P(c | x = v)^2` for every
/// observed value `v`.
pub fn ccf_variants(d: &Dataset, feature: &str) -> Result<IndexMap<String, f64>> {
    let (t, _) = table_for(d, feature)?;
    Ok((0..t.n_values())
        .filter(|&x| t.col_totals[x] > 0)
        .map(|x| (t.feature_values[x].clone(), ccf_term(&t, x)))
        .collect())
}

fn ccf(t: &ContingencyTable, positive: Option<&str>) -> Result<f64> {
    if t.n_values() == 2 {
        let x = positive_index(t, positive)?;
        return Ok(ccf_term(t, x));
    }
    let observed: Vec<usize> = (0..t.n_values()).filter(|&x| t.col_totals[x] > 0).collect();
    Ok(observed.iter().map(|&x| ccf_term(t, x)).sum::<f64>() / observed.len() as f64)
}

/// Value-difference weights per observed value.
///
/// The default computes `sqrt(sum_c (P(x|c) / P(x))^2)`; `classic` computes
/// `sqrt(sum_c P(c|x)^2)` instead.
pub fn vdm_weights(d: &Dataset, feature: &str, classic: bool) -> Result<IndexMap<String, f64>> {
    let (t, _) = table_for(d, feature)?;
    Ok(vdm_from_table(&t, classic))
}

fn vdm_from_table(t: &ContingencyTable, classic: bool) -> IndexMap<String, f64> {
    (0..t.n_values())
        .filter(|&x| t.col_totals[x] > 0)
        .map(|x| {
            let px = t.p_value(x);
            let s: f64 = (0..t.n_classes())
                .filter(|&c| t.row_totals[c] > 0)
                .map(|c| {
                    if classic {
                        t.p_class_given_value(c, x).powi(2)
                    } else {
                        (t.p_value_given_class(x, c) / px).powi(2)
                    }
                })
                .sum();
            (t.feature_values[x].clone(), s.sqrt())
        })
        .collect()
}

/// Frequency-weighted mean of the per-value VDM weights; a single score per
/// feature for ranking.
pub fn vdm_score(d: &Dataset, feature: &str, classic: bool) -> Result<f64> {
    let (t, _) = table_for(d, feature)?;
    let w = vdm_from_table(&t, classic);
    Ok(w
        .iter()
        .map(|(v, wv)| {
            let x = t.feature_values.iter().position(|fv| fv == v).unwrap();
            t.p_value(x) * wv
        })
        .sum())
}

struct Entropies {
    hx: f64,
    hc: f64,
    hxc: f64,
}

fn entropies(t: &ContingencyTable) -> Entropies {
    let hx = entropy_unchecked(t.value_marginal());
    let hc = entropy_unchecked(t.class_marginal());
    let hxc = entropy_unchecked(
        (0..t.n_classes()).flat_map(|c| (0..t.n_values()).map(move |x| (c, x))).map(|(c, x)| t.joint(c, x)),
    );
    Entropies { hx, hc, hxc }
}

fn mutual_info(e: &Entropies) -> f64 {
    (e.hx + e.hc - e.hxc).max(0.0)
}

/// Scores a contingency table with one of the scalar measures.
pub fn score_table(
    t: &ContingencyTable,
    measure: FilterMeasure,
    positive: Option<&str>,
) -> Result<FilterScore> {
    let mut notes = Vec::new();
    let value = match measure {
        FilterMeasure::Ccf => ccf(t, positive)?,
        FilterMeasure::GiniGain => {
            let within: f64 = (0..t.n_values())
                .map(|x| t.p_value(x) * ccf_term(t, x))
                .sum();
            let prior: f64 = t.class_marginal().iter().map(|p| p * p).sum();
            within - prior
        }
        FilterMeasure::InfoGain => mutual_info(&entropies(t)),
        FilterMeasure::GainRatio => {
            let e = entropies(t);
            if e.hx > 0.0 {
                mutual_info(&e) / e.hx
            } else {
                notes.push("H(X) = 0; gain ratio set to 0".into());
                0.0
            }
        }
        FilterMeasure::EntropyDist => {
            let e = entropies(t);
            e.hxc - mutual_info(&e)
        }
        FilterMeasure::MantarasDist => {
            let e = entropies(t);
            if e.hxc > 0.0 {
                2.0 - (e.hx + e.hc) / e.hxc
            } else {
                notes.push("H(C,X) = 0; Mantaras distance set to 0".into());
                0.0
            }
        }
        FilterMeasure::DistDiff => {
            let mut s = 0.0;
            for c in 0..t.n_classes() {
                for x in 0..t.n_values() {
                    s += (t.joint(c, x) - t.p_value(x) * t.p_class(c)).abs();
                }
            }
            s
        }
        FilterMeasure::KlDiff => {
            let mut kl = 0.0;
            for c in 0..t.n_classes() {
                for x in 0..t.n_values() {
                    let pj = t.joint(c, x);
                    if pj > 0.0 {
                        kl += pj * (pj / (t.p_value(x) * t.p_class(c))).log2();
                    }
                }
            }
            kl.max(0.0)
        }
        FilterMeasure::Chi2 => {
            let m = t.total as f64;
            let mut chi = 0.0;
            for c in 0..t.n_classes() {
                for x in 0..t.n_values() {
                    let mut e = t.row_totals[c] as f64 * t.col_totals[x] as f64 / m;
                    if e == 0.0 {
                        e = CHI2_EPSILON;
                    }
                    chi += (t.counts[c][x] as f64 - e).powi(2) / e;
                }
            }
            chi
        }
    };
    Ok(FilterScore { value, notes })
}

/// Scores one feature of `d`.
pub fn filter_weight(d: &Dataset, feature: &str, measure: FilterMeasure) -> Result<FilterScore> {
    filter_weight_with(d, feature, measure, None)
}

/// As [`filter_weight`], with an explicit positive value for CCF on binary features.
pub fn filter_weight_with(
    d: &Dataset,
    feature: &str,
    measure: FilterMeasure,
    positive: Option<&str>,
) -> Result<FilterScore> {
    let (t, mut notes) = table_for(d, feature)?;
    let mut s = score_table(&t, measure, positive)?;
    notes.append(&mut s.notes);
    s.notes = notes;
    Ok(s)
}

/// Scores every feature (in parallel) and collects a [`FeatureWeights`].
pub fn weigh(d: &Dataset, measure: FilterMeasure, positive: Option<&str>) -> Result<FeatureWeights> {
    let names: Vec<&str> = d.feature_names().collect();
    let scores = names
        .par_iter()
        .map(|f| filter_weight_with(d, f, measure, positive))
        .collect::<Result<Vec<_>>>()?;
    let mut notes = Vec::new();
    let mut values = Vec::with_capacity(scores.len());
    for (f, s) in names.iter().zip(scores) {
        values.push(s.value);
        notes.extend(s.notes.into_iter().map(|n| format!("{f}: {n}")));
    }
    let mut w = FeatureWeights::new(measure.name(), d, values);
    w.notes = notes;
    Ok(w)
}
