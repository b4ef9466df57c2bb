//! Relief, Relieved, ReliefF and myopic ReliefF estimators.
//!
//! All instance-based variants share one update rule: for a selected
//! instance, the mean difference to its nearest hits is subtracted and the
//! prior-weighted mean difference to the nearest misses of every other class
//! is added, each scaled by `1/m`. With two classes and one neighbor this is
//! exactly the original two-class rule.

mod diff;
mod neighbors;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use diff::{diff, instance_distance, DiffContext, DiffMetric, DiffMode};
pub use neighbors::{find_neighbors, NeighborSet};
pub(crate) use diff::check_factors;

use crate::datamodel::{Dataset, FeatureWeights};
use crate::error::{Error, Result};
use crate::probstats::{self, contingency_at, ContingencyTable};

pub const DEFAULT_K: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReliefVariant {
    /// Two classes, `m` randomly selected instances, one hit and one miss.
    Original,
    /// Every instance in index order, one hit and one miss per class.
    Relieved,
    /// `k` hits and `k` misses per other class, class-prior weighted.
    ReliefF,
    /// Closed-form limit of ReliefF with every instance as a neighbor.
    Myopic,
}

impl ReliefVariant {
    pub fn name(self) -> &'static str {
        match self {
            ReliefVariant::Original => "relief",
            ReliefVariant::Relieved => "relieved",
            ReliefVariant::ReliefF => "relieff",
            ReliefVariant::Myopic => "myopic",
        }
    }
}

impl fmt::Display for ReliefVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReliefVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            ReliefVariant::Original,
            ReliefVariant::Relieved,
            ReliefVariant::ReliefF,
            ReliefVariant::Myopic,
        ]
        .into_iter()
        .find(|v| v.name() == s.to_ascii_lowercase())
        .ok_or_else(|| Error::usage(format!("unknown Relief variant `{s}`")))
    }
}

/// Number of outer-loop iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Iterations {
    #[default]
    All,
    Count(usize),
}

impl Iterations {
    pub fn resolve(self, n: usize) -> Result<usize> {
        match self {
            Iterations::All => Ok(n),
            Iterations::Count(0) => Err(Error::param("m must be >= 1")),
            Iterations::Count(m) if m > n => Err(Error::param(format!(
                "m = {m} exceeds the number of instances ({n})"
            ))),
            Iterations::Count(m) => Ok(m),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReliefConfig {
    pub variant: ReliefVariant,
    pub m: Iterations,
    /// Neighbors per class; only used by ReliefF (and the double variants).
    pub k: usize,
    pub seed: u64,
    pub diff: DiffMetric,
}

impl Default for ReliefConfig {
    fn default() -> Self {
        ReliefConfig {
            variant: ReliefVariant::ReliefF,
            m: Iterations::All,
            k: DEFAULT_K,
            seed: 0,
            diff: DiffMetric::heom(),
        }
    }
}

impl ReliefConfig {
    pub fn new(variant: ReliefVariant) -> Self {
        ReliefConfig {
            variant,
            ..ReliefConfig::default()
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_m(mut self, m: Iterations) -> Self {
        self.m = m;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_diff(mut self, diff: DiffMetric) -> Self {
        self.diff = diff;
        self
    }

    pub(crate) fn neighbors_per_class(&self) -> usize {
        match self.variant {
            ReliefVariant::Original | ReliefVariant::Relieved => 1,
            _ => self.k,
        }
    }

    pub(crate) fn validate(&self, d: &Dataset) -> Result<()> {
        if self.k == 0 {
            return Err(Error::param("k must be >= 1"));
        }
        let present = d.class_counts().iter().filter(|&&c| c > 0).count();
        if present < 2 {
            return Err(Error::usage("Relief needs at least two classes"));
        }
        if self.variant == ReliefVariant::Original && d.n_classes() != 2 {
            return Err(Error::usage(format!(
                "original Relief handles exactly two classes, found {}; use relieff",
                d.n_classes()
            )));
        }
        self.m.resolve(d.n_instances())?;
        Ok(())
    }
}

/// Order in which instances are visited.
///
/// Relieved walks every index in order. Otherwise `m = n` visits a seeded
/// permutation (no repeats) and `m < n` samples with replacement.
pub(crate) fn selection_order(cfg: &ReliefConfig, n: usize) -> Result<Vec<usize>> {
    let m = cfg.m.resolve(n)?;
    if cfg.variant == ReliefVariant::Relieved {
        return Ok((0..n).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    if m == n {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        Ok(order)
    } else {
        Ok((0..m).map(|_| rng.random_range(0..n)).collect())
    }
}

/// Weight change contributed by one selected instance, already divided by `m`.
pub(crate) fn update_delta(
    ctx: &DiffContext<'_>,
    query: usize,
    nb: &NeighborSet,
    priors: &[f64],
    m: usize,
) -> Vec<f64> {
    let nf = ctx.n_features();
    let own = ctx.data().label(query);
    let rest = 1.0 - priors[own];
    let mut delta = vec![0.0; nf];
    if nb.hits.is_empty() {
        log::debug!("instance {query} has no hits; hit term skipped");
    }
    for (a, slot) in delta.iter_mut().enumerate() {
        let hit = if nb.hits.is_empty() {
            0.0
        } else {
            nb.hits.iter().map(|&h| ctx.diff(a, query, h)).sum::<f64>() / nb.hits.len() as f64
        };
        let mut miss = 0.0;
        for (&c, members) in &nb.misses {
            let mean = members.iter().map(|&j| ctx.diff(a, query, j)).sum::<f64>()
                / members.len() as f64;
            miss += priors[c] / rest * mean;
        }
        *slot = (miss - hit) / m as f64;
    }
    delta
}

fn base_params(cfg: &ReliefConfig, name: &str, d: &Dataset, w: Vec<f64>) -> FeatureWeights {
    let mut fw = FeatureWeights::new(name, d, w)
        .with_param("seed", cfg.seed)
        .with_param("diff", serde_json::to_value(cfg.diff).unwrap_or_default());
    if let Ok(m) = cfg.m.resolve(d.n_instances()) {
        fw = fw.with_param("m", m);
    }
    if !matches!(cfg.variant, ReliefVariant::Original | ReliefVariant::Relieved) {
        fw = fw.with_param("k", cfg.k);
    }
    fw
}

/// Runs a Relief-family estimator. Deterministic for a fixed `cfg.seed`,
/// independent of the number of worker threads.
pub fn run_relief(d: &Dataset, cfg: &ReliefConfig) -> Result<FeatureWeights> {
    if cfg.variant == ReliefVariant::Myopic {
        let mut values = Vec::with_capacity(d.n_features());
        let mut notes = Vec::new();
        for name in d.feature_names() {
            let s = myopic_score(d, name)?;
            values.push(s.value);
            notes.extend(s.notes.into_iter().map(|n| format!("{name}: {n}")));
        }
        let mut fw = FeatureWeights::new(cfg.variant.name(), d, values);
        fw.notes = notes;
        return Ok(fw);
    }

    cfg.validate(d)?;
    let ctx = DiffContext::new(d, cfg.diff)?;
    let order = selection_order(cfg, d.n_instances())?;
    let m = order.len();
    let k = cfg.neighbors_per_class();
    let priors = d.class_priors();

    let deltas: Vec<Vec<f64>> = order
        .par_iter()
        .map(|&q| {
            let nb = ctx.neighbors(q, k, None);
            update_delta(&ctx, q, &nb, &priors, m)
        })
        .collect();
    let mut w = vec![0.0; d.n_features()];
    for delta in &deltas {
        for (wa, da) in w.iter_mut().zip(delta) {
            *wa += da;
        }
    }
    clamp_unit(&mut w);
    Ok(base_params(cfg, cfg.variant.name(), d, w))
}

pub(crate) fn clamp_unit(w: &mut [f64]) {
    for v in w {
        *v = v.clamp(-1.0, 1.0);
    }
}

/// Myopic value with provenance notes.
#[derive(Debug, Clone, PartialEq)]
pub struct MyopicScore {
    pub value: f64,
    pub notes: Vec<String>,
}

/// Components of the myopic closed form for one contingency table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MyopicTerms {
    /// Probability that two instances drawn with replacement share the value.
    pub p_eqval: f64,
    /// Probability that two instances drawn with replacement share the class.
    pub p_samecl: f64,
    /// Modified Gini gain with `P(x)^2 / sum P(x)^2` value weights.
    pub modified_gini: f64,
}

pub fn myopic_terms(t: &ContingencyTable) -> MyopicTerms {
    let px = t.value_marginal();
    let p_eqval: f64 = px.iter().map(|p| p * p).sum();
    let p_samecl: f64 = t.class_marginal().iter().map(|p| p * p).sum();
    let within: f64 = (0..t.n_values())
        .map(|x| {
            let purity: f64 = (0..t.n_classes())
                .map(|c| t.p_class_given_value(c, x).powi(2))
                .sum();
            px[x] * px[x] / p_eqval * purity
        })
        .sum();
    MyopicTerms {
        p_eqval,
        p_samecl,
        modified_gini: within - p_samecl,
    }
}

/// `P_eqval * GG'(X) / (P_samecl * (1 - P_samecl))` for one feature.
pub fn myopic_relieff(d: &Dataset, feature: &str) -> Result<f64> {
    Ok(myopic_score(d, feature)?.value)
}

pub fn myopic_score(d: &Dataset, feature: &str) -> Result<MyopicScore> {
    let j = d.feature_index(feature)?;
    let (data, binned) = probstats::nominalized(d, j)?;
    let mut notes = Vec::new();
    if binned {
        notes.push(format!("discretized into {} equal-width bins", probstats::DEFAULT_BINS));
    }
    let t = contingency_at(&data, j)?;
    let terms = myopic_terms(&t);
    let denom = terms.p_samecl * (1.0 - terms.p_samecl);
    let value = if denom <= 0.0 {
        notes.push("a single observed class; myopic weight set to 0".into());
        0.0
    } else {
        terms.p_eqval * terms.modified_gini / denom
    };
    Ok(MyopicScore { value, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{nominal_csv, and_gate};
    use crate::synthgen;
    use approx::assert_abs_diff_eq;

    #[test]
    fn relieved_single_perfect_feature_is_one() {
        let d = nominal_csv("a,class\n0,0\n0,0\n1,1\n1,1\n");
        let w = run_relief(&d, &ReliefConfig::new(ReliefVariant::Relieved)).unwrap();
        assert_eq!(w.weights["a"], 1.0);
    }

    #[test]
    fn constant_feature_gets_zero() {
        let d = nominal_csv("a,b,class\n0,7,0\n1,7,1\n0,7,1\n1,7,0\n");
        for v in [ReliefVariant::Relieved, ReliefVariant::ReliefF, ReliefVariant::Original] {
            let w = run_relief(&d, &ReliefConfig::new(v).with_k(2)).unwrap();
            assert_eq!(w.weights["b"], 0.0, "{v}");
        }
    }

    #[test]
    fn original_rejects_three_classes() {
        let d = nominal_csv("a,class\n0,0\n1,1\n2,2\n");
        let err = run_relief(&d, &ReliefConfig::new(ReliefVariant::Original)).unwrap_err();
        assert!(err.to_string().contains("relieff"));
        assert!(run_relief(&d, &ReliefConfig::new(ReliefVariant::ReliefF)).is_ok());
    }

    #[test]
    fn m_bounds() {
        let d = nominal_csv("a,class\n0,0\n1,1\n");
        let cfg = ReliefConfig::new(ReliefVariant::ReliefF).with_m(Iterations::Count(3));
        assert!(matches!(run_relief(&d, &cfg), Err(Error::Parameter(_))));
        let cfg = ReliefConfig::new(ReliefVariant::ReliefF).with_m(Iterations::Count(0));
        assert!(run_relief(&d, &cfg).is_err());
        let cfg = ReliefConfig::new(ReliefVariant::ReliefF).with_k(0);
        assert!(run_relief(&d, &cfg).is_err());
    }

    #[test]
    fn single_class_rejected() {
        let d = nominal_csv("a,class\n0,0\n1,0\n");
        assert!(matches!(
            run_relief(&d, &ReliefConfig::default()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn sampling_order() {
        let cfg = ReliefConfig::new(ReliefVariant::ReliefF).with_seed(3);
        let mut all = selection_order(&cfg, 20).unwrap();
        all.sort();
        assert_eq!(all, (0..20).collect::<Vec<_>>());
        let cfg = cfg.with_m(Iterations::Count(5));
        assert_eq!(selection_order(&cfg, 20).unwrap().len(), 5);
        let cfg = ReliefConfig::new(ReliefVariant::Relieved).with_seed(3);
        assert_eq!(selection_order(&cfg, 4).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn relieved_ignores_seed() {
        let (d, _) = synthgen::gen_modulo(2, 2, 3, 60, 5).unwrap();
        let a = run_relief(&d, &ReliefConfig::new(ReliefVariant::Relieved).with_seed(1)).unwrap();
        let b = run_relief(&d, &ReliefConfig::new(ReliefVariant::Relieved).with_seed(99)).unwrap();
        assert_eq!(a.weights, b.weights);
    }

    #[test]
    fn relief_d_runs_on_missing_data() {
        let d = nominal_csv("a,b,class\n0,1,0\n?,1,0\n1,0,1\n1,?,1\n0,0,0\n1,1,1\n");
        let cfg = ReliefConfig::new(ReliefVariant::Relieved).with_diff(DiffMetric::relief_d(true));
        let w = run_relief(&d, &cfg).unwrap();
        assert!(w.weights.values().all(|v| (-1.0..=1.0).contains(v)));
    }

    /// Direct evaluation of the myopic closed form from the 4-row joint of
    /// (f1, C): P(f1=0,C=0)=1/2, P(f1=1,C=0)=1/4, P(f1=1,C=1)=1/4.
    #[test]
    fn myopic_and_gate_f1() {
        let p_x = [0.5, 0.5];
        let p_c = [0.75, 0.25];
        let p_c_given_x = [[1.0, 0.0], [0.5, 0.5]];
        let p_eqval: f64 = p_x.iter().map(|p| p * p).sum();
        let p_samecl: f64 = p_c.iter().map(|p| p * p).sum();
        let mut gg = -p_samecl;
        for x in 0..2 {
            let purity: f64 = p_c_given_x[x].iter().map(|p| p * p).sum();
            gg += p_x[x] * p_x[x] / p_eqval * purity;
        }
        let expected = p_eqval * gg / (p_samecl * (1.0 - p_samecl));
        // 0.5 * 0.125 / (0.625 * 0.375)
        assert_abs_diff_eq!(expected, 0.26666666666666666, epsilon = 1e-15);
        let got = myopic_relieff(&and_gate(), "f1").unwrap();
        assert_abs_diff_eq!(got, expected, epsilon = 1e-12);
    }

    #[test]
    fn myopic_independent_is_zero() {
        let d = nominal_csv("a,class\n0,0\n0,1\n1,0\n1,1\n");
        assert_abs_diff_eq!(myopic_relieff(&d, "a").unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn myopic_single_class_noted() {
        let d = nominal_csv("a,class\n0,0\n1,0\n");
        let s = myopic_score(&d, "a").unwrap();
        assert_eq!(s.value, 0.0);
        assert_eq!(s.notes.len(), 1);
    }
}
