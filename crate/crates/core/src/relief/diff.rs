//! Per-feature difference functions and the instance distance built on them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datamodel::{Cell, Dataset, Domain};
use crate::error::{Error, Result};
use crate::probstats::{self, bin_of, DEFAULT_BINS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiffMode {
    /// Overlap for nominal, range-normalized absolute difference for linear;
    /// any missing cell counts as maximally different.
    #[default]
    HeomBasic,
    /// As `HeomBasic` for observed pairs, with class-conditional value
    /// probabilities for missing cells.
    ReliefD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DiffMetric {
    pub mode: DiffMode,
    /// Add-one smoothing of the class-conditional tables used by `ReliefD`.
    pub laplace: bool,
}

impl DiffMetric {
    pub fn heom() -> Self {
        DiffMetric::default()
    }

    pub fn relief_d(laplace: bool) -> Self {
        DiffMetric {
            mode: DiffMode::ReliefD,
            laplace,
        }
    }
}

/// Instances above this count get their candidate distances computed in parallel.
const PARALLEL_DISTANCE_THRESHOLD: usize = 4096;

/// Dataset pre-encoded for fast `diff` evaluation.
///
/// Cells are stored row-major as `f64`: nominal cells hold the value index,
/// linear cells hold the value rescaled to `[0, 1]` over the feature range
/// (0 for constant features), missing cells are NaN.
#[derive(Debug, Clone)]
pub struct DiffContext<'a> {
    data: &'a Dataset,
    metric: DiffMetric,
    n_features: usize,
    nominal: Vec<bool>,
    cells: Vec<f64>,
    /// `ReliefD` only: per feature, `P(value | class)` as `[class][value]`.
    conditionals: Vec<Vec<Vec<f64>>>,
    /// `ReliefD` only: discrete code of every observed cell (bin id for
    /// linear features), `usize::MAX` when missing.
    codes: Vec<usize>,
}

impl<'a> DiffContext<'a> {
    pub fn new(data: &'a Dataset, metric: DiffMetric) -> Result<Self> {
        let n_features = data.n_features();
        let n = data.n_instances();
        let nominal: Vec<bool> = data.schema().iter().map(|f| f.is_nominal()).collect();
        let mut cells = Vec::with_capacity(n * n_features);
        for row in data.rows() {
            for (cell, f) in row.iter().zip(data.schema()) {
                cells.push(match (*cell, &f.domain) {
                    (Cell::Missing, _) => f64::NAN,
                    (Cell::Symbol(s), _) => s as f64,
                    (Cell::Number(v), Domain::Linear { min, max }) => {
                        if max > min {
                            (v - min) / (max - min)
                        } else {
                            0.0
                        }
                    }
                    (Cell::Number(_), Domain::Nominal { .. }) => {
                        return Err(Error::Internal("number in nominal column".into()))
                    }
                });
            }
        }

        let (conditionals, codes) = if metric.mode == DiffMode::ReliefD {
            let mut conditionals = Vec::with_capacity(n_features);
            let mut codes = vec![usize::MAX; n * n_features];
            for j in 0..n_features {
                let (binned, _) = probstats::nominalized(data, j)?;
                conditionals.push(probstats::class_conditional(&binned, j, metric.laplace)?);
                for (i, row) in data.rows().iter().enumerate() {
                    codes[i * n_features + j] = match (row[j], &data.feature(j).domain) {
                        (Cell::Symbol(s), _) => s,
                        (Cell::Number(v), Domain::Linear { min, max }) => {
                            bin_of(v, *min, *max, DEFAULT_BINS)
                        }
                        _ => usize::MAX,
                    };
                }
            }
            (conditionals, codes)
        } else {
            (Vec::new(), Vec::new())
        };

        Ok(DiffContext {
            data,
            metric,
            n_features,
            nominal,
            cells,
            conditionals,
            codes,
        })
    }

    pub fn data(&self) -> &'a Dataset {
        self.data
    }

    pub fn metric(&self) -> DiffMetric {
        self.metric
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    /// Difference of feature `a` between instances `i1` and `i2`, in `[0, 1]`.
    #[inline]
    pub fn diff(&self, a: usize, i1: usize, i2: usize) -> f64 {
        let x = self.cells[i1 * self.n_features + a];
        let y = self.cells[i2 * self.n_features + a];
        match (x.is_nan(), y.is_nan()) {
            (false, false) => {
                if self.nominal[a] {
                    if x == y {
                        0.0
                    } else {
                        1.0
                    }
                } else {
                    (x - y).abs().min(1.0)
                }
            }
            _ if self.metric.mode == DiffMode::HeomBasic => 1.0,
            (true, false) => self.missing_one(a, i1, i2),
            (false, true) => self.missing_one(a, i2, i1),
            (true, true) => {
                let c1 = &self.conditionals[a][self.data.label(i1)];
                let c2 = &self.conditionals[a][self.data.label(i2)];
                let same: f64 = c1.iter().zip(c2).map(|(p, q)| p * q).sum();
                (1.0 - same).clamp(0.0, 1.0)
            }
        }
    }

    /// `missing` has no value, `known` does.
    fn missing_one(&self, a: usize, missing: usize, known: usize) -> f64 {
        let code = self.codes[known * self.n_features + a];
        let p = self.conditionals[a][self.data.label(missing)][code];
        (1.0 - p).clamp(0.0, 1.0)
    }

    /// Weighted sum of per-feature differences; `factors = None` weights all by 1.
    #[inline]
    pub fn distance(&self, i1: usize, i2: usize, factors: Option<&[f64]>) -> f64 {
        match factors {
            None => (0..self.n_features).map(|a| self.diff(a, i1, i2)).sum(),
            Some(w) => (0..self.n_features)
                .filter(|&a| w[a] != 0.0)
                .map(|a| w[a] * self.diff(a, i1, i2))
                .sum(),
        }
    }

    /// Distances from `query` to every instance (the query itself included).
    pub fn distances_from(&self, query: usize, factors: Option<&[f64]>) -> Vec<f64> {
        let n = self.data.n_instances();
        if n >= PARALLEL_DISTANCE_THRESHOLD {
            (0..n)
                .into_par_iter()
                .map(|j| self.distance(query, j, factors))
                .collect()
        } else {
            (0..n).map(|j| self.distance(query, j, factors)).collect()
        }
    }
}

pub(crate) fn check_factors(factors: &[f64], n_features: usize) -> Result<()> {
    if factors.len() != n_features {
        return Err(Error::usage(format!(
            "{} distance factors for {n_features} features",
            factors.len()
        )));
    }
    if let Some(bad) = factors.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
        return Err(Error::usage(format!("distance factor {bad} must be finite and >= 0")));
    }
    Ok(())
}

/// Difference of one feature between two instances.
pub fn diff(metric: DiffMetric, d: &Dataset, feature: &str, i1: usize, i2: usize) -> Result<f64> {
    let a = d.feature_index(feature)?;
    check_index(d, i1)?;
    check_index(d, i2)?;
    Ok(DiffContext::new(d, metric)?.diff(a, i1, i2))
}

pub(crate) fn check_index(d: &Dataset, i: usize) -> Result<()> {
    if i >= d.n_instances() {
        return Err(Error::usage(format!(
            "instance index {i} out of range ({} instances)",
            d.n_instances()
        )));
    }
    Ok(())
}

/// Sum of (optionally weighted) feature differences under the basic metric.
pub fn instance_distance(d: &Dataset, i1: usize, i2: usize, weights: Option<&[f64]>) -> Result<f64> {
    check_index(d, i1)?;
    check_index(d, i2)?;
    if let Some(w) = weights {
        check_factors(w, d.n_features())?;
    }
    Ok(DiffContext::new(d, DiffMetric::heom())?.distance(i1, i2, weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datamodel::parse_dataset;
    use crate::fixtures::nominal_csv;
    use approx::assert_abs_diff_eq;

    #[test]
    fn overlap_and_normalized_difference() {
        let d = parse_dataset("n,l,class\na,2,0\na,6,1\nb,0,0\nb,10,1\n", None).unwrap();
        let m = DiffMetric::heom();
        assert_eq!(diff(m, &d, "n", 0, 1).unwrap(), 0.0);
        assert_eq!(diff(m, &d, "n", 0, 2).unwrap(), 1.0);
        assert_abs_diff_eq!(diff(m, &d, "l", 0, 1).unwrap(), 0.4, epsilon = 1e-15);
    }

    #[test]
    fn constant_linear_feature_never_differs() {
        let d = parse_dataset("l,class\n3,0\n3,1\n", None).unwrap();
        assert_eq!(diff(DiffMetric::heom(), &d, "l", 0, 1).unwrap(), 0.0);
    }

    #[test]
    fn heom_missing_is_one() {
        let d = nominal_csv("a,class\n?,0\n1,1\n?,1\n");
        assert_eq!(diff(DiffMetric::heom(), &d, "a", 0, 1).unwrap(), 1.0);
        assert_eq!(diff(DiffMetric::heom(), &d, "a", 0, 2).unwrap(), 1.0);
    }

    #[test]
    fn relief_d_both_missing_uniform_conditionals() {
        // P(a | c) = 1/2 for both values and both classes.
        let d = nominal_csv("a,class\n0,0\n1,0\n0,1\n1,1\n?,0\n?,1\n");
        let v = diff(DiffMetric::relief_d(false), &d, "a", 4, 5).unwrap();
        assert_abs_diff_eq!(v, 1.0 - (0.5 * 0.5 + 0.5 * 0.5), epsilon = 1e-15);
    }

    #[test]
    fn relief_d_one_missing_uses_missing_side_class() {
        // class 0: a = 0 twice, a = 1 once -> P(a=1 | 0) = 1/3.
        let d = nominal_csv("a,class\n0,0\n0,0\n1,0\n1,1\n?,0\n");
        let m = DiffMetric::relief_d(false);
        assert_abs_diff_eq!(diff(m, &d, "a", 4, 3).unwrap(), 1.0 - 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(diff(m, &d, "a", 3, 4).unwrap(), 1.0 - 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn relief_d_linear_routes_through_bins() {
        let d = parse_dataset("l,class\n0,0\n10,0\n10,1\n?,1\n", None).unwrap();
        // class 1 has only l = 10 observed -> bin 9; P(bin 0 | class 1) = 0.
        let v = diff(DiffMetric::relief_d(false), &d, "l", 3, 0).unwrap();
        assert_eq!(v, 1.0);
        let v = diff(DiffMetric::relief_d(false), &d, "l", 3, 1).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn distances() {
        let d = nominal_csv("a,b,c,d,e,f,class\n0,0,0,0,0,0,0\n0,0,0,1,1,1,1\n0,0,0,0,0,0,1\n");
        assert_eq!(instance_distance(&d, 0, 2, None).unwrap(), 0.0);
        assert_eq!(instance_distance(&d, 0, 1, None).unwrap(), 3.0);
        let w = [1.0, 1.0, 1.0, 0.0, 0.0, 0.0];
        assert_eq!(instance_distance(&d, 0, 1, Some(&w)).unwrap(), 0.0);
        assert!(instance_distance(&d, 0, 1, Some(&[-1.0; 6])).is_err());
        assert!(instance_distance(&d, 0, 9, None).is_err());
    }
}
