//! Contingency tables, discretization, and discrete information measures.
//!
//! All entropies are in bits. Probabilities are maximum-likelihood relative
//! frequencies; missing cells are dropped per statistic (pairwise), never by
//! whole row.

use std::borrow::Cow;
use std::collections::BTreeMap;

use crate::datamodel::{Cell, Dataset, Domain, FeatureSchema};
use crate::error::{Error, Result};

pub const DEFAULT_BINS: usize = 10;

/// Class x feature-value counts.
#[derive(Debug, Clone, PartialEq)]
pub struct ContingencyTable {
    pub class_values: Vec<String>,
    pub feature_values: Vec<String>,
    /// `counts[c][x]`
    pub counts: Vec<Vec<u64>>,
    pub row_totals: Vec<u64>,
    pub col_totals: Vec<u64>,
    pub total: u64,
}

impl ContingencyTable {
    pub fn from_counts(
        class_values: Vec<String>,
        feature_values: Vec<String>,
        counts: Vec<Vec<u64>>,
    ) -> Result<Self> {
        if counts.len() != class_values.len()
            || counts.iter().any(|r| r.len() != feature_values.len())
        {
            return Err(Error::Internal("contingency counts have wrong shape".into()));
        }
        let row_totals: Vec<u64> = counts.iter().map(|r| r.iter().sum()).collect();
        let col_totals: Vec<u64> = (0..feature_values.len())
            .map(|x| counts.iter().map(|r| r[x]).sum())
            .collect();
        let total = row_totals.iter().sum();
        if total == 0 {
            return Err(Error::usage("contingency table is empty (no observed values)"));
        }
        Ok(ContingencyTable {
            class_values,
            feature_values,
            counts,
            row_totals,
            col_totals,
            total,
        })
    }

    pub fn n_classes(&self) -> usize {
        self.class_values.len()
    }

    pub fn n_values(&self) -> usize {
        self.feature_values.len()
    }

    /// P(c, x)
    pub fn joint(&self, c: usize, x: usize) -> f64 {
        self.counts[c][x] as f64 / self.total as f64
    }

    /// P(x)
    pub fn p_value(&self, x: usize) -> f64 {
        self.col_totals[x] as f64 / self.total as f64
    }

    /// P(c)
    pub fn p_class(&self, c: usize) -> f64 {
        self.row_totals[c] as f64 / self.total as f64
    }

    /// P(c | x); zero when x never occurs.
    pub fn p_class_given_value(&self, c: usize, x: usize) -> f64 {
        match self.col_totals[x] {
            0 => 0.0,
            n => self.counts[c][x] as f64 / n as f64,
        }
    }

    /// P(x | c); zero when c never occurs.
    pub fn p_value_given_class(&self, x: usize, c: usize) -> f64 {
        match self.row_totals[c] {
            0 => 0.0,
            n => self.counts[c][x] as f64 / n as f64,
        }
    }

    pub fn value_marginal(&self) -> Vec<f64> {
        (0..self.n_values()).map(|x| self.p_value(x)).collect()
    }

    pub fn class_marginal(&self) -> Vec<f64> {
        (0..self.n_classes()).map(|c| self.p_class(c)).collect()
    }

    /// Joint distribution as a two-variable PDM over (feature, class).
    pub fn to_pdm(&self, feature: &str, class: &str) -> EmpiricalPDM {
        let mut support = BTreeMap::new();
        for c in 0..self.n_classes() {
            for x in 0..self.n_values() {
                if self.counts[c][x] > 0 {
                    support.insert(vec![x, c], self.joint(c, x));
                }
            }
        }
        EmpiricalPDM {
            variables: vec![feature.to_string(), class.to_string()],
            values: vec![self.feature_values.clone(), self.class_values.clone()],
            support,
        }
    }
}

/// Counts class vs. value for a nominal feature, skipping rows where the
/// feature is missing.
pub fn contingency(d: &Dataset, feature: &str) -> Result<ContingencyTable> {
    let j = d.feature_index(feature)?;
    contingency_at(d, j)
}

pub(crate) fn contingency_at(d: &Dataset, j: usize) -> Result<ContingencyTable> {
    let f = d.feature(j);
    let values = f.values().ok_or_else(|| {
        Error::usage(format!(
            "feature `{}` is linear; discretize it before building a contingency table",
            f.name
        ))
    })?;
    let mut counts = vec![vec![0u64; values.len()]; d.n_classes()];
    for (row, &c) in d.rows().iter().zip(d.labels()) {
        if let Cell::Symbol(x) = row[j] {
            counts[c][x] += 1;
        }
    }
    ContingencyTable::from_counts(d.class_values().to_vec(), values.to_vec(), counts)
        .map_err(|e| match e {
            Error::Usage(_) => Error::usage(format!("feature `{}` has no observed values", f.name)),
            other => other,
        })
}

/// Equal-width bin index of `v` over `[lo, hi]`; the maximum lands in the last bin.
pub fn bin_of(v: f64, lo: f64, hi: f64, bins: usize) -> usize {
    if hi <= lo {
        return 0;
    }
    let b = ((v - lo) * bins as f64 / (hi - lo)).floor();
    if b < 0.0 {
        0
    } else {
        (b as usize).min(bins - 1)
    }
}

/// Replaces a linear feature by equal-width bin ids `0..bins` over its range.
pub fn discretize(d: &Dataset, feature: &str, bins: usize) -> Result<Dataset> {
    let j = d.feature_index(feature)?;
    discretize_at(d, j, bins)
}

pub(crate) fn discretize_at(d: &Dataset, j: usize, bins: usize) -> Result<Dataset> {
    if bins < 2 {
        return Err(Error::param(format!("bins must be >= 2, got {bins}")));
    }
    let f = d.feature(j);
    let (lo, hi) = f.range().ok_or_else(|| {
        Error::usage(format!("feature `{}` is already nominal", f.name))
    })?;
    let column = d
        .rows()
        .iter()
        .map(|r| match r[j] {
            Cell::Number(v) => Cell::Symbol(bin_of(v, lo, hi, bins)),
            _ => Cell::Missing,
        })
        .collect();
    let schema = FeatureSchema::nominal(f.name.clone(), (0..bins).map(|b| b.to_string()).collect());
    d.replace_feature(j, schema, column)
}

/// Returns `d` unchanged when feature `j` is nominal, otherwise a copy with
/// that feature discretized into [`DEFAULT_BINS`] bins.
pub(crate) fn nominalized(d: &Dataset, j: usize) -> Result<(Cow<'_, Dataset>, bool)> {
    if d.feature(j).is_nominal() {
        Ok((Cow::Borrowed(d), false))
    } else {
        Ok((Cow::Owned(discretize_at(d, j, DEFAULT_BINS)?), true))
    }
}

/// Shannon entropy in bits with `0 log 0 = 0`.
pub fn entropy(p: &[f64]) -> Result<f64> {
    if let Some(bad) = p.iter().find(|v| !(**v >= 0.0)) {
        return Err(Error::param(format!("probability {bad} is negative or NaN")));
    }
    Ok(entropy_unchecked(p.iter().copied()))
}

pub(crate) fn entropy_unchecked(p: impl IntoIterator<Item = f64>) -> f64 {
    let h: f64 = p
        .into_iter()
        .filter(|&v| v > 0.0)
        .map(|v| -v * v.log2())
        .sum();
    h.max(0.0)
}

/// Joint distribution over an ordered list of discrete variables.
///
/// Configurations are tuples of value indices, one per variable; only
/// positive-probability tuples are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalPDM {
    variables: Vec<String>,
    values: Vec<Vec<String>>,
    support: BTreeMap<Vec<usize>, f64>,
}

impl EmpiricalPDM {
    const SUM_TOLERANCE: f64 = 1e-12;

    /// Builds a PDM from explicit `(configuration, probability)` pairs.
    /// Repeated configurations are summed; zero entries are dropped.
    pub fn new(
        variables: Vec<String>,
        values: Vec<Vec<String>>,
        entries: impl IntoIterator<Item = (Vec<usize>, f64)>,
    ) -> Result<Self> {
        if variables.len() != values.len() {
            return Err(Error::param("one value list per variable is required"));
        }
        {
            let mut seen = std::collections::HashSet::new();
            if let Some(dup) = variables.iter().find(|v| !seen.insert(*v)) {
                return Err(Error::param(format!("duplicate variable `{dup}`")));
            }
        }
        let mut support = BTreeMap::new();
        let mut total = 0.0;
        for (config, p) in entries {
            if config.len() != variables.len() {
                return Err(Error::param(format!(
                    "tuple arity {} does not match {} variables",
                    config.len(),
                    variables.len()
                )));
            }
            if let Some((v, _)) = config
                .iter()
                .zip(&values)
                .enumerate()
                .find(|(_, (x, vals))| **x >= vals.len())
            {
                return Err(Error::param(format!("value out of range for `{}`", variables[v])));
            }
            if !(p >= 0.0) || !p.is_finite() {
                return Err(Error::param(format!("invalid probability {p}")));
            }
            total += p;
            if p > 0.0 {
                *support.entry(config).or_insert(0.0) += p;
            }
        }
        if (total - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::param(format!("probabilities sum to {total}, not 1")));
        }
        Ok(EmpiricalPDM {
            variables,
            values,
            support,
        })
    }

    /// Binary variables `names`, probabilities given densely in
    /// lexicographic configuration order (first variable most significant).
    pub fn binary_dense(names: &[&str], probs: &[f64]) -> Result<Self> {
        let k = names.len();
        if probs.len() != 1 << k {
            return Err(Error::param(format!("expected {} probabilities", 1 << k)));
        }
        let entries = probs.iter().enumerate().map(|(idx, &p)| {
            let config = (0..k).map(|v| (idx >> (k - 1 - v)) & 1).collect();
            (config, p)
        });
        EmpiricalPDM::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![vec!["0".to_string(), "1".to_string()]; k],
            entries,
        )
    }

    /// Relative-frequency estimate over the named variables (features or
    /// the class column). Rows missing any selected feature are skipped;
    /// linear features are discretized into [`DEFAULT_BINS`] bins.
    pub fn from_dataset(d: &Dataset, variables: &[&str]) -> Result<Self> {
        enum Source {
            Feature(usize),
            Class,
        }
        let mut data = Cow::Borrowed(d);
        let mut sources = Vec::with_capacity(variables.len());
        for &name in variables {
            if name == d.class_name() {
                sources.push(Source::Class);
                continue;
            }
            let j = d.feature_index(name)?;
            if !data.feature(j).is_nominal() {
                data = Cow::Owned(discretize_at(&data, j, DEFAULT_BINS)?);
            }
            sources.push(Source::Feature(j));
        }
        let values = sources
            .iter()
            .map(|s| match s {
                Source::Class => data.class_values().to_vec(),
                Source::Feature(j) => data.feature(*j).values().unwrap().to_vec(),
            })
            .collect();
        let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        let mut n = 0u64;
        'rows: for (row, &c) in data.rows().iter().zip(data.labels()) {
            let mut config = Vec::with_capacity(sources.len());
            for s in &sources {
                match s {
                    Source::Class => config.push(c),
                    Source::Feature(j) => match row[*j] {
                        Cell::Symbol(x) => config.push(x),
                        _ => continue 'rows,
                    },
                }
            }
            *counts.entry(config).or_insert(0) += 1;
            n += 1;
        }
        if n == 0 {
            return Err(Error::usage("no complete rows for the requested variables"));
        }
        let support = counts
            .into_iter()
            .map(|(k, c)| (k, c as f64 / n as f64))
            .collect();
        Ok(EmpiricalPDM {
            variables: variables.iter().map(|s| s.to_string()).collect(),
            values,
            support,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn values(&self, var: usize) -> &[String] {
        &self.values[var]
    }

    pub fn cardinalities(&self) -> Vec<usize> {
        self.values.iter().map(Vec::len).collect()
    }

    pub fn support(&self) -> &BTreeMap<Vec<usize>, f64> {
        &self.support
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownFeature(name.to_string()))
    }

    /// Marginal over the given variable indices, in that order.
    pub fn marginal(&self, vars: &[usize]) -> EmpiricalPDM {
        let mut support = BTreeMap::new();
        for (config, &p) in &self.support {
            let key: Vec<usize> = vars.iter().map(|&v| config[v]).collect();
            *support.entry(key).or_insert(0.0) += p;
        }
        EmpiricalPDM {
            variables: vars.iter().map(|&v| self.variables[v].clone()).collect(),
            values: vars.iter().map(|&v| self.values[v].clone()).collect(),
            support,
        }
    }

    pub fn marginal_by_name(&self, names: &[&str]) -> Result<EmpiricalPDM> {
        let idx = names
            .iter()
            .map(|n| self.var_index(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.marginal(&idx))
    }

    /// Probability of a full configuration.
    pub fn prob(&self, config: &[usize]) -> f64 {
        self.support.get(config).copied().unwrap_or(0.0)
    }

    /// Joint entropy in bits.
    pub fn entropy(&self) -> f64 {
        entropy_unchecked(self.support.values().copied())
    }
}

fn check_pair(pdm: &EmpiricalPDM) -> Result<()> {
    if pdm.variables.len() != 2 {
        return Err(Error::usage(format!(
            "expected a PDM over two variables, got {}",
            pdm.variables.len()
        )));
    }
    Ok(())
}

/// `sum p(x,y) log2 (p(x,y) / (p(x)p(y)))`
pub fn mutual_information(pdm: &EmpiricalPDM) -> Result<f64> {
    check_pair(pdm)?;
    let px = pdm.marginal(&[0]);
    let py = pdm.marginal(&[1]);
    let mi: f64 = pdm
        .support
        .iter()
        .map(|(c, &p)| p * (p / (px.prob(&c[..1]) * py.prob(&c[1..]))).log2())
        .sum();
    Ok(mi.max(0.0))
}

/// `H(X) + H(Y) - H(X,Y)`; the entropy route to mutual information.
pub fn mutual_information_by_entropies(pdm: &EmpiricalPDM) -> Result<f64> {
    check_pair(pdm)?;
    Ok(pdm.marginal(&[0]).entropy() + pdm.marginal(&[1]).entropy() - pdm.entropy())
}

/// Kullback-Leibler divergence (bits) of the joint from the product of its
/// two marginals, summed over the full product space.
pub fn kl_joint_vs_product(pdm: &EmpiricalPDM) -> Result<f64> {
    check_pair(pdm)?;
    let cards = pdm.cardinalities();
    let px: Vec<f64> = (0..cards[0]).map(|x| pdm.marginal(&[0]).prob(&[x])).collect();
    let py: Vec<f64> = (0..cards[1]).map(|y| pdm.marginal(&[1]).prob(&[y])).collect();
    let mut kl = 0.0;
    for (x, &pxv) in px.iter().enumerate() {
        for (y, &pyv) in py.iter().enumerate() {
            let pj = pdm.prob(&[x, y]);
            if pj > 0.0 {
                kl += pj * (pj / (pxv * pyv)).log2();
            }
        }
    }
    Ok(kl.max(0.0))
}

/// `P(value | class)` table `[class][value]` for a nominal feature, from
/// rows where the feature is observed. With `laplace`, add-one smoothing.
pub fn class_conditional(d: &Dataset, feature: usize, laplace: bool) -> Result<Vec<Vec<f64>>> {
    let f = d.feature(feature);
    let v = match &f.domain {
        Domain::Nominal { values } => values.len(),
        Domain::Linear { .. } => {
            return Err(Error::usage(format!("feature `{}` is linear", f.name)))
        }
    };
    let mut counts = vec![vec![0u64; v]; d.n_classes()];
    for (row, &c) in d.rows().iter().zip(d.labels()) {
        if let Cell::Symbol(x) = row[feature] {
            counts[c][x] += 1;
        }
    }
    Ok(counts
        .into_iter()
        .map(|row| {
            let n: u64 = row.iter().sum();
            let (add, denom) = if laplace {
                (1.0, n as f64 + v as f64)
            } else {
                (0.0, n as f64)
            };
            row.into_iter()
                .map(|k| if denom > 0.0 { (k as f64 + add) / denom } else { 0.0 })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datamodel::{parse_dataset, FeatureKind, SchemaHint};
    use crate::fixtures::and_gate;
    use approx::assert_abs_diff_eq;

    #[test]
    fn contingency_and_gate_f1() {
        let t = contingency(&and_gate(), "f1").unwrap();
        assert_eq!(t.counts, vec![vec![2, 1], vec![0, 1]]);
        assert_eq!(t.total, 4);
        assert_eq!(t.row_totals, vec![3, 1]);
        assert_eq!(t.col_totals, vec![2, 2]);
    }

    #[test]
    fn contingency_single_class() {
        let d = parse_dataset("a,class\nx,k\ny,k\nx,k\n", None).unwrap();
        let t = contingency(&d, "a").unwrap();
        assert_eq!(t.counts.len(), 1);
        assert_eq!(t.counts[0], t.col_totals);
    }

    #[test]
    fn contingency_rejects_linear_and_all_missing() {
        let d = parse_dataset("a,b,class\n1.5,x,0\n2.5,?,1\n", None).unwrap();
        assert!(matches!(contingency(&d, "a"), Err(Error::Usage(_))));
        let hint: SchemaHint = [("a".to_string(), FeatureKind::Nominal)].into();
        let d = parse_dataset("a,b,class\n1,x,0\n?,y,1\n", Some(&hint)).unwrap();
        let dd = d.replace_feature(0, d.feature(0).clone(), vec![Cell::Missing; 2]).unwrap();
        assert!(matches!(contingency(&dd, "a"), Err(Error::Usage(_))));
    }

    #[test]
    fn missing_cells_excluded_from_table() {
        let d = parse_dataset("a,class\nx,0\n?,1\ny,0\n", None).unwrap();
        assert_eq!(contingency(&d, "a").unwrap().total, 2);
    }

    fn bins_of(values: &[f64], bins: usize) -> Vec<usize> {
        let text: String = std::iter::once("v,class\n".to_string())
            .chain(values.iter().map(|v| format!("{v},0\n")))
            .collect();
        let d = parse_dataset(&text, None).unwrap();
        let dd = discretize(&d, "v", bins).unwrap();
        dd.rows().iter().map(|r| r[0].symbol().unwrap()).collect()
    }

    #[test]
    fn discretize_equal_width() {
        let vals: Vec<f64> = (0..=10).map(f64::from).collect();
        let b = bins_of(&vals, 2);
        assert_eq!(&b[..5], &[0; 5]);
        assert_eq!(&b[5..], &[1; 6]);
        assert_eq!(bins_of(&[0.0, 0.25, 0.5, 0.75, 1.0], 4), vec![0, 1, 2, 3, 3]);
        assert_eq!(bins_of(&[3.0, 3.0, 3.0], 5), vec![0, 0, 0]);
    }

    #[test]
    fn discretize_errors() {
        let d = and_gate();
        assert!(matches!(discretize(&d, "f1", 4), Err(Error::Usage(_))));
        let d = parse_dataset("v,class\n1,0\n2,1\n", None).unwrap();
        assert!(matches!(discretize(&d, "v", 1), Err(Error::Parameter(_))));
    }

    #[test]
    fn entropy_values() {
        assert_abs_diff_eq!(entropy(&[0.5, 0.5]).unwrap(), 1.0);
        assert_eq!(entropy(&[1.0, 0.0]).unwrap(), 0.0);
        // -(3/4)log2(3/4) - (1/4)log2(1/4) = 2 - (3/4)log2 3
        let expected = 2.0 - 0.75 * 3f64.log2();
        assert_abs_diff_eq!(entropy(&[0.75, 0.25]).unwrap(), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(entropy(&[0.75, 0.25]).unwrap(), 0.811278124459, epsilon = 1e-11);
        assert!(matches!(entropy(&[-0.1, 1.1]), Err(Error::Parameter(_))));
    }

    #[test]
    fn mutual_information_limits() {
        let indep = EmpiricalPDM::binary_dense(&["x", "y"], &[0.25; 4]).unwrap();
        assert_abs_diff_eq!(mutual_information(&indep).unwrap(), 0.0, epsilon = 1e-15);
        let copy = EmpiricalPDM::binary_dense(&["x", "y"], &[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_abs_diff_eq!(mutual_information(&copy).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn mutual_information_and_gate_f1_class() {
        // joint (f1,C): (0,0)=1/2, (1,0)=1/4, (1,1)=1/4
        // MI = H(f1) + H(C) - H(f1,C) = 1 + H(3/4,1/4) - 1.5
        let pdm = EmpiricalPDM::from_dataset(&and_gate(), &["f1", "C"]).unwrap();
        let expected = 1.0 + (2.0 - 0.75 * 3f64.log2()) - 1.5;
        assert_abs_diff_eq!(mutual_information(&pdm).unwrap(), expected, epsilon = 1e-14);
        assert_abs_diff_eq!(mutual_information(&pdm).unwrap(), 0.311278124459, epsilon = 1e-11);
    }

    #[test]
    fn pdm_validation() {
        assert!(EmpiricalPDM::binary_dense(&["a"], &[0.5, 0.6]).is_err());
        assert!(EmpiricalPDM::binary_dense(&["a"], &[1.5, -0.5]).is_err());
        assert!(EmpiricalPDM::new(
            vec!["a".into()],
            vec![vec!["0".into()]],
            vec![(vec![0, 1], 1.0)]
        )
        .is_err());
        assert!(mutual_information(&EmpiricalPDM::binary_dense(&["a"], &[0.5, 0.5]).unwrap()).is_err());
    }

    #[test]
    fn laplace_conditional_never_zero() {
        let d = and_gate();
        let raw = class_conditional(&d, 2, false).unwrap();
        assert_eq!(raw[0], vec![0.0, 1.0]);
        let smooth = class_conditional(&d, 2, true).unwrap();
        assert_abs_diff_eq!(smooth[0][0], 1.0 / 5.0);
        assert_abs_diff_eq!(smooth[1][0], 2.0 / 3.0);
    }
}
