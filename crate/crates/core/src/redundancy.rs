//! Conditional independence, Markov blankets and the redundancy level of a
//! feature, all by exhaustive enumeration over an [`EmpiricalPDM`].
//!
//! The redundancy level of `alpha` within a variable set `U` is
//! `1 - min_S D(S)` over strict subsets `S` of `U - alpha`, where `D(S)` is the
//! mean over every value `a` of `alpha` and every positive-probability
//! configuration `r` of `U - alpha` of `|P(a | r restricted to S) - P(a | r)|`.
//! A level of 1 means some subset carries all of the information `alpha`
//! has about the rest of `U`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::probstats::EmpiricalPDM;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_CAP: usize = 15;
/// Discrepancies closer than this count as tied, so summation-order noise
/// cannot override the smallest-then-lexicographic subset rule.
pub const TIE_EPSILON: f64 = 1e-12;

/// `X` independent of `Y` given `Z`, with equality up to `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndependenceQuery {
    pub x: Vec<String>,
    pub z: Vec<String>,
    pub y: Vec<String>,
    pub tolerance: f64,
}

impl IndependenceQuery {
    pub fn new(x: &[&str], z: &[&str], y: &[&str]) -> Self {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        IndependenceQuery {
            x: own(x),
            z: own(z),
            y: own(y),
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }
}

fn indices(pdm: &EmpiricalPDM, names: &[String]) -> Result<Vec<usize>> {
    names.iter().map(|n| pdm.var_index(n)).collect()
}

fn check_tolerance(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::param(format!("tolerance must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// True iff `|P(x | y, z) - P(x | z)| <= tolerance` for every configuration
/// with `P(y, z) > 0`.
pub fn conditionally_independent(pdm: &EmpiricalPDM, q: &IndependenceQuery) -> Result<bool> {
    if q.x.is_empty() {
        return Err(Error::usage("the independent set X must not be empty"));
    }
    check_tolerance(q.tolerance)?;
    let xi = indices(pdm, &q.x)?;
    let zi = indices(pdm, &q.z)?;
    let yi = indices(pdm, &q.y)?;
    let mut all: Vec<usize> = xi.iter().chain(&zi).chain(&yi).copied().collect();
    let n_all = all.len();
    all.sort_unstable();
    all.dedup();
    if all.len() != n_all {
        return Err(Error::usage("X, Y and Z must be pairwise disjoint"));
    }
    if yi.is_empty() {
        return Ok(true);
    }

    let (nx, nz) = (xi.len(), zi.len());
    let order: Vec<usize> = xi.iter().chain(&zi).chain(&yi).copied().collect();
    let joint = pdm.marginal(&order);

    // (z) -> P(z), (z, x) -> P(x, z), (z, y) -> P(y, z), (z, y, x) -> P(x, y, z)
    let mut p_z: HashMap<&[usize], f64> = HashMap::new();
    let mut p_xz: HashMap<(&[usize], &[usize]), f64> = HashMap::new();
    let mut p_yz: HashMap<(&[usize], &[usize]), f64> = HashMap::new();
    for (config, &p) in joint.support() {
        let (x, rest) = config.split_at(nx);
        let (z, y) = rest.split_at(nz);
        *p_z.entry(z).or_default() += p;
        *p_xz.entry((z, x)).or_default() += p;
        *p_yz.entry((z, y)).or_default() += p;
    }
    let mut xs_given_z: HashMap<&[usize], Vec<&[usize]>> = HashMap::new();
    for &(z, x) in p_xz.keys() {
        xs_given_z.entry(z).or_default().push(x);
    }
    let mut lookup: HashMap<(&[usize], &[usize], &[usize]), f64> = HashMap::new();
    for (config, &p) in joint.support() {
        let (x, rest) = config.split_at(nx);
        let (z, y) = rest.split_at(nz);
        lookup.insert((z, y, x), p);
    }

    for (&(z, y), &pyz) in &p_yz {
        let pz = p_z[z];
        for &x in &xs_given_z[z] {
            let pxyz = lookup.get(&(z, y, x)).copied().unwrap_or(0.0);
            let lhs = pxyz / pyz;
            let rhs = p_xz[&(z, x)] / pz;
            if (lhs - rhs).abs() > q.tolerance {
                return Ok(false);
            }
        }
        // x values seen with (y, z) but never with z alone cannot occur.
    }
    Ok(true)
}

/// `alpha` is independent of every other variable of the PDM given `s`.
pub fn is_markov_blanket(pdm: &EmpiricalPDM, alpha: &str, s: &[&str], tolerance: f64) -> Result<bool> {
    if s.contains(&alpha) {
        return Err(Error::usage(format!("`{alpha}` cannot belong to its own blanket")));
    }
    pdm.var_index(alpha)?;
    for v in s {
        pdm.var_index(v)?;
    }
    let rest: Vec<&str> = pdm
        .variables()
        .iter()
        .map(String::as_str)
        .filter(|v| *v != alpha && !s.contains(v))
        .collect();
    if rest.is_empty() {
        return Ok(true);
    }
    let q = IndependenceQuery::new(&[alpha], s, &rest).with_tolerance(tolerance);
    conditionally_independent(pdm, &q)
}

/// First subset of `candidates` (by size, then lexicographically in PDM
/// variable order) that is a Markov blanket of `alpha` within the PDM
/// restricted to `universe`. The trivial blanket `universe - alpha` is not
/// considered.
pub fn find_markov_blanket(
    pdm: &EmpiricalPDM,
    alpha: &str,
    universe: &[&str],
    candidates: &[&str],
    tolerance: f64,
) -> Result<Option<Vec<String>>> {
    let restricted = restrict(pdm, alpha, universe)?;
    let pool: Vec<&str> = restricted
        .variables()
        .iter()
        .map(String::as_str)
        .filter(|v| *v != alpha && candidates.contains(v))
        .collect();
    let others = restricted.variables().len() - 1;
    for size in 0..=pool.len() {
        for subset in combinations(pool.len(), size) {
            if size == others {
                continue;
            }
            let s: Vec<&str> = subset.iter().map(|&i| pool[i]).collect();
            if is_markov_blanket(&restricted, alpha, &s, tolerance)? {
                return Ok(Some(s.iter().map(|v| v.to_string()).collect()));
            }
        }
    }
    Ok(None)
}

/// Marginal of `pdm` over `universe` (kept in PDM variable order), checking
/// that `alpha` belongs to it.
fn restrict(pdm: &EmpiricalPDM, alpha: &str, universe: &[&str]) -> Result<EmpiricalPDM> {
    let mut idx = universe
        .iter()
        .map(|n| pdm.var_index(n))
        .collect::<Result<Vec<_>>>()?;
    idx.sort_unstable();
    idx.dedup();
    let alpha_idx = pdm.var_index(alpha)?;
    if !idx.contains(&alpha_idx) {
        return Err(Error::usage(format!("`{alpha}` is not in the universe")));
    }
    Ok(pdm.marginal(&idx))
}

/// All `size`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut c: Vec<usize> = (0..size).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..size).rev().find(|&i| c[i] != i + n - size) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..size {
            c[j] = c[j - 1] + 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimum {
    /// Smallest mean discrepancy over subsets.
    #[default]
    Min,
    /// Largest mean discrepancy over subsets.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RedundancyOptions {
    pub optimum: Optimum,
    /// Discrepancies at or below this count as zero (level snapped to 1).
    pub tolerance: f64,
    /// Maximum universe size searched without `force`.
    pub cap: usize,
    pub force: bool,
}

impl Default for RedundancyOptions {
    fn default() -> Self {
        RedundancyOptions {
            optimum: Optimum::Min,
            tolerance: DEFAULT_TOLERANCE,
            cap: DEFAULT_CAP,
            force: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RedundancyResult {
    pub feature: String,
    pub level: f64,
    pub best_subset: Vec<String>,
    pub evaluated_subsets: u64,
    pub optimum: Optimum,
}

/// Pre-grouped view of the PDM restricted to a universe: one entry per
/// positive-probability configuration `r` of `U - alpha`.
struct Table {
    /// Value indices of `r` over the other variables.
    configs: Vec<Vec<usize>>,
    /// `P(r, a)` for every value `a` of alpha.
    joint: Vec<Vec<f64>>,
    /// `P(a | r)`.
    conditional: Vec<Vec<f64>>,
    cards: Vec<usize>,
    alpha_card: usize,
}

impl Table {
    fn new(pdm: &EmpiricalPDM, alpha_pos: usize) -> Self {
        let alpha_card = pdm.values(alpha_pos).len();
        let mut grouped: BTreeMap<Vec<usize>, Vec<f64>> = BTreeMap::new();
        for (config, &p) in pdm.support() {
            let r: Vec<usize> = config
                .iter()
                .enumerate()
                .filter(|&(v, _)| v != alpha_pos)
                .map(|(_, &x)| x)
                .collect();
            grouped.entry(r).or_insert_with(|| vec![0.0; alpha_card])[config[alpha_pos]] += p;
        }
        let cards = pdm
            .cardinalities()
            .into_iter()
            .enumerate()
            .filter(|&(v, _)| v != alpha_pos)
            .map(|(_, c)| c)
            .collect();
        let (configs, joint): (Vec<_>, Vec<_>) = grouped.into_iter().unzip();
        let conditional = joint
            .iter()
            .map(|pa: &Vec<f64>| {
                let pr: f64 = pa.iter().sum();
                pa.iter().map(|p| p / pr).collect()
            })
            .collect();
        Table {
            configs,
            joint,
            conditional,
            cards,
            alpha_card,
        }
    }

    /// Group id of every `r` after projecting onto `subset`.
    fn groups(&self, subset: &[usize]) -> (Vec<usize>, usize) {
        let radix = subset
            .iter()
            .try_fold(1u64, |acc, &v| acc.checked_mul(self.cards[v] as u64));
        let mut ids = Vec::with_capacity(self.configs.len());
        match radix {
            Some(_) => {
                let mut index: HashMap<u64, usize> = HashMap::new();
                for r in &self.configs {
                    let key = subset
                        .iter()
                        .fold(0u64, |acc, &v| acc * self.cards[v] as u64 + r[v] as u64);
                    let next = index.len();
                    ids.push(*index.entry(key).or_insert(next));
                }
                (ids, index.len())
            }
            None => {
                let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
                for r in &self.configs {
                    let key: Vec<usize> = subset.iter().map(|&v| r[v]).collect();
                    let next = index.len();
                    ids.push(*index.entry(key).or_insert(next));
                }
                (ids, index.len())
            }
        }
    }

    /// Mean of `|P(a | s_r) - P(a | r)|` over all `(a, r)`.
    fn discrepancy(&self, subset: &[usize]) -> f64 {
        let k = self.alpha_card;
        let (ids, n_groups) = self.groups(subset);
        let mut p_sa = vec![0.0; n_groups * k];
        for (g, pa) in ids.iter().zip(&self.joint) {
            for (slot, p) in p_sa[g * k..(g + 1) * k].iter_mut().zip(pa) {
                *slot += p;
            }
        }
        for g in 0..n_groups {
            let row = &mut p_sa[g * k..(g + 1) * k];
            let ps: f64 = row.iter().sum();
            for x in row {
                *x /= ps;
            }
        }
        let total: f64 = ids
            .iter()
            .zip(&self.conditional)
            .map(|(g, pr)| {
                p_sa[g * k..(g + 1) * k]
                    .iter()
                    .zip(pr)
                    .map(|(a, b)| (a - b).abs())
                    .sum::<f64>()
            })
            .sum();
        total / (self.configs.len() * k) as f64
    }
}

/// Redundancy level of `alpha` within `universe` (all PDM variables when
/// `None`).
pub fn redundancy_level(
    pdm: &EmpiricalPDM,
    alpha: &str,
    universe: Option<&[&str]>,
    opts: &RedundancyOptions,
) -> Result<RedundancyResult> {
    check_tolerance(opts.tolerance)?;
    let all: Vec<&str> = pdm.variables().iter().map(String::as_str).collect();
    let restricted = restrict(pdm, alpha, universe.unwrap_or(&all))?;
    let vars = restricted.variables();
    let alpha_pos = restricted.var_index(alpha)?;
    let others: Vec<&str> = vars
        .iter()
        .map(String::as_str)
        .filter(|v| *v != alpha)
        .collect();
    if others.is_empty() {
        return Err(Error::usage(format!(
            "the universe holds no variable besides `{alpha}`"
        )));
    }
    let table = Table::new(&restricted, alpha_pos);
    if vars.len() > opts.cap && !opts.force {
        let subsets = 1u128.checked_shl(others.len() as u32).unwrap_or(u128::MAX) - 1;
        return Err(Error::TooExpensive {
            variables: vars.len(),
            cap: opts.cap,
            subsets,
            configurations: (table.configs.len() * table.alpha_card) as u128,
        });
    }

    let q = others.len();
    let mut evaluated = 0u64;
    let mut best: Option<(f64, Vec<usize>)> = None;
    for size in 0..q {
        let level_subsets = combinations(q, size);
        evaluated += level_subsets.len() as u64;
        let scores: Vec<f64> = level_subsets
            .par_iter()
            .map(|s| table.discrepancy(s))
            .collect();
        for (s, d) in level_subsets.into_iter().zip(scores) {
            let better = match (&best, opts.optimum) {
                (None, _) => true,
                (Some((b, _)), Optimum::Min) => d < *b - TIE_EPSILON,
                (Some((b, _)), Optimum::AsPrinted) => d > *b + TIE_EPSILON,
            };
            if better {
                best = Some((d, s));
            }
        }
        if opts.optimum == Optimum::Min {
            if let Some((d, _)) = &best {
                if *d <= opts.tolerance {
                    break;
                }
            }
        }
    }
    let (d, subset) = best.expect("at least the empty subset is evaluated");
    let level = if opts.optimum == Optimum::Min && d <= opts.tolerance {
        1.0
    } else {
        (1.0 - d).clamp(0.0, 1.0)
    };
    Ok(RedundancyResult {
        feature: alpha.to_string(),
        level,
        best_subset: subset.iter().map(|&i| others[i].to_string()).collect(),
        evaluated_subsets: evaluated,
        optimum: opts.optimum,
    })
}
