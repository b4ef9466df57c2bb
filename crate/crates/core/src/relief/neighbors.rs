use std::collections::BTreeMap;

use super::diff::{check_factors, check_index, DiffContext, DiffMetric};
use crate::datamodel::Dataset;
use crate::error::{Error, Result};

/// Nearest hits and per-class nearest misses of one query instance.
///
/// Each list is ordered by `(distance, index)` ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NeighborSet {
    pub hits: Vec<usize>,
    /// Keyed by class index; only classes other than the query's.
    pub misses: BTreeMap<usize, Vec<usize>>,
}

/// `k` smallest `(distance, index)` pairs, sorted.
fn k_smallest(mut candidates: Vec<(f64, usize)>, k: usize) -> Vec<usize> {
    let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    if candidates.len() > k {
        candidates.select_nth_unstable_by(k - 1, cmp);
        candidates.truncate(k);
    }
    candidates.sort_unstable_by(cmp);
    candidates.into_iter().map(|(_, i)| i).collect()
}

impl DiffContext<'_> {
    /// Neighbor search by exact scan; ties go to the lower instance index.
    pub fn neighbors(&self, query: usize, k: usize, factors: Option<&[f64]>) -> NeighborSet {
        let data = self.data();
        let dist = self.distances_from(query, factors);
        let mut buckets: Vec<Vec<(f64, usize)>> = vec![Vec::new(); data.n_classes()];
        for (j, &dj) in dist.iter().enumerate() {
            if j != query {
                buckets[data.label(j)].push((dj, j));
            }
        }
        let own = data.label(query);
        let mut set = NeighborSet::default();
        for (c, bucket) in buckets.into_iter().enumerate() {
            if c == own {
                set.hits = k_smallest(bucket, k);
            } else if !bucket.is_empty() {
                set.misses.insert(c, k_smallest(bucket, k));
            }
        }
        set
    }
}

/// `k` nearest hits and, for every other class, `k` nearest misses of
/// `query` under the basic metric (optionally weighted).
pub fn find_neighbors(
    d: &Dataset,
    query: usize,
    k: usize,
    weights: Option<&[f64]>,
) -> Result<NeighborSet> {
    if k == 0 {
        return Err(Error::param("k must be >= 1"));
    }
    check_index(d, query)?;
    if let Some(w) = weights {
        check_factors(w, d.n_features())?;
    }
    Ok(DiffContext::new(d, DiffMetric::heom())?.neighbors(query, k, weights))
}
