//! One entry point over every weighting algorithm, used by the command line
//! and the C interface.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::datamodel::{Dataset, FeatureWeights};
use crate::double::{run_double_relief, DoubleVariant, ProgressiveSchedule};
use crate::error::{Error, Result};
use crate::filters::{self, FilterMeasure};
use crate::relief::{run_relief, DiffMetric, Iterations, ReliefConfig, ReliefVariant, DEFAULT_K};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Pcf,
    Vdm,
    Filter(FilterMeasure),
    Relief(ReliefVariant),
    Double(DoubleVariant),
}

impl Algorithm {
    pub fn all() -> Vec<Algorithm> {
        let mut v = vec![Algorithm::Pcf, Algorithm::Vdm];
        v.extend(FilterMeasure::ALL.map(Algorithm::Filter));
        v.extend(
            [
                ReliefVariant::Original,
                ReliefVariant::Relieved,
                ReliefVariant::ReliefF,
                ReliefVariant::Myopic,
            ]
            .map(Algorithm::Relief),
        );
        v.extend([DoubleVariant::DReliefF, DoubleVariant::PdReliefF].map(Algorithm::Double));
        v
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pcf => "pcf",
            Algorithm::Vdm => "vdm",
            Algorithm::Filter(m) => m.name(),
            Algorithm::Relief(v) => v.name(),
            Algorithm::Double(v) => v.name(),
        }
    }

    /// True when the result depends on `seed`.
    pub fn is_stochastic(self) -> bool {
        matches!(
            self,
            Algorithm::Relief(ReliefVariant::Original | ReliefVariant::ReliefF) | Algorithm::Double(_)
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Algorithm::all()
            .into_iter()
            .find(|a| a.name() == lower)
            .ok_or_else(|| {
                let names: Vec<&str> = Algorithm::all().iter().map(|a| a.name()).collect();
                Error::usage(format!("unknown algorithm `{s}`; expected one of {}", names.join(", ")))
            })
    }
}

/// Parameters for [`weigh`]; each algorithm reads only the ones it uses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeighParams {
    pub k: usize,
    pub m: Iterations,
    pub seed: u64,
    pub diff: DiffMetric,
    pub schedule: ProgressiveSchedule,
    /// Positive feature value for PCF and binary CCF (default: first value).
    pub positive: Option<String>,
    /// Class whose PCF probability becomes the feature weight (default: first class).
    pub class: Option<String>,
    pub vdm_classic: bool,
}

impl Default for WeighParams {
    fn default() -> Self {
        WeighParams {
            k: DEFAULT_K,
            m: Iterations::All,
            seed: 0,
            diff: DiffMetric::heom(),
            schedule: ProgressiveSchedule::auto(),
            positive: None,
            class: None,
            vdm_classic: false,
        }
    }
}

impl WeighParams {
    fn relief_config(&self, variant: ReliefVariant) -> ReliefConfig {
        ReliefConfig {
            variant,
            m: self.m,
            k: self.k,
            seed: self.seed,
            diff: self.diff,
        }
    }
}

pub fn weigh(d: &Dataset, algorithm: Algorithm, p: &WeighParams) -> Result<FeatureWeights> {
    match algorithm {
        Algorithm::Filter(m) => filters::weigh(d, m, p.positive.as_deref()),
        Algorithm::Relief(v) => run_relief(d, &p.relief_config(v)),
        Algorithm::Double(v) => {
            run_double_relief(d, &p.relief_config(ReliefVariant::ReliefF), v, p.schedule)
        }
        Algorithm::Pcf => {
            let class = match &p.class {
                None => d.class_values()[0].clone(),
                Some(c) if d.class_values().contains(c) => c.clone(),
                Some(c) => return Err(Error::param(format!("class `{c}` does not occur"))),
            };
            let values = d
                .feature_names()
                .map(|f| Ok(filters::pcf_weights(d, f, p.positive.as_deref())?[&class]))
                .collect::<Result<Vec<_>>>()?;
            let mut w = FeatureWeights::new("pcf", d, values).with_param("class", class);
            if let Some(pos) = &p.positive {
                w = w.with_param("positive", pos.clone());
            }
            Ok(w)
        }
        Algorithm::Vdm => {
            let values = d
                .feature_names()
                .map(|f| filters::vdm_score(d, f, p.vdm_classic))
                .collect::<Result<Vec<_>>>()?;
            Ok(FeatureWeights::new("vdm", d, values).with_param("classic", p.vdm_classic))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::and_gate;

    #[test]
    fn names_round_trip() {
        let all = Algorithm::all();
        assert_eq!(all.len(), 17);
        for a in all {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("nope".parse::<Algorithm>().is_err());
    }

    #[test]
    fn every_algorithm_runs_on_binary_data() {
        let d = and_gate();
        let p = WeighParams {
            k: 1,
            ..WeighParams::default()
        };
        for a in Algorithm::all() {
            let w = weigh(&d, a, &p).unwrap_or_else(|e| panic!("{a}: {e}"));
            assert_eq!(w.weights.len(), 3, "{a}");
            assert!(w.weights.values().all(|v| v.is_finite()), "{a}");
        }
    }

    #[test]
    fn pcf_class_selection() {
        let d = and_gate();
        let p = WeighParams {
            class: Some("1".into()),
            ..WeighParams::default()
        };
        // P(C = 1 | f1 = 0) = 0
        assert_eq!(weigh(&d, Algorithm::Pcf, &p).unwrap().weights["f1"], 0.0);
        let bad = WeighParams {
            class: Some("7".into()),
            ..WeighParams::default()
        };
        assert!(weigh(&d, Algorithm::Pcf, &bad).is_err());
    }
}
