//! Self-weighted ReliefF: neighbor distances use the running weight
//! estimate as per-feature factors.
//!
//! `dReliefF` uses the current estimate directly. `pdReliefF` passes it
//! through `f(w, t) = (1 - w) / t^T + w`, which starts every factor at 1 and
//! converges to the estimate as iterations progress.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::datamodel::{Dataset, FeatureWeights};
use crate::error::{Error, Result};
use crate::relief::{
    clamp_unit, selection_order, update_delta, DiffContext, ReliefConfig, ReliefVariant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DoubleVariant {
    DReliefF,
    PdReliefF,
}

impl DoubleVariant {
    pub fn name(self) -> &'static str {
        match self {
            DoubleVariant::DReliefF => "drelieff",
            DoubleVariant::PdReliefF => "pdrelieff",
        }
    }
}

impl fmt::Display for DoubleVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DoubleVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "drelieff" => Ok(DoubleVariant::DReliefF),
            "pdrelieff" => Ok(DoubleVariant::PdReliefF),
            _ => Err(Error::usage(format!("unknown double Relief variant `{s}`"))),
        }
    }
}

/// How the steepness exponent `T` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum Calibration {
    Fixed(f64),
    /// `T = 2 / ln m`, so that `f(w, m) = w + (1 - w) e^-2` for every `m`.
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ProgressiveSchedule {
    pub calibration: Calibration,
}

impl ProgressiveSchedule {
    pub fn fixed(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::param(format!("T must be a positive finite number, got {t}")));
        }
        Ok(ProgressiveSchedule {
            calibration: Calibration::Fixed(t),
        })
    }

    pub fn auto() -> Self {
        ProgressiveSchedule {
            calibration: Calibration::Auto,
        }
    }

    /// Steepness exponent for a run of `m` iterations.
    pub fn steepness(&self, m: usize) -> Result<f64> {
        match self.calibration {
            Calibration::Fixed(t) if t > 0.0 && t.is_finite() => Ok(t),
            Calibration::Fixed(t) => Err(Error::param(format!(
                "T must be a positive finite number, got {t}"
            ))),
            Calibration::Auto if m >= 2 => Ok(2.0 / (m as f64).ln()),
            Calibration::Auto => Err(Error::param("automatic T needs m >= 2")),
        }
    }
}

/// `f(w, t) = (1 - w) / t^T + w` with `t >= 1`.
pub fn progressive_factor(w: f64, t: usize, steepness: f64) -> Result<f64> {
    if t < 1 {
        return Err(Error::param("iteration index starts at 1"));
    }
    Ok(schedule(w, t, steepness))
}

#[inline]
fn schedule(w: f64, t: usize, steepness: f64) -> f64 {
    (1.0 - w) / (t as f64).powf(steepness) + w
}

/// Distance factors for iteration `t` from the running estimate, or `None`
/// when every factor is 0 (plain unweighted distance is used instead).
fn factors(
    variant: DoubleVariant,
    running: &[f64],
    t: usize,
    steepness: f64,
) -> Option<Vec<f64>> {
    let g: Vec<f64> = match variant {
        DoubleVariant::DReliefF => running.iter().map(|&w| w.max(0.0)).collect(),
        DoubleVariant::PdReliefF => running
            .iter()
            .map(|&w| schedule(w, t, steepness).max(0.0))
            .collect(),
    };
    if g.iter().all(|&x| x == 0.0) {
        None
    } else {
        Some(g)
    }
}

/// Runs dReliefF or pdReliefF with the ReliefF update rule.
///
/// `cfg.variant` is ignored; `cfg.k`, `cfg.m`, `cfg.seed` and `cfg.diff` apply
/// as for ReliefF. Iterations are sequential because each one reads the
/// estimate left by its predecessors.
pub fn run_double_relief(
    d: &Dataset,
    cfg: &ReliefConfig,
    variant: DoubleVariant,
    sched: ProgressiveSchedule,
) -> Result<FeatureWeights> {
    let cfg = ReliefConfig {
        variant: ReliefVariant::ReliefF,
        ..*cfg
    };
    cfg.validate(d)?;
    let ctx = DiffContext::new(d, cfg.diff)?;
    let order = selection_order(&cfg, d.n_instances())?;
    let m = order.len();
    let steepness = match variant {
        DoubleVariant::PdReliefF => sched.steepness(m)?,
        DoubleVariant::DReliefF => 1.0,
    };
    let priors = d.class_priors();

    let mut sum = vec![0.0; d.n_features()];
    let mut running = vec![0.0; d.n_features()];
    let mut fallbacks = 0usize;
    for (i, &q) in order.iter().enumerate() {
        let t = i + 1;
        if t > 1 {
            let scale = m as f64 / (t - 1) as f64;
            for (r, s) in running.iter_mut().zip(&sum) {
                *r = s * scale;
            }
        }
        let g = factors(variant, &running, t, steepness);
        if g.is_none() {
            fallbacks += 1;
        }
        let nb = ctx.neighbors(q, cfg.k, g.as_deref());
        let delta = update_delta(&ctx, q, &nb, &priors, m);
        for (s, dl) in sum.iter_mut().zip(&delta) {
            *s += dl;
        }
    }
    clamp_unit(&mut sum);

    let mut fw = FeatureWeights::new(variant.name(), d, sum)
        .with_param("k", cfg.k)
        .with_param("m", m)
        .with_param("seed", cfg.seed)
        .with_param("diff", serde_json::to_value(cfg.diff).unwrap_or_default());
    if variant == DoubleVariant::PdReliefF {
        fw = fw.with_param("T", steepness);
    }
    if fallbacks > 0 {
        fw.notes.push(format!(
            "{fallbacks} of {m} iterations had no positive distance factor and used unweighted distance"
        ));
    }
    Ok(fw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relief::{run_relief, Iterations};
    use crate::synthgen;
    use approx::assert_abs_diff_eq;

    #[test]
    fn factor_at_first_iteration_is_one() {
        for &(w, t) in &[(0.5, 0.3), (-0.7, 4.0), (1.0, 0.01), (0.0, 2.0)] {
            assert_eq!(progressive_factor(w, 1, t).unwrap(), 1.0);
        }
        assert!(progressive_factor(0.5, 0, 1.0).is_err());
    }

    #[test]
    fn factor_converges_to_weight() {
        let f = progressive_factor(0.3, 1_000_000, 2.0).unwrap();
        assert_abs_diff_eq!(f, 0.3, epsilon = 1e-11);
    }

    #[test]
    fn auto_final_factor_is_m_independent() {
        let expected = 0.5 + 0.5 * (-2.0f64).exp();
        assert_abs_diff_eq!(expected, 0.56767, epsilon = 1e-5);
        for m in [2usize, 10, 10_000] {
            let t = ProgressiveSchedule::auto().steepness(m).unwrap();
            assert_abs_diff_eq!(progressive_factor(0.5, m, t).unwrap(), expected, epsilon = 1e-12);
        }
        assert!(ProgressiveSchedule::auto().steepness(1).is_err());
        assert!(ProgressiveSchedule::fixed(0.0).is_err());
    }

    #[test]
    fn all_zero_factors_fall_back() {
        assert!(factors(DoubleVariant::DReliefF, &[0.0, -0.2], 3, 1.0).is_none());
        assert_eq!(
            factors(DoubleVariant::DReliefF, &[0.1, -0.2], 3, 1.0),
            Some(vec![0.1, 0.0])
        );
        assert_eq!(
            factors(DoubleVariant::PdReliefF, &[0.0, 0.0], 1, 1.0),
            Some(vec![1.0, 1.0])
        );
    }

    #[test]
    fn pdrelieff_single_iteration_matches_relieff() {
        let (d, _) = synthgen::gen_modulo(2, 2, 4, 80, 3).unwrap();
        let cfg = ReliefConfig::default()
            .with_k(5)
            .with_m(Iterations::Count(1))
            .with_seed(9);
        let plain = run_relief(&d, &cfg).unwrap();
        let sched = ProgressiveSchedule::fixed(1.0).unwrap();
        let double = run_double_relief(&d, &cfg, DoubleVariant::PdReliefF, sched).unwrap();
        assert_eq!(plain.weights, double.weights);
    }

    #[test]
    fn repeated_runs_identical() {
        let (d, _) = synthgen::gen_corral(64, 2).unwrap();
        let cfg = ReliefConfig::default().with_k(5).with_seed(1);
        for v in [DoubleVariant::DReliefF, DoubleVariant::PdReliefF] {
            let a = run_double_relief(&d, &cfg, v, ProgressiveSchedule::auto()).unwrap();
            let b = run_double_relief(&d, &cfg, v, ProgressiveSchedule::auto()).unwrap();
            assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        }
    }

    #[test]
    fn drelieff_reports_cold_start() {
        let (d, _) = synthgen::gen_corral(32, 5).unwrap();
        let cfg = ReliefConfig::default().with_k(3);
        let w = run_double_relief(&d, &cfg, DoubleVariant::DReliefF, ProgressiveSchedule::auto())
            .unwrap();
        assert!(!w.notes.is_empty());
    }
}
