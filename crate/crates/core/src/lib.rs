//! Feature weighting with the Relief family, classic filter measures,
//! exhaustive redundancy analysis, synthetic benchmarks and a 1-NN
//! evaluation harness.
//!
//! ```
//! use relieve_core::relief::{run_relief, ReliefConfig};
//! use relieve_core::synthgen::gen_modulo;
//!
//! let (data, _truth) = gen_modulo(2, 2, 3, 200, 7).unwrap();
//! let w = run_relief(&data, &ReliefConfig::default()).unwrap();
//! assert_eq!(w.weights.len(), 5);
//! ```

pub mod datamodel;
pub mod double;
pub mod error;
pub mod evalharness;
pub mod filters;
pub mod probstats;
pub mod redundancy;
pub mod relief;
pub mod synthgen;
pub mod weighting;

#[cfg(test)]
mod fixtures;

pub use datamodel::{load_dataset, parse_dataset, Dataset, FeatureWeights};
pub use error::{Error, Result};
