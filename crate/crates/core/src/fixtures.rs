//! Shared test datasets.

use crate::datamodel::{parse_dataset, Dataset, FeatureKind, SchemaHint};

pub const AND_GATE_CSV: &str = "f1,f2,f_r,C\n0,0,1,0\n0,1,1,0\n1,0,1,0\n1,1,0,1\n";

/// Two relevant features, one redundant: `C = f1 AND f2`, `f_r = NOT C`.
pub fn and_gate() -> Dataset {
    nominal_csv(AND_GATE_CSV)
}

/// Parses CSV treating every column as nominal.
pub fn nominal_csv(text: &str) -> Dataset {
    let header = text.lines().next().unwrap();
    let cols: Vec<&str> = header.split(',').collect();
    let hint: SchemaHint = cols[..cols.len() - 1]
        .iter()
        .map(|n| (n.to_string(), FeatureKind::Nominal))
        .collect();
    parse_dataset(text, Some(&hint)).unwrap()
}
