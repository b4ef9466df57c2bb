//! Dataset representation, CSV ingestion and per-feature summaries.
//!
//! A [`Dataset`] is a table of instances over a fixed feature schema plus one
//! class label per instance. Nominal cells are stored as indices into the
//! feature's ordered value set; linear cells are stored as `f64`. The class
//! column is always the last CSV column and `?` marks a missing cell.

use std::collections::BTreeMap;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Token used for missing cells in CSV input and output.
pub const MISSING_TOKEN: &str = "?";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Nominal,
    Linear,
}

/// Optional per-feature kind declarations, as stored in a schema sidecar.
pub type SchemaHint = BTreeMap<String, FeatureKind>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Domain {
    Nominal { values: Vec<String> },
    Linear { min: f64, max: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSchema {
    pub name: String,
    #[serde(flatten)]
    pub domain: Domain,
}

impl FeatureSchema {
    pub fn nominal(name: impl Into<String>, values: Vec<String>) -> Self {
        FeatureSchema {
            name: name.into(),
            domain: Domain::Nominal { values },
        }
    }

    pub fn linear(name: impl Into<String>, min: f64, max: f64) -> Self {
        FeatureSchema {
            name: name.into(),
            domain: Domain::Linear { min, max },
        }
    }

    pub fn kind(&self) -> FeatureKind {
        match self.domain {
            Domain::Nominal { .. } => FeatureKind::Nominal,
            Domain::Linear { .. } => FeatureKind::Linear,
        }
    }

    pub fn is_nominal(&self) -> bool {
        self.kind() == FeatureKind::Nominal
    }

    /// Ordered value set of a nominal feature.
    pub fn values(&self) -> Option<&[String]> {
        match &self.domain {
            Domain::Nominal { values } => Some(values),
            Domain::Linear { .. } => None,
        }
    }

    /// `(min, max)` of a linear feature.
    pub fn range(&self) -> Option<(f64, f64)> {
        match self.domain {
            Domain::Linear { min, max } => Some((min, max)),
            Domain::Nominal { .. } => None,
        }
    }

    /// Number of distinct symbols, or `None` for linear features.
    pub fn cardinality(&self) -> Option<usize> {
        self.values().map(<[String]>::len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Missing,
    /// Index into the feature's nominal value set.
    Symbol(usize),
    Number(f64),
}

impl Cell {
    pub fn is_missing(&self) -> bool {
        matches!(self, Cell::Missing)
    }

    pub fn symbol(&self) -> Option<usize> {
        match *self {
            Cell::Symbol(s) => Some(s),
            _ => None,
        }
    }

    pub fn number(&self) -> Option<f64> {
        match *self {
            Cell::Number(v) => Some(v),
            _ => None,
        }
    }
}

/// Instances x features with a class label per instance. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    class_name: String,
    schema: Vec<FeatureSchema>,
    class_values: Vec<String>,
    rows: Vec<Vec<Cell>>,
    labels: Vec<usize>,
}

impl Dataset {
    /// Builds a dataset and checks every structural invariant.
    pub fn new(
        name: impl Into<String>,
        class_name: impl Into<String>,
        schema: Vec<FeatureSchema>,
        class_values: Vec<String>,
        rows: Vec<Vec<Cell>>,
        labels: Vec<usize>,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::usage("dataset has no instances"));
        }
        if rows.len() != labels.len() {
            return Err(Error::Internal(format!(
                "{} rows but {} class labels",
                rows.len(),
                labels.len()
            )));
        }
        if class_values.is_empty() {
            return Err(Error::usage("dataset has no class values"));
        }
        let mut seen = std::collections::HashSet::new();
        for f in &schema {
            if !seen.insert(f.name.as_str()) {
                return Err(Error::usage(format!("duplicate feature name `{}`", f.name)));
            }
            match &f.domain {
                Domain::Nominal { values } => {
                    if values.is_empty() {
                        return Err(Error::usage(format!("feature `{}` has no values", f.name)));
                    }
                    let distinct: std::collections::HashSet<_> = values.iter().collect();
                    if distinct.len() != values.len() {
                        return Err(Error::usage(format!(
                            "feature `{}` has duplicate values",
                            f.name
                        )));
                    }
                }
                Domain::Linear { min, max } => {
                    if !(min <= max) {
                        return Err(Error::usage(format!(
                            "feature `{}` has range [{min}, {max}]",
                            f.name
                        )));
                    }
                }
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != schema.len() {
                return Err(Error::Internal(format!(
                    "row {i} has {} cells, schema has {}",
                    row.len(),
                    schema.len()
                )));
            }
            for (cell, f) in row.iter().zip(&schema) {
                match (cell, &f.domain) {
                    (Cell::Missing, _) => {}
                    (Cell::Symbol(s), Domain::Nominal { values }) if *s < values.len() => {}
                    (Cell::Number(v), Domain::Linear { .. }) if v.is_finite() => {}
                    _ => {
                        return Err(Error::Internal(format!(
                            "row {i}: cell {cell:?} does not fit feature `{}`",
                            f.name
                        )))
                    }
                }
            }
        }
        if let Some(&bad) = labels.iter().find(|&&c| c >= class_values.len()) {
            return Err(Error::Internal(format!("class label index {bad} out of range")));
        }
        Ok(Dataset {
            name: name.into(),
            class_name: class_name.into(),
            schema,
            class_values,
            rows,
            labels,
        })
    }

    /// Convenience constructor for all-nominal data given as value indices
    /// (`None` = missing).
    pub fn from_nominal(
        name: impl Into<String>,
        features: Vec<(String, Vec<String>)>,
        class_name: impl Into<String>,
        class_values: Vec<String>,
        rows: Vec<Vec<Option<usize>>>,
        labels: Vec<usize>,
    ) -> Result<Self> {
        let schema = features
            .into_iter()
            .map(|(n, v)| FeatureSchema::nominal(n, v))
            .collect();
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|c| c.map_or(Cell::Missing, Cell::Symbol)).collect())
            .collect();
        Dataset::new(name, class_name, schema, class_values, rows, labels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn class_name(&self) -> &str {
        &self.class_name
    }

    pub fn schema(&self) -> &[FeatureSchema] {
        &self.schema
    }

    pub fn feature(&self, index: usize) -> &FeatureSchema {
        &self.schema[index]
    }

    pub fn feature_names(&self) -> impl Iterator<Item = &str> {
        self.schema.iter().map(|f| f.name.as_str())
    }

    pub fn feature_index(&self, name: &str) -> Result<usize> {
        self.schema
            .iter()
            .position(|f| f.name == name)
            .ok_or_else(|| Error::UnknownFeature(name.to_string()))
    }

    pub fn class_values(&self) -> &[String] {
        &self.class_values
    }

    pub fn n_classes(&self) -> usize {
        self.class_values.len()
    }

    pub fn n_instances(&self) -> usize {
        self.rows.len()
    }

    pub fn n_features(&self) -> usize {
        self.schema.len()
    }

    pub fn row(&self, i: usize) -> &[Cell] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn cell(&self, i: usize, feature: usize) -> Cell {
        self.rows[i][feature]
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Instance count per class value.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.class_values.len()];
        for &c in &self.labels {
            counts[c] += 1;
        }
        counts
    }

    /// Relative class frequencies.
    pub fn class_priors(&self) -> Vec<f64> {
        let n = self.n_instances() as f64;
        self.class_counts().into_iter().map(|c| c as f64 / n).collect()
    }

    /// Returns a copy with one feature's schema and column replaced.
    pub fn replace_feature(
        &self,
        index: usize,
        schema: FeatureSchema,
        column: Vec<Cell>,
    ) -> Result<Dataset> {
        if column.len() != self.n_instances() {
            return Err(Error::Internal("replacement column has wrong length".into()));
        }
        let mut out_schema = self.schema.clone();
        out_schema[index] = schema;
        let mut rows = self.rows.clone();
        for (row, cell) in rows.iter_mut().zip(column) {
            row[index] = cell;
        }
        Dataset::new(
            self.name.clone(),
            self.class_name.clone(),
            out_schema,
            self.class_values.clone(),
            rows,
            self.labels.clone(),
        )
    }

    /// Keeps only the listed features, in the given order.
    pub fn select_features(&self, indices: &[usize]) -> Result<Dataset> {
        let schema = indices.iter().map(|&i| self.schema[i].clone()).collect();
        let rows = self
            .rows
            .iter()
            .map(|r| indices.iter().map(|&i| r[i]).collect())
            .collect();
        Dataset::new(
            self.name.clone(),
            self.class_name.clone(),
            schema,
            self.class_values.clone(),
            rows,
            self.labels.clone(),
        )
    }

    /// Concatenates the instances of `other` (same schema) after `self`.
    pub fn concat(&self, other: &Dataset) -> Result<Dataset> {
        if self.schema != other.schema || self.class_values != other.class_values {
            return Err(Error::usage("cannot concatenate datasets with different schemas"));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        Dataset::new(
            self.name.clone(),
            self.class_name.clone(),
            self.schema.clone(),
            self.class_values.clone(),
            rows,
            labels,
        )
    }

    /// Full kind declaration for every feature, suitable for a schema sidecar.
    pub fn schema_hint(&self) -> SchemaHint {
        self.schema.iter().map(|f| (f.name.clone(), f.kind())).collect()
    }

    /// Serializes to the CSV wire format (header, `?` for missing, class last).
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let header = self
            .schema
            .iter()
            .map(|f| f.name.as_str())
            .chain(std::iter::once(self.class_name.as_str()));
        w.write_record(header).expect("in-memory write");
        let mut record: Vec<String> = Vec::with_capacity(self.schema.len() + 1);
        for (row, &label) in self.rows.iter().zip(&self.labels) {
            record.clear();
            for (cell, f) in row.iter().zip(&self.schema) {
                record.push(match (*cell, &f.domain) {
                    (Cell::Missing, _) => MISSING_TOKEN.to_string(),
                    (Cell::Symbol(s), Domain::Nominal { values }) => values[s].clone(),
                    (Cell::Number(v), _) => format!("{v}"),
                    (Cell::Symbol(_), Domain::Linear { .. }) => unreachable!("checked in new"),
                });
            }
            record.push(self.class_values[label].clone());
            w.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

/// Orders symbols numerically when every symbol is a number, lexicographically otherwise.
fn sort_symbols(symbols: &mut [String]) {
    let numeric: Option<Vec<f64>> = symbols.iter().map(|s| parse_number(s)).collect();
    if numeric.is_some() {
        symbols.sort_by(|a, b| {
            let (x, y) = (parse_number(a).unwrap(), parse_number(b).unwrap());
            x.total_cmp(&y).then_with(|| a.cmp(b))
        });
    } else {
        symbols.sort();
    }
}

fn parse_number(token: &str) -> Option<f64> {
    token.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses the CSV wire format.
///
/// A column becomes linear when every non-missing token is a finite decimal
/// number, unless `hint` declares it nominal; `hint` can also force a
/// column to linear, in which case non-numeric tokens are a parse error.
pub fn parse_dataset(text: &str, hint: Option<&SchemaHint>) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?
        .iter()
        .map(str::to_string)
        .collect();
    if header.len() < 2 || header.iter().all(String::is_empty) {
        return Err(Error::Parse {
            line: 1,
            message: "header needs at least one feature column and a class column".into(),
        });
    }
    {
        let mut seen = std::collections::HashSet::new();
        for h in &header {
            if !seen.insert(h) {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("duplicate column name `{h}`"),
                });
            }
        }
    }
    let n_features = header.len() - 1;

    let mut tokens: Vec<Vec<String>> = Vec::new();
    let mut class_tokens: Vec<String> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record.get(0) == Some("") {
            continue;
        }
        if record.len() != header.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} cells, found {}", header.len(), record.len()),
            });
        }
        let class = record.get(n_features).unwrap_or_default();
        if class.is_empty() || class == MISSING_TOKEN {
            return Err(Error::Parse {
                line,
                message: "missing class cell".into(),
            });
        }
        tokens.push(record.iter().take(n_features).map(str::to_string).collect());
        class_tokens.push(class.to_string());
    }
    if tokens.is_empty() {
        return Err(Error::Parse {
            line: 2,
            message: "no data rows".into(),
        });
    }

    let mut schema = Vec::with_capacity(n_features);
    let mut columns: Vec<Vec<Cell>> = Vec::with_capacity(n_features);
    for (j, name) in header.iter().take(n_features).enumerate() {
        let observed: Vec<&str> = tokens
            .iter()
            .map(|r| r[j].as_str())
            .filter(|t| *t != MISSING_TOKEN)
            .collect();
        if observed.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: format!("column `{name}` has no observed values"),
            });
        }
        let all_numeric = observed.iter().all(|t| parse_number(t).is_some());
        let kind = match hint.and_then(|h| h.get(name)) {
            Some(&k) => k,
            None if all_numeric => FeatureKind::Linear,
            None => FeatureKind::Nominal,
        };
        match kind {
            FeatureKind::Linear => {
                let mut column = Vec::with_capacity(tokens.len());
                let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
                for (i, r) in tokens.iter().enumerate() {
                    let t = r[j].as_str();
                    if t == MISSING_TOKEN {
                        column.push(Cell::Missing);
                        continue;
                    }
                    let v = parse_number(t).ok_or_else(|| Error::Parse {
                        line: i as u64 + 2,
                        message: format!("`{t}` in linear column `{name}` is not a number"),
                    })?;
                    lo = lo.min(v);
                    hi = hi.max(v);
                    column.push(Cell::Number(v));
                }
                schema.push(FeatureSchema::linear(name.clone(), lo, hi));
                columns.push(column);
            }
            FeatureKind::Nominal => {
                let mut values: Vec<String> = observed.iter().map(|t| t.to_string()).collect();
                sort_symbols(&mut values);
                values.dedup();
                let index: std::collections::HashMap<&str, usize> =
                    values.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
                let column = tokens
                    .iter()
                    .map(|r| match r[j].as_str() {
                        MISSING_TOKEN => Cell::Missing,
                        t => Cell::Symbol(index[t]),
                    })
                    .collect();
                schema.push(FeatureSchema::nominal(name.clone(), values));
                columns.push(column);
            }
        }
    }
    if let Some(h) = hint {
        if let Some(unknown) = h.keys().find(|k| !header[..n_features].contains(k)) {
            return Err(Error::UnknownFeature(unknown.clone()));
        }
    }

    let mut class_values = class_tokens.clone();
    sort_symbols(&mut class_values);
    class_values.dedup();
    let class_index: std::collections::HashMap<&str, usize> = class_values
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let labels = class_tokens.iter().map(|t| class_index[t.as_str()]).collect();

    let n_rows = tokens.len();
    let rows = (0..n_rows)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    Dataset::new(
        "dataset",
        header[n_features].clone(),
        schema,
        class_values,
        rows,
        labels,
    )
}

/// Reads a CSV file; the dataset is named after the file stem.
pub fn load_dataset(path: &Path, hint: Option<&SchemaHint>) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map_or_else(|| "dataset".to_string(), |s| s.to_string_lossy().into_owned());
    Ok(parse_dataset(&text, hint)?.with_name(name))
}

/// Per-feature summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureStats {
    pub name: String,
    pub kind: FeatureKind,
    /// Observed values with their counts, in domain order.
    pub counts: IndexMap<String, usize>,
    pub missing: usize,
    /// Observed `(min, max)` for linear features.
    pub range: Option<(f64, f64)>,
}

impl FeatureStats {
    pub fn distinct(&self) -> Vec<&str> {
        self.counts.keys().map(String::as_str).collect()
    }
}

pub fn feature_stats(d: &Dataset, feature: &str) -> Result<FeatureStats> {
    let j = d.feature_index(feature)?;
    let f = d.feature(j);
    let mut missing = 0;
    let mut counts = IndexMap::new();
    let mut range: Option<(f64, f64)> = None;
    match &f.domain {
        Domain::Nominal { values } => {
            let mut tally = vec![0usize; values.len()];
            for row in d.rows() {
                match row[j] {
                    Cell::Symbol(s) => tally[s] += 1,
                    _ => missing += 1,
                }
            }
            for (v, c) in values.iter().zip(tally) {
                if c > 0 {
                    counts.insert(v.clone(), c);
                }
            }
        }
        Domain::Linear { .. } => {
            let mut observed: Vec<f64> = Vec::new();
            for row in d.rows() {
                match row[j] {
                    Cell::Number(v) => observed.push(v),
                    _ => missing += 1,
                }
            }
            observed.sort_by(f64::total_cmp);
            for v in &observed {
                *counts.entry(format!("{v}")).or_insert(0) += 1;
            }
            range = observed.first().zip(observed.last()).map(|(a, b)| (*a, *b));
        }
    }
    Ok(FeatureStats {
        name: f.name.clone(),
        kind: f.kind(),
        counts,
        missing,
        range,
    })
}

/// Weight vector produced by any weighting algorithm, keyed by feature name
/// in dataset order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureWeights {
    pub algorithm: String,
    pub weights: IndexMap<String, f64>,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
    /// Provenance notes (degenerate cases, automatic discretization, ...).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl FeatureWeights {
    pub fn new(algorithm: impl Into<String>, d: &Dataset, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), d.n_features());
        FeatureWeights {
            algorithm: algorithm.into(),
            weights: d.feature_names().map(str::to_string).zip(values).collect(),
            params: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn get(&self, feature: &str) -> Option<f64> {
        self.weights.get(feature).copied()
    }

    /// Weights in the dataset's feature order; errors if the key set differs.
    pub fn aligned(&self, d: &Dataset) -> Result<Vec<f64>> {
        if self.weights.len() != d.n_features() {
            return Err(Error::usage(format!(
                "weights cover {} features, dataset has {}",
                self.weights.len(),
                d.n_features()
            )));
        }
        d.feature_names()
            .map(|n| {
                self.weights
                    .get(n)
                    .copied()
                    .ok_or_else(|| Error::UnknownFeature(n.to_string()))
            })
            .collect()
    }

    /// Feature names sorted by weight descending, ties by original position.
    pub fn ordering(&self) -> Vec<&str> {
        let mut idx: Vec<(usize, &str, f64)> = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, (n, &w))| (i, n.as_str(), w))
            .collect();
        idx.sort_by(|a, b| b.2.total_cmp(&a.2).then(a.0.cmp(&b.0)));
        idx.into_iter().map(|(_, n, _)| n).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE2: &str = "f1,f2,f_r,C\n0,0,1,0\n0,1,1,0\n1,0,1,0\n1,1,0,1\n";

    #[test]
    fn parses_minimal_table() {
        let d = parse_dataset("f1,f2,class\n0,0,0\n1,1,1\n", None).unwrap();
        assert_eq!(d.n_features(), 2);
        assert_eq!(d.n_instances(), 2);
        assert_eq!(d.class_values(), ["0", "1"]);
        assert_eq!(d.class_name(), "class");
    }

    #[test]
    fn missing_token_is_not_a_value() {
        let d = parse_dataset("a,class\nx,0\n?,1\ny,0\n", None).unwrap();
        assert_eq!(d.feature(0).values().unwrap(), ["x", "y"]);
        assert!(d.cell(1, 0).is_missing());
    }

    #[test]
    fn and_gate_parses() {
        let d = parse_dataset(TABLE2, None).unwrap();
        assert_eq!(d.feature_names().collect::<Vec<_>>(), ["f1", "f2", "f_r"]);
        assert_eq!(d.class_name(), "C");
        assert_eq!(d.n_instances(), 4);
    }

    #[test]
    fn numeric_columns_are_linear_unless_hinted() {
        let d = parse_dataset(TABLE2, None).unwrap();
        assert_eq!(d.feature(0).kind(), FeatureKind::Linear);
        let hint: SchemaHint = [("f1".to_string(), FeatureKind::Nominal)].into();
        let d = parse_dataset(TABLE2, Some(&hint)).unwrap();
        assert_eq!(d.feature(0).kind(), FeatureKind::Nominal);
        assert_eq!(d.feature(0).values().unwrap(), ["0", "1"]);
        assert_eq!(d.feature(1).kind(), FeatureKind::Linear);
    }

    #[test]
    fn ragged_row_reports_line() {
        let err = parse_dataset("a,b,class\n1,2,0\n1,0\n", None).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_class_and_empty_body_rejected() {
        assert!(matches!(
            parse_dataset("a,class\n1,?\n", None),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dataset("a,class\n1,\n", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_dataset("a,class\n", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn stats_constant_and_missing() {
        let d = parse_dataset("a,b,class\n1,0,x\n1,?,y\n1,1,x\n1,?,y\n", None).unwrap();
        let s = feature_stats(&d, "a").unwrap();
        assert_eq!(s.distinct(), ["1"]);
        assert_eq!(s.missing, 0);
        let s = feature_stats(&d, "b").unwrap();
        assert_eq!(s.missing, 2);
        assert_eq!(s.distinct(), ["0", "1"]);
        assert_eq!(s, feature_stats(&d, "b").unwrap());
        assert!(matches!(feature_stats(&d, "zz"), Err(Error::UnknownFeature(_))));
    }

    #[test]
    fn stats_and_gate_redundant_feature() {
        let d = parse_dataset(TABLE2, None).unwrap();
        let s = feature_stats(&d, "f_r").unwrap();
        assert_eq!(s.counts.get("0"), Some(&1));
        assert_eq!(s.counts.get("1"), Some(&3));
    }

    #[test]
    fn numeric_symbols_sort_numerically() {
        let hint: SchemaHint = [("a".to_string(), FeatureKind::Nominal)].into();
        let d = parse_dataset("a,class\n10,0\n2,1\n1,0\n", Some(&hint)).unwrap();
        assert_eq!(d.feature(0).values().unwrap(), ["1", "2", "10"]);
    }

    #[test]
    fn weights_ordering_breaks_ties_by_position() {
        let d = parse_dataset("a,b,c,class\n1,1,1,0\n", None).unwrap();
        let w = FeatureWeights::new("t", &d, vec![0.1, 0.5, 0.1]);
        assert_eq!(w.ordering(), ["b", "a", "c"]);
    }
}
