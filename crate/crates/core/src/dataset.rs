//! Labeled sample matrices, preprocessing, and fold plans.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lower clamp applied to fitted standard deviations.
pub const SD_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Sparse,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "sparse" | "libsvm" | "svmlight" => Ok(Format::Sparse),
            other => Err(Error::InvalidParameter(format!("unknown format '{other}'"))),
        }
    }
}

/// A binary-labeled sample matrix.
///
/// Labels are stored as `+1` / `-1`. The original label strings, when known,
/// are kept in `class_names` (index 0 for `-1`, index 1 for `+1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Vec<Vec<f64>>,
    labels: Vec<i8>,
    feature_names: Vec<String>,
    sample_ids: Vec<String>,
    class_names: [Option<String>; 2],
}

impl Dataset {
    pub fn new(
        samples: Vec<Vec<f64>>,
        labels: Vec<i8>,
        feature_names: Vec<String>,
        sample_ids: Vec<String>,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = feature_names.len();
        if n == 0 {
            return Err(Error::InvalidData("no features".into()));
        }
        if labels.len() != samples.len() {
            return Err(Error::DimensionMismatch {
                expected: samples.len(),
                got: labels.len(),
            });
        }
        if sample_ids.len() != samples.len() {
            return Err(Error::DimensionMismatch {
                expected: samples.len(),
                got: sample_ids.len(),
            });
        }
        for row in &samples {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if let Some(v) = row.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidData(format!("non-finite value {v}")));
            }
        }
        if let Some(l) = labels.iter().find(|&&l| l != 1 && l != -1) {
            return Err(Error::InvalidData(format!("label {l} is not +1 or -1")));
        }
        let mut seen = BTreeSet::new();
        for name in &feature_names {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidData(format!("duplicate feature name '{name}'")));
            }
        }
        Ok(Self {
            samples,
            labels,
            feature_names,
            sample_ids,
            class_names: [None, None],
        })
    }

    /// Builds a dataset with generated names (`f1..fn`, `s1..sM`).
    pub fn from_rows(samples: Vec<Vec<f64>>, labels: Vec<i8>) -> Result<Self> {
        let n = samples.first().map_or(0, Vec::len);
        let m = samples.len();
        Self::new(
            samples,
            labels,
            (1..=n).map(|j| format!("f{j}")).collect(),
            (1..=m).map(|i| format!("s{i}")).collect(),
        )
    }

    pub fn with_class_names(mut self, negative: Option<String>, positive: Option<String>) -> Self {
        self.class_names = [negative, positive];
        self
    }

    pub fn n_samples(&self) -> usize {
        self.samples.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.samples[i]
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> f64 {
        f64::from(self.labels[i])
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn sample_ids(&self) -> &[String] {
        &self.sample_ids
    }

    pub fn class_names(&self) -> &[Option<String>; 2] {
        &self.class_names
    }

    /// Original label string for a canonical label, falling back to `+1`/`-1`.
    pub fn class_name(&self, label: i8) -> String {
        let slot = usize::from(label > 0);
        self.class_names[slot]
            .clone()
            .unwrap_or_else(|| if label > 0 { "+1".into() } else { "-1".into() })
    }

    /// `(count of -1, count of +1)`.
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.labels.iter().filter(|&&l| l > 0).count();
        (self.labels.len() - pos, pos)
    }

    pub fn has_both_classes(&self) -> bool {
        let (neg, pos) = self.class_counts();
        neg > 0 && pos > 0
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.samples.iter().map(|r| r[j]).collect()
    }

    pub fn subset_rows(&self, rows: &[usize]) -> Dataset {
        Dataset {
            samples: rows.iter().map(|&i| self.samples[i].clone()).collect(),
            labels: rows.iter().map(|&i| self.labels[i]).collect(),
            feature_names: self.feature_names.clone(),
            sample_ids: rows.iter().map(|&i| self.sample_ids[i].clone()).collect(),
            class_names: self.class_names.clone(),
        }
    }

    pub fn subset_features(&self, features: &[usize]) -> Result<Dataset> {
        if features.is_empty() {
            return Err(Error::InvalidParameter("empty feature subset".into()));
        }
        if let Some(&j) = features.iter().find(|&&j| j >= self.n_features()) {
            return Err(Error::InvalidParameter(format!(
                "feature index {j} out of range for {} features",
                self.n_features()
            )));
        }
        Ok(Dataset {
            samples: self
                .samples
                .iter()
                .map(|r| features.iter().map(|&j| r[j]).collect())
                .collect(),
            labels: self.labels.clone(),
            feature_names: features.iter().map(|&j| self.feature_names[j].clone()).collect(),
            sample_ids: self.sample_ids.clone(),
            class_names: self.class_names.clone(),
        })
    }

    /// Replaces the sample matrix, keeping labels and names.
    pub fn with_samples(&self, samples: Vec<Vec<f64>>) -> Result<Dataset> {
        let mut d = Dataset::new(
            samples,
            self.labels.clone(),
            self.feature_names.clone(),
            self.sample_ids.clone(),
        )?;
        d.class_names = self.class_names.clone();
        Ok(d)
    }

    /// Serializes as CSV with an `id` column first and `label` last.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id");
        for name in &self.feature_names {
            out.push(',');
            out.push_str(name);
        }
        out.push_str(",label\n");
        for (i, row) in self.samples.iter().enumerate() {
            out.push_str(&self.sample_ids[i]);
            for v in row {
                let _ = write!(out, ",{v}");
            }
            let _ = writeln!(out, ",{}", self.class_name(self.labels[i]));
        }
        out
    }
}

/// Maps raw label strings onto `{-1, +1}`.
///
/// If every label parses as a number, numeric labels already in `{-1, +1}`
/// keep their sign and any other pair is ordered numerically. Otherwise the
/// lexicographically smaller label becomes `-1`.
pub fn canonicalize_labels(raw: &[String]) -> Result<(Vec<i8>, [Option<String>; 2])> {
    let distinct: BTreeSet<&str> = raw.iter().map(String::as_str).collect();
    if distinct.len() > 2 {
        return Err(Error::TooManyClasses(distinct.iter().map(|s| s.to_string()).collect()));
    }
    if distinct.is_empty() {
        return Err(Error::EmptyInput);
    }
    let numeric: Option<Vec<f64>> = distinct.iter().map(|s| s.parse::<f64>().ok()).collect();

    let mut ordered: Vec<&str> = distinct.into_iter().collect();
    let mut keep_signs = false;
    if let Some(values) = numeric {
        if values.iter().all(|v| v.is_finite()) {
            let mut pairs: Vec<(f64, &str)> = values.into_iter().zip(ordered.iter().copied()).collect();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            // "+1" and "1" are the same class
            if pairs.len() == 2 && pairs[0].0 == pairs[1].0 {
                return Err(Error::InvalidData("two spellings of the same numeric label".into()));
            }
            keep_signs = pairs.iter().all(|(v, _)| *v == 1.0 || *v == -1.0);
            ordered = pairs.into_iter().map(|(_, s)| s).collect();
        }
    }

    let mut names: [Option<String>; 2] = [None, None];
    let map = |s: &str| -> i8 {
        if keep_signs {
            if s.parse::<f64>().unwrap_or(0.0) > 0.0 {
                1
            } else {
                -1
            }
        } else if s == ordered[0] {
            -1
        } else {
            1
        }
    };
    for s in &ordered {
        let slot = usize::from(map(s) > 0);
        names[slot] = Some(s.to_string());
    }
    Ok((raw.iter().map(|s| map(s)).collect(), names))
}

pub fn load_dataset(path: &Path, format: Format, label_column: &str) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)?;
    match format {
        Format::Csv => parse_csv(&text, label_column),
        Format::Sparse => parse_sparse(&text, None),
    }
}

struct CsvTable {
    samples: Vec<Vec<f64>>,
    raw_labels: Option<Vec<String>>,
    ids: Vec<String>,
    feature_names: Vec<String>,
}

fn read_csv(text: &str, label_column: &str, require_label: bool) -> Result<CsvTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?
        .clone();
    if headers.is_empty() {
        return Err(Error::EmptyInput);
    }
    let label_idx = headers.iter().position(|h| h == label_column);
    if require_label && label_idx.is_none() {
        return Err(Error::Parse { line: 1, msg: format!("no label column '{label_column}'") });
    }
    let id_idx = headers.iter().position(|h| h == "id").filter(|&i| Some(i) != label_idx);
    let feature_cols: Vec<usize> = (0..headers.len())
        .filter(|&i| Some(i) != label_idx && Some(i) != id_idx)
        .collect();

    let mut samples = Vec::new();
    let mut raw_labels = Vec::new();
    let mut ids = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let line = r + 2;
        let record = record.map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        if record.len() != headers.len() {
            return Err(Error::Parse {
                line,
                msg: format!("expected {} fields, found {}", headers.len(), record.len()),
            });
        }
        let mut row = Vec::with_capacity(feature_cols.len());
        for &c in &feature_cols {
            let field = &record[c];
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("'{field}' in column '{}' is not a number", &headers[c]),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line,
                    msg: format!("non-finite value in column '{}'", &headers[c]),
                });
            }
            row.push(v);
        }
        samples.push(row);
        if let Some(l) = label_idx {
            raw_labels.push(record[l].to_string());
        }
        ids.push(match id_idx {
            Some(i) => record[i].to_string(),
            None => format!("s{}", r + 1),
        });
    }
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(CsvTable {
        samples,
        raw_labels: label_idx.map(|_| raw_labels),
        ids,
        feature_names: feature_cols.iter().map(|&c| headers[c].to_string()).collect(),
    })
}

/// Parses a headered CSV. A column named `id` (if present and not the label
/// column) supplies sample ids; every other column is a feature.
pub fn parse_csv(text: &str, label_column: &str) -> Result<Dataset> {
    let t = read_csv(text, label_column, true)?;
    let (labels, names) = canonicalize_labels(&t.raw_labels.unwrap_or_default())?;
    Ok(Dataset::new(t.samples, labels, t.feature_names, t.ids)?.with_class_names(names[0].clone(), names[1].clone()))
}

/// Feature rows of a headered CSV whose label column may be absent.
pub struct FeatureTable {
    pub samples: Vec<Vec<f64>>,
    pub sample_ids: Vec<String>,
    pub feature_names: Vec<String>,
}

/// Like [`parse_csv`] but ignores the label column, which may be missing.
pub fn parse_csv_features(text: &str, label_column: &str) -> Result<FeatureTable> {
    let t = read_csv(text, label_column, false)?;
    Ok(FeatureTable { samples: t.samples, sample_ids: t.ids, feature_names: t.feature_names })
}

/// Parses `label idx:val idx:val ...` lines with 1-based ascending indices.
/// Absent entries are zero. The feature count is the largest index seen
/// unless `n_features` is given.
pub fn parse_sparse(text: &str, n_features: Option<usize>) -> Result<Dataset> {
    let mut raw_labels = Vec::new();
    let mut entries: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut max_idx = 0usize;
    for (r, line) in text.lines().enumerate() {
        let line_no = r + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let label = tokens.next().ok_or(Error::Parse { line: line_no, msg: "missing label".into() })?;
        let mut row = Vec::new();
        let mut prev = 0usize;
        for tok in tokens {
            let (idx, val) = tok.split_once(':').ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("expected idx:val, found '{tok}'"),
            })?;
            let idx: usize = idx.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad index '{idx}'"),
            })?;
            let val: f64 = val.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad value '{val}'"),
            })?;
            if idx == 0 || idx <= prev {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("index {idx} is not 1-based ascending"),
                });
            }
            if !val.is_finite() {
                return Err(Error::Parse { line: line_no, msg: "non-finite value".into() });
            }
            prev = idx;
            max_idx = max_idx.max(idx);
            row.push((idx - 1, val));
        }
        raw_labels.push(label.to_string());
        entries.push(row);
    }
    if entries.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = match n_features {
        Some(n) if n < max_idx => {
            return Err(Error::Parse {
                line: 0,
                msg: format!("index {max_idx} exceeds declared feature count {n}"),
            })
        }
        Some(n) => n,
        None => max_idx,
    };
    let samples = entries
        .into_iter()
        .map(|row| {
            let mut dense = vec![0.0; n];
            for (j, v) in row {
                dense[j] = v;
            }
            dense
        })
        .collect();
    let (labels, names) = canonicalize_labels(&raw_labels)?;
    Ok(Dataset::from_rows(samples, labels)?.with_class_names(names[0].clone(), names[1].clone()))
}

/// Per-feature z-score transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub sds: Vec<f64>,
    pub sd_floor: f64,
}

impl Standardizer {
    /// Sample mean and population standard deviation per feature, with the
    /// deviation clamped below by [`SD_FLOOR`].
    pub fn fit(train: &Dataset) -> Result<Self> {
        let m = train.n_samples();
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "standardizer needs at least 2 samples, got {m}"
            )));
        }
        let n = train.n_features();
        let mut means = vec![0.0; n];
        for row in train.samples() {
            for (acc, v) in means.iter_mut().zip(row) {
                *acc += v;
            }
        }
        means.iter_mut().for_each(|s| *s /= m as f64);
        let mut sds = vec![0.0; n];
        for row in train.samples() {
            for ((acc, v), mu) in sds.iter_mut().zip(row).zip(&means) {
                *acc += (v - mu) * (v - mu);
            }
        }
        sds.iter_mut().for_each(|s| *s = (*s / m as f64).sqrt().max(SD_FLOOR));
        Ok(Self { means, sds, sd_floor: SD_FLOOR })
    }

    pub fn n_features(&self) -> usize {
        self.means.len()
    }

    pub fn transform_row(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x.len())?;
        Ok(x.iter()
            .zip(&self.means)
            .zip(&self.sds)
            .map(|((v, mu), sd)| (v - mu) / sd)
            .collect())
    }

    pub fn inverse_row(&self, z: &[f64]) -> Result<Vec<f64>> {
        self.check(z.len())?;
        Ok(z.iter()
            .zip(&self.means)
            .zip(&self.sds)
            .map(|((v, mu), sd)| v * sd + mu)
            .collect())
    }

    pub fn apply(&self, d: &Dataset) -> Result<Dataset> {
        self.check(d.n_features())?;
        let rows = d
            .samples()
            .iter()
            .map(|r| self.transform_row(r))
            .collect::<Result<Vec<_>>>()?;
        d.with_samples(rows)
    }

    pub fn invert(&self, d: &Dataset) -> Result<Dataset> {
        self.check(d.n_features())?;
        let rows = d
            .samples()
            .iter()
            .map(|r| self.inverse_row(r))
            .collect::<Result<Vec<_>>>()?;
        d.with_samples(rows)
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.means.len() {
            return Err(Error::DimensionMismatch { expected: self.means.len(), got: n });
        }
        Ok(())
    }
}

/// Assignment of every sample to one of `k` folds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    pub assignments: Vec<usize>,
}

impl FoldPlan {
    /// Stratified assignment: each class is shuffled with `seed` and dealt
    /// round-robin, the deal continuing across classes so fold sizes stay
    /// balanced.
    pub fn stratified(d: &Dataset, k: usize, seed: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut assignments = vec![usize::MAX; d.n_samples()];
        let mut offset = 0;
        for class in [-1i8, 1] {
            let mut members: Vec<usize> = (0..d.n_samples()).filter(|&i| d.labels()[i] == class).collect();
            if members.len() < k {
                return Err(Error::TooFewSamples { label: class, count: members.len(), needed: k });
            }
            members.shuffle(&mut rng);
            for (pos, &i) in members.iter().enumerate() {
                assignments[i] = (offset + pos) % k;
            }
            offset = (offset + members.len()) % k;
        }
        Ok(Self { k, seed, assignments })
    }

    pub fn leave_one_out(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter("leave-one-out needs at least 2 samples".into()));
        }
        Ok(Self { k: m, seed: 0, assignments: (0..m).collect() })
    }

    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len()).filter(|&i| self.assignments[i] == fold).collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len()).filter(|&i| self.assignments[i] != fold).collect()
    }

    /// `(train, test)` index lists for every fold in order.
    pub fn splits(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        (0..self.k).map(|f| (self.train_indices(f), self.test_indices(f))).collect()
    }
}

pub fn stratified_kfold(d: &Dataset, k: usize, seed: u64) -> Result<FoldPlan> {
    FoldPlan::stratified(d, k, seed)
}
