//! Fast Correlation-Based Filter on equal-frequency discretized features.

use rayon::prelude::*;

use super::{FeatureRanking, RankingMethod};
use crate::dataset::Dataset;
use crate::error::{Error, Result};

pub const DEFAULT_BINS: usize = 10;
pub const DEFAULT_DELTA: f64 = 0.0;

/// Column-major matrix of bin ids.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDataset {
    columns: Vec<Vec<u32>>,
    bins_per_feature: Vec<u32>,
    labels: Vec<i8>,
}

impl DiscreteDataset {
    pub fn new(columns: Vec<Vec<u32>>, labels: Vec<i8>) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != labels.len()) {
            return Err(Error::DimensionMismatch { expected: labels.len(), got: c.len() });
        }
        let bins_per_feature = columns.iter().map(|c| c.iter().max().map_or(1, |m| m + 1)).collect();
        Ok(Self { columns, bins_per_feature, labels })
    }

    pub fn n_features(&self) -> usize {
        self.columns.len()
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.columns[j]
    }

    pub fn bins_per_feature(&self) -> &[u32] {
        &self.bins_per_feature
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    /// Labels as bin ids (`-1 → 0`, `+1 → 1`).
    pub fn class_column(&self) -> Vec<u32> {
        self.labels.iter().map(|&l| u32::from(l > 0)).collect()
    }
}

/// Per-feature cut points fitted on one split and reusable on another.
#[derive(Debug, Clone, PartialEq)]
pub struct Discretizer {
    cuts: Vec<Vec<f64>>,
}

impl Discretizer {
    /// Cut points at the empirical `b/bins` quantiles (`b = 1..bins`),
    /// deduplicated; cuts at the column minimum are dropped so ids start at 0.
    pub fn fit(d: &Dataset, bins: usize) -> Result<Self> {
        if bins < 2 {
            return Err(Error::InvalidParameter(format!("bins must be at least 2, got {bins}")));
        }
        let m = d.n_samples();
        let cuts = (0..d.n_features())
            .map(|j| {
                let mut v = d.column(j);
                v.sort_by(f64::total_cmp);
                let mut c: Vec<f64> = (1..bins).map(|b| v[(m * b / bins).min(m - 1)]).filter(|&x| x > v[0]).collect();
                c.dedup();
                c
            })
            .collect();
        Ok(Self { cuts })
    }

    pub fn bins(&self, feature: usize) -> usize {
        self.cuts[feature].len() + 1
    }

    pub fn apply(&self, d: &Dataset) -> Result<DiscreteDataset> {
        if d.n_features() != self.cuts.len() {
            return Err(Error::DimensionMismatch { expected: self.cuts.len(), got: d.n_features() });
        }
        let columns = self
            .cuts
            .iter()
            .enumerate()
            .map(|(j, cuts)| {
                d.samples()
                    .iter()
                    .map(|r| cuts.partition_point(|&c| c <= r[j]) as u32)
                    .collect()
            })
            .collect();
        let mut out = DiscreteDataset::new(columns, d.labels().to_vec())?;
        out.bins_per_feature = (0..self.cuts.len()).map(|j| self.bins(j) as u32).collect();
        Ok(out)
    }
}

pub fn discretize_equal_frequency(d: &Dataset, bins: usize) -> Result<DiscreteDataset> {
    Discretizer::fit(d, bins)?.apply(d)
}

fn entropy(counts: impl Iterator<Item = usize>, total: f64) -> f64 {
    counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum()
}

/// `2 I(X;Y) / (H(X) + H(Y))` in bits; 0 when both columns are constant.
pub fn symmetrical_uncertainty(x: &[u32], y: &[u32]) -> f64 {
    assert_eq!(x.len(), y.len(), "columns must have equal length");
    if x.is_empty() {
        return 0.0;
    }
    let kx = *x.iter().max().unwrap_or(&0) as usize + 1;
    let ky = *y.iter().max().unwrap_or(&0) as usize + 1;
    let mut joint = vec![0usize; kx * ky];
    for (&a, &b) in x.iter().zip(y) {
        joint[a as usize * ky + b as usize] += 1;
    }
    let total = x.len() as f64;
    let hx = entropy((0..kx).map(|a| joint[a * ky..(a + 1) * ky].iter().sum()), total);
    let hy = entropy((0..ky).map(|b| (0..kx).map(|a| joint[a * ky + b]).sum()), total);
    let denom = hx + hy;
    if denom <= 0.0 {
        return 0.0;
    }
    let hxy = entropy(joint.iter().copied(), total);
    (2.0 * (hx + hy - hxy) / denom).clamp(0.0, 1.0)
}

/// Features ranked by `SU(feature, class)`.
pub fn fcbf_rank(d: &DiscreteDataset) -> FeatureRanking {
    let class = d.class_column();
    let su: Vec<f64> = (0..d.n_features())
        .into_par_iter()
        .map(|j| symmetrical_uncertainty(d.column(j), &class))
        .collect();
    FeatureRanking::from_scores(&su, RankingMethod::Fcbf, "fcbf predominant correlation")
}

/// FCBF: keep features with `SU(f, class) > delta`, then walk them in
/// descending relevance removing every later `f'` with
/// `SU(f, f') ≥ SU(f', class)`. Survivors are returned ascending.
pub fn fcbf_select(d: &DiscreteDataset, delta: f64) -> Result<Vec<usize>> {
    if !(delta >= 0.0) {
        return Err(Error::InvalidParameter(format!("delta must be nonnegative, got {delta}")));
    }
    let ranking = fcbf_rank(d);
    let list: Vec<(usize, f64)> = ranking.entries.into_iter().filter(|e| e.1 > delta).collect();
    let mut alive = vec![true; list.len()];
    for p in 0..list.len() {
        if !alive[p] {
            continue;
        }
        let fp = d.column(list[p].0);
        let removed: Vec<usize> = (p + 1..list.len())
            .into_par_iter()
            .filter(|&q| alive[q] && symmetrical_uncertainty(fp, d.column(list[q].0)) >= list[q].1)
            .collect();
        for q in removed {
            alive[q] = false;
        }
    }
    let mut survivors: Vec<usize> = list.iter().zip(&alive).filter(|(_, &a)| a).map(|(e, _)| e.0).collect();
    survivors.sort_unstable();
    Ok(survivors)
}
