//! Filter-style feature selectors used as baselines: ReliefF and FCBF.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod fcbf;
pub mod relieff;

pub use fcbf::{discretize_equal_frequency, fcbf_rank, fcbf_select, symmetrical_uncertainty, DiscreteDataset, Discretizer};
pub use relieff::{relieff_rank, relieff_weights};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankingMethod {
    Relieff,
    Fcbf,
}

/// Features ordered by descending score; ties go to the lower index.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRanking {
    pub entries: Vec<(usize, f64)>,
    pub method: RankingMethod,
    pub cutoff_rule: String,
}

impl FeatureRanking {
    pub fn from_scores(scores: &[f64], method: RankingMethod, cutoff_rule: impl Into<String>) -> Self {
        let mut entries: Vec<(usize, f64)> = scores.iter().copied().enumerate().collect();
        entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        Self { entries, method, cutoff_rule: cutoff_rule.into() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Two-column text table `name<TAB>score`, in ranking order.
    pub fn to_table(&self, feature_names: &[String]) -> String {
        let mut out = String::from("feature\tscore\n");
        for &(j, s) in &self.entries {
            let name = feature_names.get(j).map_or_else(|| format!("f{}", j + 1), Clone::clone);
            let _ = writeln!(out, "{name}\t{s:?}");
        }
        out
    }
}

/// Smallest ranking prefix whose clamped-positive score mass reaches
/// `fraction` of the total. Returned indices are ascending.
pub fn cumulative_fraction_select(r: &FeatureRanking, fraction: f64) -> Result<Vec<usize>> {
    if r.is_empty() {
        return Err(Error::InvalidParameter("empty ranking".into()));
    }
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!("fraction must lie in (0, 1], got {fraction}")));
    }
    let total: f64 = r.entries.iter().map(|e| e.1.max(0.0)).sum();
    let mut chosen = Vec::new();
    if total <= 0.0 {
        chosen.push(r.entries[0].0);
    } else {
        let target = fraction * total;
        let mut acc = 0.0;
        for &(j, s) in &r.entries {
            acc += s.max(0.0);
            chosen.push(j);
            if acc >= target {
                break;
            }
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranking(scores: &[f64]) -> FeatureRanking {
        FeatureRanking::from_scores(scores, RankingMethod::Relieff, "test")
    }

    #[test]
    fn ranking_orders_and_breaks_ties() {
        let r = ranking(&[0.5, -0.2, 0.5, 0.7]);
        let order: Vec<usize> = r.entries.iter().map(|e| e.0).collect();
        assert_eq!(order, vec![3, 0, 2, 1]);
    }

    #[test]
    fn fraction_prefix_walk() {
        assert_eq!(cumulative_fraction_select(&ranking(&[0.5, 0.3, 0.2]), 0.4).unwrap(), vec![0]);
        assert_eq!(cumulative_fraction_select(&ranking(&[0.5, 0.3, 0.2]), 0.6).unwrap(), vec![0, 1]);
        assert_eq!(cumulative_fraction_select(&ranking(&[0.5, 0.3, 0.2]), 1.0).unwrap(), vec![0, 1, 2]);
        assert_eq!(cumulative_fraction_select(&ranking(&[-3.0]), 0.9).unwrap(), vec![0]);
        assert_eq!(cumulative_fraction_select(&ranking(&[0.5, -0.2, 0.5]), 0.4).unwrap(), vec![0]);
        assert_eq!(cumulative_fraction_select(&ranking(&[-0.5, 0.0, -0.1]), 0.4).unwrap(), vec![1]);
    }

    #[test]
    fn fraction_bounds_checked() {
        assert!(cumulative_fraction_select(&ranking(&[1.0]), 0.0).is_err());
        assert!(cumulative_fraction_select(&ranking(&[1.0]), 1.5).is_err());
        assert!(cumulative_fraction_select(&ranking(&[]), 0.5).is_err());
    }

    #[test]
    fn table_export() {
        let r = ranking(&[0.25, 1.0]);
        let t = r.to_table(&["a".into(), "b".into()]);
        assert_eq!(t, "feature\tscore\nb\t1.0\na\t0.25\n");
    }
}
