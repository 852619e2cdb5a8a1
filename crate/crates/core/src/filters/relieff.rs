//! ReliefF with Manhattan distance and range-normalized feature differences.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{FeatureRanking, RankingMethod};
use crate::dataset::Dataset;
use crate::error::{Error, Result};

pub const DEFAULT_K_NEIGHBORS: usize = 10;

/// ReliefF weights using every sample as an anchor.
///
/// For anchor `x` with `k` nearest hits `H` and misses `Q`,
/// `W[f] += (Σ_Q diff(f) − Σ_H diff(f)) / (M k)`, where `diff` is the
/// absolute difference divided by the feature's range over `d`. Distance
/// ties are broken by a `seed`-dependent permutation of the samples.
pub fn relieff_weights(d: &Dataset, k_neighbors: usize, seed: u64) -> Result<Vec<f64>> {
    if k_neighbors == 0 {
        return Err(Error::InvalidParameter("k_neighbors must be at least 1".into()));
    }
    let (neg, pos) = d.class_counts();
    for (label, count) in [(-1i8, neg), (1, pos)] {
        if count <= k_neighbors {
            return Err(Error::TooFewSamples { label, count, needed: k_neighbors + 1 });
        }
    }
    let m = d.n_samples();
    let n = d.n_features();

    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for row in d.samples() {
        for j in 0..n {
            lo[j] = lo[j].min(row[j]);
            hi[j] = hi[j].max(row[j]);
        }
    }
    let inv_range: Vec<f64> = lo.iter().zip(&hi).map(|(l, h)| if h > l { 1.0 / (h - l) } else { 0.0 }).collect();

    let mut tiebreak: Vec<usize> = (0..m).collect();
    tiebreak.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let contributions: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|a| {
            let anchor = d.row(a);
            let mut hits = Vec::with_capacity(m);
            let mut misses = Vec::with_capacity(m);
            for o in (0..m).filter(|&o| o != a) {
                let dist: f64 = anchor
                    .iter()
                    .zip(d.row(o))
                    .zip(&inv_range)
                    .map(|((x, z), r)| (x - z).abs() * r)
                    .sum();
                let entry = (dist, tiebreak[o], o);
                if d.labels()[o] == d.labels()[a] {
                    hits.push(entry);
                } else {
                    misses.push(entry);
                }
            }
            let nearest = |v: &mut Vec<(f64, usize, usize)>| {
                v.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
                v.truncate(k_neighbors);
            };
            nearest(&mut hits);
            nearest(&mut misses);
            let mut delta = vec![0.0; n];
            for (sign, group) in [(-1.0, &hits), (1.0, &misses)] {
                for &(_, _, o) in group.iter() {
                    for (j, dj) in delta.iter_mut().enumerate() {
                        *dj += sign * (anchor[j] - d.row(o)[j]).abs() * inv_range[j];
                    }
                }
            }
            delta
        })
        .collect();

    let scale = 1.0 / (m as f64 * k_neighbors as f64);
    let mut w = vec![0.0; n];
    for delta in &contributions {
        for (wj, dj) in w.iter_mut().zip(delta) {
            *wj += dj * scale;
        }
    }
    Ok(w)
}

pub fn relieff_rank(d: &Dataset, k_neighbors: usize, seed: u64) -> Result<FeatureRanking> {
    let w = relieff_weights(d, k_neighbors, seed)?;
    Ok(FeatureRanking::from_scores(&w, RankingMethod::Relieff, format!("relieff k={k_neighbors}")))
}
