//! Synthetic high-dimensional benchmark data.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Synthetic {
    pub data: Dataset,
    /// 0-based indices of the informative features, ascending.
    pub informative: Vec<usize>,
}

/// `m` samples of `n` standard-normal features. The label is the sign of the
/// sum over `n_informative` randomly placed features; samples whose sum lies
/// within `margin` of zero are rejected and redrawn. Classes are balanced
/// (the extra sample of an odd `m` is positive).
pub fn informative_gaussian(m: usize, n: usize, n_informative: usize, margin: f64, seed: u64) -> Result<Synthetic> {
    if n_informative == 0 || n_informative > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ informative ≤ n, got {n_informative} of {n}"
        )));
    }
    if m < 2 || !(margin >= 0.0) {
        return Err(Error::InvalidParameter("need m ≥ 2 and margin ≥ 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions: Vec<usize> = (0..n).collect();
    positions.shuffle(&mut rng);
    let mut informative = positions[..n_informative].to_vec();
    informative.sort_unstable();

    let want_pos = m.div_ceil(2);
    let want_neg = m / 2;
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    while pos.len() < want_pos || neg.len() < want_neg {
        let row: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let s: f64 = informative.iter().map(|&j| row[j]).sum();
        if s.abs() < margin {
            continue;
        }
        if s > 0.0 && pos.len() < want_pos {
            pos.push(row);
        } else if s < 0.0 && neg.len() < want_neg {
            neg.push(row);
        }
    }
    // interleave so any prefix is roughly balanced
    let mut rows = Vec::with_capacity(m);
    let mut labels = Vec::with_capacity(m);
    let (mut pi, mut ni) = (pos.into_iter(), neg.into_iter());
    loop {
        match (pi.next(), ni.next()) {
            (None, None) => break,
            (p, q) => {
                if let Some(r) = p {
                    rows.push(r);
                    labels.push(1);
                }
                if let Some(r) = q {
                    rows.push(r);
                    labels.push(-1);
                }
            }
        }
    }
    Ok(Synthetic { data: Dataset::from_rows(rows, labels)?, informative })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_follow_informative_sum() {
        let s = informative_gaussian(40, 12, 3, 0.5, 9).unwrap();
        assert_eq!(s.data.class_counts(), (20, 20));
        for i in 0..40 {
            let sum: f64 = s.informative.iter().map(|&j| s.data.row(i)[j]).sum();
            assert!(s.data.label(i) * sum >= 0.5);
        }
        let again = informative_gaussian(40, 12, 3, 0.5, 9).unwrap();
        assert_eq!(again.data, s.data);
    }
}
