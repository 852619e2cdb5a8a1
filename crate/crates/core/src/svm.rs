//! Gaussian-kernel SVM trained with Platt's sequential minimal optimization.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, FoldPlan, Standardizer};
use crate::error::{Error, Result};
use crate::mcm::{fmt_real, join, sign, write_classes, write_standardizer, Document};

pub const DEFAULT_KKT_TOL: f64 = 1e-3;
pub const DEFAULT_MAX_PASSES: usize = 200;
const STEP_EPS: f64 = 1e-10;

/// `exp(-γ ‖x − z‖²)`.
pub fn rbf_kernel(x: &[f64], z: &[f64], gamma: f64) -> Result<f64> {
    if x.len() != z.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: z.len() });
    }
    Ok((-gamma * sq_dist(x, z)).exp())
}

fn sq_dist(x: &[f64], z: &[f64]) -> f64 {
    x.iter().zip(z).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// `C ∈ {2⁻⁵, 2⁻³, …, 2¹⁵}`.
pub fn default_c_grid() -> Vec<f64> {
    (-5..=15).step_by(2).map(|e| 2f64.powi(e)).collect()
}

/// `γ ∈ {2⁻¹⁵, 2⁻¹³, …, 2³}`.
pub fn default_gamma_grid() -> Vec<f64> {
    (-15..=3).step_by(2).map(|e| 2f64.powi(e)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoOptions {
    pub kkt_tol: f64,
    /// Maximum number of full sweeps over the training set.
    pub max_passes: usize,
}

impl Default for SmoOptions {
    fn default() -> Self {
        Self { kkt_tol: DEFAULT_KKT_TOL, max_passes: DEFAULT_MAX_PASSES }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvmModel {
    /// Support samples restricted to `feature_subset`.
    pub support_samples: Vec<Vec<f64>>,
    /// `α_i y_i` per support sample.
    pub coeffs: Vec<f64>,
    pub bias: f64,
    pub kernel_gamma: f64,
    pub c: f64,
    /// 0-based indices into the original feature vector.
    pub feature_subset: Vec<usize>,
    pub n_features: usize,
    pub class_names: [Option<String>; 2],
    pub standardizer: Option<Standardizer>,
}

/// Solution of the SVM dual on a precomputed kernel matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSolution {
    pub alpha: Vec<f64>,
    pub bias: f64,
    pub passes: usize,
}

impl DualSolution {
    /// `Σ α − ½ Σ_ij α_i α_j y_i y_j K_ij`.
    pub fn objective(&self, kernel: &[Vec<f64>], y: &[f64]) -> f64 {
        dual_objective(&self.alpha, kernel, y)
    }
}

pub fn dual_objective(alpha: &[f64], kernel: &[Vec<f64>], y: &[f64]) -> f64 {
    let mut quad = 0.0;
    for i in 0..alpha.len() {
        if alpha[i] == 0.0 {
            continue;
        }
        for j in 0..alpha.len() {
            quad += alpha[i] * alpha[j] * y[i] * y[j] * kernel[i][j];
        }
    }
    alpha.iter().sum::<f64>() - 0.5 * quad
}

struct Smo<'a> {
    k: &'a [Vec<f64>],
    y: &'a [f64],
    c: f64,
    tol: f64,
    alpha: Vec<f64>,
    b: f64,
    /// `f(x_i) − y_i`.
    err: Vec<f64>,
}

impl Smo<'_> {
    fn is_bound(&self, i: usize) -> bool {
        self.alpha[i] <= 0.0 || self.alpha[i] >= self.c
    }

    fn violates(&self, i: usize) -> bool {
        let r = self.err[i] * self.y[i];
        (r < -self.tol && self.alpha[i] < self.c) || (r > self.tol && self.alpha[i] > 0.0)
    }

    fn examine(&mut self, i2: usize) -> bool {
        if !self.violates(i2) {
            return false;
        }
        let m = self.alpha.len();
        let e2 = self.err[i2];
        let free: Vec<usize> = (0..m).filter(|&i| !self.is_bound(i)).collect();
        if free.len() > 1 {
            let i1 = free
                .iter()
                .copied()
                .filter(|&i| i != i2)
                .max_by(|&a, &b| (self.err[a] - e2).abs().total_cmp(&(self.err[b] - e2).abs()));
            if let Some(i1) = i1 {
                if self.take_step(i1, i2) {
                    return true;
                }
            }
        }
        let start = (i2 + 1) % m;
        for off in 0..free.len() {
            let i1 = free[(start + off) % free.len()];
            if i1 != i2 && self.take_step(i1, i2) {
                return true;
            }
        }
        for off in 0..m {
            let i1 = (start + off) % m;
            if i1 != i2 && self.take_step(i1, i2) {
                return true;
            }
        }
        false
    }

    fn take_step(&mut self, i1: usize, i2: usize) -> bool {
        let (a1, a2) = (self.alpha[i1], self.alpha[i2]);
        let (y1, y2) = (self.y[i1], self.y[i2]);
        let (e1, e2) = (self.err[i1], self.err[i2]);
        let s = y1 * y2;
        let c = self.c;
        let (lo, hi) = if s < 0.0 {
            ((a2 - a1).max(0.0), (c + a2 - a1).min(c))
        } else {
            ((a1 + a2 - c).max(0.0), (a1 + a2).min(c))
        };
        if hi - lo <= 0.0 {
            return false;
        }
        let (k11, k12, k22) = (self.k[i1][i1], self.k[i1][i2], self.k[i2][i2]);
        let eta = k11 + k22 - 2.0 * k12;
        let mut new_a2 = if eta > 1e-12 {
            (a2 + y2 * (e1 - e2) / eta).clamp(lo, hi)
        } else {
            // objective is linear along the constraint line; take the better end
            let f1 = y1 * (e1 - self.b) - a1 * k11 - s * a2 * k12;
            let f2 = y2 * (e2 - self.b) - s * a1 * k12 - a2 * k22;
            let obj = |a2n: f64| {
                let a1n = a1 + s * (a2 - a2n);
                a1n * f1 + a2n * f2 + 0.5 * a1n * a1n * k11 + 0.5 * a2n * a2n * k22 + s * a1n * a2n * k12
            };
            let (ol, oh) = (obj(lo), obj(hi));
            if ol < oh - STEP_EPS {
                lo
            } else if ol > oh + STEP_EPS {
                hi
            } else {
                a2
            }
        };
        if new_a2 < 1e-12 {
            new_a2 = 0.0;
        } else if new_a2 > c - 1e-12 * c.max(1.0) {
            new_a2 = c;
        }
        if (new_a2 - a2).abs() < STEP_EPS * (new_a2 + a2 + STEP_EPS) {
            return false;
        }
        let mut new_a1 = a1 + s * (a2 - new_a2);
        if new_a1 < 1e-12 {
            new_a1 = 0.0;
        } else if new_a1 > c - 1e-12 * c.max(1.0) {
            new_a1 = c;
        }

        let d1 = y1 * (new_a1 - a1);
        let d2 = y2 * (new_a2 - a2);
        let b1 = self.b - e1 - d1 * k11 - d2 * k12;
        let b2 = self.b - e2 - d1 * k12 - d2 * k22;
        let new_b = if new_a1 > 0.0 && new_a1 < c {
            b1
        } else if new_a2 > 0.0 && new_a2 < c {
            b2
        } else {
            0.5 * (b1 + b2)
        };
        let db = new_b - self.b;
        for (i, e) in self.err.iter_mut().enumerate() {
            *e += d1 * self.k[i1][i] + d2 * self.k[i2][i] + db;
        }
        self.alpha[i1] = new_a1;
        self.alpha[i2] = new_a2;
        self.b = new_b;
        true
    }

    /// Recomputes errors from scratch and places the bias at the midpoint of
    /// its KKT-feasible interval (or the mean over free samples).
    fn refresh(&mut self) {
        let m = self.alpha.len();
        for i in 0..m {
            let f: f64 = (0..m).map(|j| self.alpha[j] * self.y[j] * self.k[j][i]).sum();
            self.err[i] = f - self.y[i];
        }
        let free: Vec<usize> = (0..m).filter(|&i| !self.is_bound(i)).collect();
        let new_b = if free.is_empty() {
            // bias range from the bound samples: y f >= 1 at 0, <= 1 at C
            let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
            for i in 0..m {
                let g = -(self.err[i] + self.y[i]) + self.y[i];
                let at_zero = self.alpha[i] <= 0.0;
                if (self.y[i] > 0.0) == at_zero {
                    lo = lo.max(g);
                } else {
                    hi = hi.min(g);
                }
            }
            match (lo.is_finite(), hi.is_finite()) {
                (true, true) => 0.5 * (lo + hi),
                (true, false) => lo,
                (false, true) => hi,
                (false, false) => 0.0,
            }
        } else {
            free.iter().map(|&i| -(self.err[i] + self.y[i]) + self.y[i]).sum::<f64>() / free.len() as f64
        };
        for e in self.err.iter_mut() {
            *e += new_b;
        }
        self.b = new_b;
    }

    fn max_violation(&self) -> f64 {
        (0..self.alpha.len())
            .map(|i| {
                let r = self.err[i] * self.y[i];
                let mut v: f64 = 0.0;
                if self.alpha[i] < self.c {
                    v = v.max(-r);
                }
                if self.alpha[i] > 0.0 {
                    v = v.max(r);
                }
                v
            })
            .fold(0.0, f64::max)
    }
}

/// Solves the box- and equality-constrained SVM dual on kernel matrix `k`.
pub fn smo_solve(k: &[Vec<f64>], y: &[f64], c: f64, opts: &SmoOptions) -> Result<DualSolution> {
    let m = y.len();
    if k.len() != m || k.iter().any(|r| r.len() != m) {
        return Err(Error::DimensionMismatch { expected: m, got: k.len() });
    }
    if !(c > 0.0) || !(opts.kkt_tol > 0.0) {
        return Err(Error::InvalidParameter("C and kkt_tol must be positive".into()));
    }
    let mut smo = Smo { k, y, c, tol: opts.kkt_tol, alpha: vec![0.0; m], b: 0.0, err: y.iter().map(|v| -v).collect() };
    let mut passes = 0;
    let mut examine_all = true;
    // bounds runaway free-sample loops on pathological kernels
    let mut budget = 100_000usize.max(50 * m * m) * opts.max_passes.max(1);
    loop {
        let mut changed = 0usize;
        if examine_all {
            if passes >= opts.max_passes {
                smo.refresh();
                return Err(Error::SvmNotConverged { passes, max_violation: smo.max_violation() });
            }
            passes += 1;
            for i in 0..m {
                changed += usize::from(smo.examine(i));
            }
        } else {
            for i in 0..m {
                if !smo.is_bound(i) {
                    changed += usize::from(smo.examine(i));
                }
            }
        }
        budget = budget.saturating_sub(m);
        if budget == 0 {
            smo.refresh();
            return Err(Error::SvmNotConverged { passes, max_violation: smo.max_violation() });
        }
        if examine_all {
            if changed == 0 {
                smo.refresh();
                if smo.max_violation() <= opts.kkt_tol {
                    break;
                }
            }
            examine_all = false;
        } else if changed == 0 {
            examine_all = true;
        }
    }
    Ok(DualSolution { alpha: smo.alpha, bias: smo.b, passes })
}

fn kernel_matrix(rows: &[Vec<f64>], gamma: f64) -> Vec<Vec<f64>> {
    let m = rows.len();
    let mut k = vec![vec![0.0; m]; m];
    for i in 0..m {
        k[i][i] = 1.0;
        for j in 0..i {
            let v = (-gamma * sq_dist(&rows[i], &rows[j])).exp();
            k[i][j] = v;
            k[j][i] = v;
        }
    }
    k
}

fn check_subset(d: &Dataset, feature_subset: &[usize]) -> Result<()> {
    if !d.has_both_classes() {
        return Err(Error::SingleClass);
    }
    if feature_subset.is_empty() {
        return Err(Error::InvalidParameter("empty feature subset".into()));
    }
    if let Some(&j) = feature_subset.iter().find(|&&j| j >= d.n_features()) {
        return Err(Error::InvalidParameter(format!("feature index {j} out of range")));
    }
    Ok(())
}

fn project(x: &[f64], subset: &[usize]) -> Vec<f64> {
    subset.iter().map(|&j| x[j]).collect()
}

pub fn train_svm(
    d: &Dataset,
    feature_subset: &[usize],
    c: f64,
    kernel_gamma: f64,
    opts: &SmoOptions,
) -> Result<SvmModel> {
    check_subset(d, feature_subset)?;
    if !(kernel_gamma > 0.0) {
        return Err(Error::InvalidParameter(format!("kernel gamma must be positive, got {kernel_gamma}")));
    }
    let rows: Vec<Vec<f64>> = d.samples().iter().map(|r| project(r, feature_subset)).collect();
    let y: Vec<f64> = (0..d.n_samples()).map(|i| d.label(i)).collect();
    let k = kernel_matrix(&rows, kernel_gamma);
    let sol = smo_solve(&k, &y, c, opts)?;
    Ok(model_from_dual(d, rows, &y, &sol, feature_subset, c, kernel_gamma))
}

fn model_from_dual(
    d: &Dataset,
    rows: Vec<Vec<f64>>,
    y: &[f64],
    sol: &DualSolution,
    feature_subset: &[usize],
    c: f64,
    kernel_gamma: f64,
) -> SvmModel {
    let mut support_samples = Vec::new();
    let mut coeffs = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        if sol.alpha[i] > 0.0 {
            support_samples.push(row);
            coeffs.push(sol.alpha[i] * y[i]);
        }
    }
    SvmModel {
        support_samples,
        coeffs,
        bias: sol.bias,
        kernel_gamma,
        c,
        feature_subset: feature_subset.to_vec(),
        n_features: d.n_features(),
        class_names: d.class_names().clone(),
        standardizer: None,
    }
}

impl SvmModel {
    /// Decision value on a full-length feature vector.
    pub fn decision(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n_features {
            return Err(Error::DimensionMismatch { expected: self.n_features, got: x.len() });
        }
        let z = project(x, &self.feature_subset);
        Ok(self
            .support_samples
            .iter()
            .zip(&self.coeffs)
            .map(|(s, a)| a * (-self.kernel_gamma * sq_dist(s, &z)).exp())
            .sum::<f64>()
            + self.bias)
    }

    pub fn predict(&self, x: &[f64]) -> Result<i8> {
        Ok(sign(self.decision(x)?))
    }

    pub fn accuracy(&self, d: &Dataset) -> Result<f64> {
        let mut correct = 0usize;
        for i in 0..d.n_samples() {
            correct += usize::from(self.predict(d.row(i))? == d.labels()[i]);
        }
        Ok(correct as f64 / d.n_samples() as f64)
    }

    pub fn n_support(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_document(&self) -> String {
        let mut out = String::from("# RBF SVM model\n");
        let _ = writeln!(out, "kind = svm");
        let _ = writeln!(out, "n = {}", self.n_features);
        let _ = writeln!(out, "C = {}", fmt_real(self.c));
        let _ = writeln!(out, "kernel_gamma = {}", fmt_real(self.kernel_gamma));
        let _ = writeln!(out, "bias = {}", fmt_real(self.bias));
        let _ = writeln!(out, "feature_subset = {}", join(self.feature_subset.iter().map(|j| (j + 1).to_string())));
        let _ = writeln!(out, "n_support = {}", self.coeffs.len());
        let _ = writeln!(out, "coeffs = {}", join(self.coeffs.iter().map(|&v| fmt_real(v))));
        for (i, s) in self.support_samples.iter().enumerate() {
            let _ = writeln!(out, "sv{} = {}", i + 1, join(s.iter().map(|&v| fmt_real(v))));
        }
        write_classes(&mut out, &self.class_names);
        if let Some(s) = &self.standardizer {
            write_standardizer(&mut out, s);
        }
        out
    }

    pub fn from_document(text: &str) -> Result<Self> {
        let doc = Document::read(text)?;
        if doc.get("kind")? != "svm" {
            return Err(Error::Model("not an SVM model".into()));
        }
        let n_features: usize = doc.parse("n")?;
        let feature_subset = doc
            .list("feature_subset")?
            .iter()
            .map(|s| match s.parse::<usize>() {
                Ok(j) if j >= 1 && j <= n_features => Ok(j - 1),
                _ => Err(Error::Model(format!("bad feature index '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let n_support: usize = doc.parse("n_support")?;
        let coeffs = doc.reals("coeffs")?;
        if coeffs.len() != n_support {
            return Err(Error::Model("coeffs length differs from n_support".into()));
        }
        let support_samples = (1..=n_support)
            .map(|i| {
                let s = doc.reals(&format!("sv{i}"))?;
                if s.len() != feature_subset.len() {
                    return Err(Error::Model(format!("sv{i} has wrong length")));
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            support_samples,
            coeffs,
            bias: doc.real("bias")?,
            kernel_gamma: doc.real("kernel_gamma")?,
            c: doc.real("C")?,
            feature_subset,
            n_features,
            class_names: doc.classes(),
            standardizer: doc.standardizer()?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub c: f64,
    pub kernel_gamma: f64,
    pub cv_accuracy: f64,
}

/// Picks `(C, γ)` by stratified `folds`-fold CV on `d` restricted to
/// `feature_subset`. Ties go to the smaller `C`, then the smaller `γ`.
/// Cells whose training fails score zero on that fold.
pub fn grid_search(
    d: &Dataset,
    feature_subset: &[usize],
    c_grid: &[f64],
    gamma_grid: &[f64],
    folds: usize,
    seed: u64,
    opts: &SmoOptions,
) -> Result<GridResult> {
    check_subset(d, feature_subset)?;
    if c_grid.is_empty() || gamma_grid.is_empty() {
        return Err(Error::InvalidParameter("empty hyperparameter grid".into()));
    }
    if folds < 2 {
        return Err(Error::InvalidParameter("grid search needs at least 2 folds".into()));
    }
    let plan = FoldPlan::stratified(d, folds, seed)?;
    let rows: Vec<Vec<f64>> = d.samples().iter().map(|r| project(r, feature_subset)).collect();
    let y: Vec<f64> = (0..d.n_samples()).map(|i| d.label(i)).collect();
    let m = rows.len();
    let mut dist = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..i {
            let v = sq_dist(&rows[i], &rows[j]);
            dist[i][j] = v;
            dist[j][i] = v;
        }
    }
    let splits = plan.splits();

    let mut cells: Vec<(f64, f64)> = Vec::with_capacity(c_grid.len() * gamma_grid.len());
    let mut cs = c_grid.to_vec();
    cs.sort_by(f64::total_cmp);
    let mut gs = gamma_grid.to_vec();
    gs.sort_by(f64::total_cmp);
    for &c in &cs {
        for &g in &gs {
            cells.push((c, g));
        }
    }

    let scores: Vec<f64> = cells
        .par_iter()
        .map(|&(c, g)| {
            let mut total = 0.0;
            for (train, test) in &splits {
                let k: Vec<Vec<f64>> = train
                    .iter()
                    .map(|&i| train.iter().map(|&j| (-g * dist[i][j]).exp()).collect())
                    .collect();
                let yt: Vec<f64> = train.iter().map(|&i| y[i]).collect();
                let Ok(sol) = smo_solve(&k, &yt, c, opts) else {
                    continue;
                };
                let correct = test
                    .iter()
                    .filter(|&&t| {
                        let f: f64 = train
                            .iter()
                            .zip(&sol.alpha)
                            .filter(|(_, &a)| a > 0.0)
                            .map(|(&i, &a)| a * y[i] * (-g * dist[i][t]).exp())
                            .sum::<f64>()
                            + sol.bias;
                        f64::from(sign(f)) == y[t]
                    })
                    .count();
                total += correct as f64 / test.len() as f64;
            }
            total / splits.len() as f64
        })
        .collect();

    let mut best = 0;
    for (idx, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = idx;
        }
    }
    Ok(GridResult { c: cells[best].0, kernel_gamma: cells[best].1, cv_accuracy: scores[best] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor() -> Dataset {
        Dataset::from_rows(
            vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![1.0, 0.0]],
            vec![1, 1, -1, -1],
        )
        .unwrap()
    }

    #[test]
    fn kernel_values() {
        assert_eq!(rbf_kernel(&[0.3, -1.0], &[0.3, -1.0], 2.0).unwrap(), 1.0);
        let v = rbf_kernel(&[0.0, 0.0], &[1.0, 1.0], 0.5).unwrap();
        assert!((v - (-1f64).exp()).abs() < 1e-15);
        assert!((v - 0.3679).abs() < 1e-4);
        assert_eq!(
            rbf_kernel(&[0.1, 2.0], &[1.5, -0.3], 0.7).unwrap(),
            rbf_kernel(&[1.5, -0.3], &[0.1, 2.0], 0.7).unwrap()
        );
        assert!(rbf_kernel(&[1.0], &[1.0, 2.0], 1.0).is_err());
    }

    #[test]
    fn xor_is_fit_exactly() {
        let d = xor();
        let m = train_svm(&d, &[0, 1], 10.0, 1.0, &SmoOptions::default()).unwrap();
        assert_eq!(m.n_support(), 4);
        assert_eq!(m.accuracy(&d).unwrap(), 1.0);
        assert!(m.coeffs.iter().sum::<f64>().abs() < 1e-6);
    }

    #[test]
    fn symmetric_pair() {
        let d = Dataset::from_rows(vec![vec![1.0], vec![-1.0]], vec![1, -1]).unwrap();
        let m = train_svm(&d, &[0], 1000.0, 0.5, &SmoOptions::default()).unwrap();
        // 2-variable dual: α = 1 / (1 − e^{−2})
        let alpha = 1.0 / (1.0 - (-2f64).exp());
        for c in &m.coeffs {
            assert!((c.abs() - alpha).abs() < 1e-6);
        }
        for (x, label) in [(1.0, 1), (-1.0, -1)] {
            assert_eq!(m.predict(&[x]).unwrap(), label);
            let f = m.decision(&[x]).unwrap();
            assert!((f64::from(label) * f - 1.0).abs() <= DEFAULT_KKT_TOL);
        }
    }

    #[test]
    fn training_preconditions() {
        let d = Dataset::from_rows(vec![vec![1.0], vec![2.0]], vec![1, 1]).unwrap();
        assert!(matches!(train_svm(&d, &[0], 1.0, 1.0, &SmoOptions::default()), Err(Error::SingleClass)));
        assert!(train_svm(&xor(), &[], 1.0, 1.0, &SmoOptions::default()).is_err());
        assert!(train_svm(&xor(), &[2], 1.0, 1.0, &SmoOptions::default()).is_err());
    }

    #[test]
    fn degenerate_models() {
        let mut m = train_svm(&xor(), &[0, 1], 10.0, 1.0, &SmoOptions::default()).unwrap();
        m.support_samples.clear();
        m.coeffs.clear();
        m.bias = -0.5;
        assert_eq!(m.predict(&[0.0, 0.0]).unwrap(), -1);
        m.bias = 0.0;
        assert_eq!(m.predict(&[0.0, 0.0]).unwrap(), 1);
        assert!(m.predict(&[0.0]).is_err());
    }

    #[test]
    fn grids() {
        let c = default_c_grid();
        assert_eq!(c.len(), 11);
        assert_eq!((c[0], c[10]), (2f64.powi(-5), 2f64.powi(15)));
        let g = default_gamma_grid();
        assert_eq!(g.len(), 10);
        assert_eq!((g[0], g[9]), (2f64.powi(-15), 8.0));
    }

    #[test]
    fn document_round_trip() {
        let mut m = train_svm(&xor(), &[1, 0], 10.0, 1.0, &SmoOptions::default()).unwrap();
        m.class_names = [Some("a".into()), Some("b".into())];
        let back = SvmModel::from_document(&m.to_document()).unwrap();
        assert_eq!(back, m);
    }
}
