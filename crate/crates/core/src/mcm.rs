//! Linear Minimal Complexity Machine.
//!
//! For samples `x^i` with labels `y_i ∈ {±1}` the soft-margin machine solves
//!
//! ```text
//! minimize    h + C Σ q_i
//! subject to  h ≥ y_i (w·x^i + b) + q_i
//!             y_i (w·x^i + b) + q_i ≥ 1
//!             q_i ≥ 0
//! ```
//!
//! The `classic` variant drops `q_i` from the first family. The hard-margin
//! machine fixes every `q_i` at zero. The LP variables are laid out as
//! `(h, w⁺, w⁻, b⁺, b⁻, q)` with `w = w⁺ − w⁻` and `b = b⁺ − b⁻`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, FoldPlan, Standardizer};
use crate::error::{Error, Result};
use crate::linprog::{solve_lp, LinearProgram, LpSolution, LpStatus, Relation, SolverOptions};

pub const DEFAULT_C: f64 = 1.0;
pub const DEFAULT_REL_TOL: f64 = 1e-6;
pub const ABS_FLOOR: f64 = 1e-10;
pub const C_GRID: [f64; 5] = [1e-2, 1e-1, 1.0, 10.0, 100.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum McmVariant {
    /// Slack appears in both constraint families.
    Paper,
    /// Slack only in the margin constraint: `h ≥ y_i (w·x^i + b)`.
    Classic,
}

impl McmVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            McmVariant::Paper => "paper",
            McmVariant::Classic => "classic",
        }
    }
}

impl std::str::FromStr for McmVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(McmVariant::Paper),
            "classic" => Ok(McmVariant::Classic),
            other => Err(Error::InvalidParameter(format!("unknown MCM variant '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McmConfig {
    pub c: f64,
    pub variant: McmVariant,
    pub hard_margin: bool,
    pub rel_tol: f64,
    /// Pick `c` from [`C_GRID`] by inner 3-fold CV instead of using `c`.
    pub tune_c: bool,
    pub feas_tol: f64,
    pub opt_tol: f64,
    pub max_iters: usize,
}

impl Default for McmConfig {
    fn default() -> Self {
        let lp = SolverOptions::default();
        Self {
            c: DEFAULT_C,
            variant: McmVariant::Paper,
            hard_margin: false,
            rel_tol: DEFAULT_REL_TOL,
            tune_c: false,
            feas_tol: lp.feas_tol,
            opt_tol: lp.opt_tol,
            max_iters: lp.max_iters,
        }
    }
}

impl McmConfig {
    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions { feas_tol: self.feas_tol, opt_tol: self.opt_tol, max_iters: self.max_iters }
    }
}

/// Column positions of the MCM variables inside its LP.
#[derive(Debug, Clone, Copy)]
pub struct McmLayout {
    pub n: usize,
    pub m: usize,
    pub has_slack: bool,
}

impl McmLayout {
    pub fn h(&self) -> usize {
        0
    }
    pub fn w_pos(&self, j: usize) -> usize {
        1 + j
    }
    pub fn w_neg(&self, j: usize) -> usize {
        1 + self.n + j
    }
    pub fn b_pos(&self) -> usize {
        1 + 2 * self.n
    }
    pub fn b_neg(&self) -> usize {
        2 + 2 * self.n
    }
    pub fn q(&self, i: usize) -> Option<usize> {
        self.has_slack.then(|| 3 + 2 * self.n + i)
    }
    pub fn n_vars(&self) -> usize {
        3 + 2 * self.n + if self.has_slack { self.m } else { 0 }
    }
}

fn check_training_data(d: &Dataset) -> Result<()> {
    if !d.has_both_classes() {
        return Err(Error::SingleClass);
    }
    Ok(())
}

/// Builds the MCM linear program: two rows per sample.
pub fn build_mcm_lp(d: &Dataset, c: f64, hard_margin: bool, variant: McmVariant) -> Result<(LinearProgram, McmLayout)> {
    check_training_data(d)?;
    if !hard_margin && !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("C must be positive, got {c}")));
    }
    let layout = McmLayout { n: d.n_features(), m: d.n_samples(), has_slack: !hard_margin };
    let mut objective = vec![0.0; layout.n_vars()];
    objective[layout.h()] = 1.0;
    for i in 0..layout.m {
        if let Some(q) = layout.q(i) {
            objective[q] = c;
        }
    }
    let mut lp = LinearProgram::new(objective);
    for i in 0..layout.m {
        let y = d.label(i);
        let mut margin = vec![0.0; layout.n_vars()];
        for (j, &x) in d.row(i).iter().enumerate() {
            margin[layout.w_pos(j)] = y * x;
            margin[layout.w_neg(j)] = -y * x;
        }
        margin[layout.b_pos()] = y;
        margin[layout.b_neg()] = -y;

        let mut capacity = margin.clone();
        capacity[layout.h()] = -1.0;
        if let Some(q) = layout.q(i) {
            margin[q] = 1.0;
            if variant == McmVariant::Paper {
                capacity[q] = 1.0;
            }
        }
        lp.add_row(capacity, Relation::Le, 0.0)?;
        lp.add_row(margin, Relation::Ge, 1.0)?;
    }
    Ok((lp, layout))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSelection {
    /// Ascending 0-based feature indices.
    pub indices: Vec<usize>,
    pub threshold: f64,
    /// Set when nothing passed the threshold.
    pub empty: bool,
}

/// Indices `j` with `|w_j| > max(rel_tol · max_k |w_k|, ABS_FLOOR)`.
pub fn select_features(w: &[f64], rel_tol: f64) -> FeatureSelection {
    let max_abs = w.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let threshold = (rel_tol * max_abs).max(ABS_FLOOR);
    let indices: Vec<usize> = (0..w.len()).filter(|&j| w[j].abs() > threshold).collect();
    let empty = indices.is_empty();
    FeatureSelection { indices, threshold, empty }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McmModel {
    pub w: Vec<f64>,
    pub b: f64,
    pub h: f64,
    /// Slacks; all zero for the hard-margin machine.
    pub q: Vec<f64>,
    pub c: f64,
    pub variant: McmVariant,
    pub hard_margin: bool,
    pub selected: Vec<usize>,
    pub threshold_used: f64,
    pub objective: f64,
    pub lp_iterations: usize,
    /// Original label names for `-1` and `+1`.
    pub class_names: [Option<String>; 2],
    /// Preprocessing fitted alongside the model, if any.
    pub standardizer: Option<Standardizer>,
}

pub fn train_mcm(d: &Dataset, cfg: &McmConfig) -> Result<McmModel> {
    let c = if cfg.tune_c && !cfg.hard_margin { tune_c(d, cfg, &C_GRID, 3, 0)? } else { cfg.c };
    train_with_c(d, cfg, c)
}

fn train_with_c(d: &Dataset, cfg: &McmConfig, c: f64) -> Result<McmModel> {
    let (lp, layout) = build_mcm_lp(d, c, cfg.hard_margin, cfg.variant)?;
    let sol = solve_lp(&lp, &cfg.solver_options())?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible if cfg.hard_margin => {
            return Err(Error::InvalidData("training data is not linearly separable".into()))
        }
        status => return Err(Error::Lp { status, iterations: sol.iterations }),
    }
    Ok(model_from_solution(d, &sol, layout, c, cfg))
}

fn model_from_solution(d: &Dataset, sol: &LpSolution, layout: McmLayout, c: f64, cfg: &McmConfig) -> McmModel {
    let x = &sol.point;
    let w: Vec<f64> = (0..layout.n).map(|j| x[layout.w_pos(j)] - x[layout.w_neg(j)]).collect();
    let q: Vec<f64> = (0..layout.m).map(|i| layout.q(i).map_or(0.0, |k| x[k])).collect();
    let selection = select_features(&w, cfg.rel_tol);
    McmModel {
        b: x[layout.b_pos()] - x[layout.b_neg()],
        h: x[layout.h()],
        q,
        c,
        variant: cfg.variant,
        hard_margin: cfg.hard_margin,
        selected: selection.indices,
        threshold_used: selection.threshold,
        objective: sol.objective_value,
        lp_iterations: sol.iterations,
        class_names: d.class_names().clone(),
        standardizer: None,
        w,
    }
}

/// Chooses `C` from `grid` by stratified CV accuracy of the MCM discriminant
/// on `d` alone. Ties go to the smaller `C`.
pub fn tune_c(d: &Dataset, cfg: &McmConfig, grid: &[f64], folds: usize, seed: u64) -> Result<f64> {
    check_training_data(d)?;
    let (neg, pos) = d.class_counts();
    let folds = folds.min(neg).min(pos);
    if folds < 2 || grid.len() == 1 {
        return Ok(if grid.contains(&cfg.c) || grid.is_empty() { cfg.c } else { grid[0] });
    }
    let plan = FoldPlan::stratified(d, folds, seed)?;
    let mut best = (f64::NEG_INFINITY, cfg.c);
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    for &c in &sorted {
        let mut correct = 0usize;
        for (train, test) in plan.splits() {
            let model = train_with_c(&d.subset_rows(&train), cfg, c)?;
            correct += test
                .iter()
                .filter(|&&i| model.predict(d.row(i)).map(|p| p == d.labels()[i]).unwrap_or(false))
                .count();
        }
        let acc = correct as f64 / d.n_samples() as f64;
        if acc > best.0 {
            best = (acc, c);
        }
    }
    Ok(best.1)
}

impl McmModel {
    pub fn n_features(&self) -> usize {
        self.w.len()
    }

    /// `w·x + b`.
    pub fn decision(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.w.len() {
            return Err(Error::DimensionMismatch { expected: self.w.len(), got: x.len() });
        }
        Ok(self.w.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.b)
    }

    /// Sign of the discriminant, with 0 mapped to `+1`.
    pub fn predict(&self, x: &[f64]) -> Result<i8> {
        Ok(sign(self.decision(x)?))
    }

    /// Re-thresholds the weights and records the threshold on the model.
    pub fn select(&mut self, rel_tol: f64) -> FeatureSelection {
        let s = select_features(&self.w, rel_tol);
        self.selected = s.indices.clone();
        self.threshold_used = s.threshold;
        s
    }

    pub fn slack_sum(&self) -> f64 {
        self.q.iter().sum()
    }

    /// Number of nonzero entries among `(w, b, h, q)`.
    pub fn nonzero_count(&self) -> usize {
        let nz = |v: f64| usize::from(v.abs() > ABS_FLOOR);
        self.w.iter().map(|&v| nz(v)).sum::<usize>()
            + nz(self.b)
            + nz(self.h)
            + self.q.iter().map(|&v| nz(v)).sum::<usize>()
    }

    /// Writes the model as `key = value` lines. Reals use 17 significant
    /// digits so parsing reproduces them bit for bit; feature indices are
    /// 1-based.
    pub fn to_document(&self) -> String {
        let mut out = String::from("# linear MCM model\n");
        let _ = writeln!(out, "kind = mcm");
        let _ = writeln!(out, "n = {}", self.w.len());
        let _ = writeln!(out, "C = {}", fmt_real(self.c));
        let _ = writeln!(out, "variant = {}", self.variant.as_str());
        let _ = writeln!(out, "hard_margin = {}", self.hard_margin);
        let _ = writeln!(out, "b = {}", fmt_real(self.b));
        let _ = writeln!(out, "h = {}", fmt_real(self.h));
        let _ = writeln!(out, "threshold_used = {}", fmt_real(self.threshold_used));
        let _ = writeln!(out, "selected = {}", join(self.selected.iter().map(|j| (j + 1).to_string())));
        let _ = writeln!(out, "w = {}", join(self.w.iter().map(|&v| fmt_real(v))));
        write_classes(&mut out, &self.class_names);
        if let Some(s) = &self.standardizer {
            write_standardizer(&mut out, s);
        }
        out
    }

    pub fn from_document(text: &str) -> Result<Self> {
        let doc = Document::read(text)?;
        if doc.get("kind")? != "mcm" {
            return Err(Error::Model("not an MCM model".into()));
        }
        let n: usize = doc.parse("n")?;
        let w = doc.reals("w")?;
        if w.len() != n {
            return Err(Error::Model(format!("w has {} entries, n = {n}", w.len())));
        }
        let selected = doc
            .list("selected")?
            .iter()
            .map(|s| match s.parse::<usize>() {
                Ok(j) if j >= 1 && j <= n => Ok(j - 1),
                _ => Err(Error::Model(format!("bad selected index '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            c: doc.real("C")?,
            variant: doc.get("variant")?.parse()?,
            hard_margin: doc.parse("hard_margin")?,
            b: doc.real("b")?,
            h: doc.real("h")?,
            threshold_used: doc.real("threshold_used")?,
            selected,
            w,
            q: Vec::new(),
            objective: f64::NAN,
            lp_iterations: 0,
            class_names: doc.classes(),
            standardizer: doc.standardizer()?,
        })
    }
}

pub(crate) fn sign(v: f64) -> i8 {
    if v >= 0.0 {
        1
    } else {
        -1
    }
}

/// `max_i y_i(w·x^i + b) / min_i y_i(w·x^i + b)` for a separating hyperplane.
pub fn h_ratio(w: &[f64], b: f64, d: &Dataset) -> Result<f64> {
    if w.len() != d.n_features() {
        return Err(Error::DimensionMismatch { expected: d.n_features(), got: w.len() });
    }
    let margins = (0..d.n_samples()).map(|i| {
        d.label(i) * (w.iter().zip(d.row(i)).map(|(a, x)| a * x).sum::<f64>() + b)
    });
    let (lo, hi) = margins.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo <= 0.0 {
        return Err(Error::NotSeparating(lo));
    }
    Ok(hi / lo)
}

/// Confidence term of the VC generalization bound:
/// `sqrt((γ(1 + ln(2M)/γ) − ln(η/4)) / M)`.
pub fn vc_bound_term(gamma: f64, m: usize, eta: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter("M must be at least 1".into()));
    }
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter(format!("gamma must be positive, got {gamma}")));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidParameter(format!("eta must lie in (0, 1), got {eta}")));
    }
    let m = m as f64;
    Ok(((gamma * (1.0 + (2.0 * m).ln() / gamma) - (eta / 4.0).ln()) / m).sqrt())
}

pub(crate) fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) fn join<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().collect::<Vec<_>>().join(" ")
}

pub(crate) fn write_classes(out: &mut String, names: &[Option<String>; 2]) {
    if let [Some(neg), Some(pos)] = names {
        let _ = writeln!(out, "classes = {neg} {pos}");
    }
}

pub(crate) fn write_standardizer(out: &mut String, s: &Standardizer) {
    let _ = writeln!(out, "means = {}", join(s.means.iter().map(|&v| fmt_real(v))));
    let _ = writeln!(out, "sds = {}", join(s.sds.iter().map(|&v| fmt_real(v))));
}

/// `key = value` lines; blank lines and `#` comments ignored.
pub(crate) struct Document {
    entries: Vec<(String, String)>,
}

impl Document {
    pub(crate) fn read(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Model(format!("line {}: expected key = value", i + 1)))?;
            entries.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(Self { entries })
    }

    pub(crate) fn find(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub(crate) fn get(&self, key: &str) -> Result<&str> {
        self.find(key).ok_or_else(|| Error::Model(format!("missing key '{key}'")))
    }

    pub(crate) fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let v = self.get(key)?;
        v.parse().map_err(|_| Error::Model(format!("bad value for '{key}': '{v}'")))
    }

    pub(crate) fn real(&self, key: &str) -> Result<f64> {
        self.parse(key)
    }

    pub(crate) fn list(&self, key: &str) -> Result<Vec<&str>> {
        Ok(self.get(key)?.split_whitespace().collect())
    }

    pub(crate) fn reals(&self, key: &str) -> Result<Vec<f64>> {
        self.list(key)?
            .iter()
            .map(|s| s.parse().map_err(|_| Error::Model(format!("bad real '{s}' in '{key}'"))))
            .collect()
    }

    pub(crate) fn classes(&self) -> [Option<String>; 2] {
        match self.find("classes").map(|v| v.split_whitespace().collect::<Vec<_>>()) {
            Some(v) if v.len() == 2 => [Some(v[0].to_string()), Some(v[1].to_string())],
            _ => [None, None],
        }
    }

    pub(crate) fn standardizer(&self) -> Result<Option<Standardizer>> {
        match (self.find("means"), self.find("sds")) {
            (Some(_), Some(_)) => {
                let means = self.reals("means")?;
                let sds = self.reals("sds")?;
                if means.len() != sds.len() {
                    return Err(Error::Model("means and sds differ in length".into()));
                }
                Ok(Some(Standardizer { means, sds, sd_floor: crate::dataset::SD_FLOOR }))
            }
            (None, None) => Ok(None),
            _ => Err(Error::Model("means and sds must appear together".into())),
        }
    }
}
