//! Cross-validated comparison of feature selectors with a downstream RBF SVM.
//!
//! Each outer fold standardizes on its training split, selects features on
//! the training split (or once on the whole dataset in `global` mode), tunes
//! the SVM by a grid search nested inside the training split, and scores the
//! held-out split. All methods of one comparison share the same fold plan.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, FoldPlan, Standardizer};
use crate::error::{Error, Result};
use crate::filters::{cumulative_fraction_select, fcbf, fcbf_select, relieff, relieff_rank, Discretizer};
use crate::mcm::{train_mcm, McmConfig};
use crate::svm::{default_c_grid, default_gamma_grid, grid_search, train_svm, GridResult, SmoOptions};

pub const DEFAULT_FRACTION: f64 = 0.4;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_FOLDS: usize = 5;
pub const DEFAULT_INNER_FOLDS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mcm,
    Relieff,
    Fcbf,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mcm => "mcm",
            Method::Relieff => "relieff",
            Method::Fcbf => "fcbf",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Method::Mcm => "MCM",
            Method::Relieff => "ReliefF",
            Method::Fcbf => "FCBF",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mcm" => Ok(Method::Mcm),
            "relieff" => Ok(Method::Relieff),
            "fcbf" => Ok(Method::Fcbf),
            other => Err(Error::InvalidParameter(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMode {
    PerFold,
    Global,
}

impl std::str::FromStr for SelectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per_fold" | "per-fold" => Ok(SelectionMode::PerFold),
            "global" => Ok(SelectionMode::Global),
            other => Err(Error::InvalidParameter(format!("unknown selection mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub seed: u64,
    pub selection: SelectionMode,
    pub mcm: McmConfig,
    pub relieff_k: usize,
    pub fraction: f64,
    pub fcbf_bins: usize,
    pub fcbf_delta: f64,
    pub svm_c_grid: Vec<f64>,
    pub svm_gamma_grid: Vec<f64>,
    pub inner_folds: usize,
    pub smo: SmoOptions,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            selection: SelectionMode::PerFold,
            mcm: McmConfig::default(),
            relieff_k: relieff::DEFAULT_K_NEIGHBORS,
            fraction: DEFAULT_FRACTION,
            fcbf_bins: fcbf::DEFAULT_BINS,
            fcbf_delta: fcbf::DEFAULT_DELTA,
            svm_c_grid: default_c_grid(),
            svm_gamma_grid: default_gamma_grid(),
            inner_folds: DEFAULT_INNER_FOLDS,
            smo: SmoOptions::default(),
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameter(msg.into()));
        if !(self.fraction > 0.0 && self.fraction <= 1.0) {
            return bad("fraction must lie in (0, 1]");
        }
        if !(self.fcbf_delta >= 0.0) {
            return bad("delta must be nonnegative");
        }
        if self.fcbf_bins < 2 {
            return bad("bins must be at least 2");
        }
        if self.relieff_k == 0 {
            return bad("k_neighbors must be at least 1");
        }
        if !(self.mcm.c > 0.0) {
            return bad("C must be positive");
        }
        if self.svm_c_grid.is_empty() || self.svm_gamma_grid.is_empty() {
            return bad("SVM grids must be nonempty");
        }
        if self.svm_c_grid.iter().chain(&self.svm_gamma_grid).any(|v| !(*v > 0.0)) {
            return bad("SVM grid values must be positive");
        }
        Ok(())
    }
}

/// Features chosen by `method` on an already standardized training split.
/// Returned indices are ascending and may be empty.
pub fn select_with(method: Method, train: &Dataset, cfg: &EvalConfig) -> Result<Vec<usize>> {
    match method {
        Method::Mcm => Ok(train_mcm(train, &cfg.mcm)?.selected),
        Method::Relieff => {
            let (neg, pos) = train.class_counts();
            let k = cfg.relieff_k.min(neg.min(pos).saturating_sub(1));
            if k == 0 {
                return Err(Error::TooFewSamples { label: if neg < pos { -1 } else { 1 }, count: neg.min(pos), needed: 2 });
            }
            let ranking = relieff_rank(train, k, cfg.seed)?;
            cumulative_fraction_select(&ranking, cfg.fraction)
        }
        Method::Fcbf => {
            let discrete = Discretizer::fit(train, cfg.fcbf_bins)?.apply(train)?;
            fcbf_select(&discrete, cfg.fcbf_delta)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoldOutcome {
    /// Ascending 0-based indices used by the SVM in this fold.
    pub selected: Vec<usize>,
    /// Selection came back empty and all features were used instead.
    pub fallback: bool,
    pub hyper: GridResult,
    pub accuracy: f64,
    pub test_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodRecord {
    pub method: Method,
    /// Selection size (global mode) or its mean over folds (per-fold mode).
    pub selected_count: f64,
    /// Size of the union of per-fold selections.
    pub selected_union: usize,
    pub folds: Vec<FoldOutcome>,
    pub fold_accuracies: Vec<f64>,
    pub mean_accuracy: f64,
    /// Population standard deviation across folds.
    pub std_accuracy: f64,
    pub wall_time: f64,
}

impl MethodRecord {
    pub fn any_fallback(&self) -> bool {
        self.folds.iter().any(|f| f.fallback)
    }
}

/// `(mean, population standard deviation)`.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / k;
    (mean, var.sqrt())
}

fn tune_svm(train: &Dataset, selected: &[usize], cfg: &EvalConfig) -> Result<GridResult> {
    let (neg, pos) = train.class_counts();
    let folds = cfg.inner_folds.min(neg).min(pos);
    let single = cfg.svm_c_grid.len() == 1 && cfg.svm_gamma_grid.len() == 1;
    if folds < 2 || single {
        let c = if cfg.svm_c_grid.len() == 1 { cfg.svm_c_grid[0] } else { 1.0 };
        let g = if cfg.svm_gamma_grid.len() == 1 { cfg.svm_gamma_grid[0] } else { 1.0 / selected.len() as f64 };
        return Ok(GridResult { c, kernel_gamma: g, cv_accuracy: f64::NAN });
    }
    grid_search(train, selected, &cfg.svm_c_grid, &cfg.svm_gamma_grid, folds, cfg.seed, &cfg.smo)
}

fn standardized(train: &Dataset, other: &Dataset) -> Result<(Dataset, Dataset)> {
    let s = Standardizer::fit(train)?;
    Ok((s.apply(train)?, s.apply(other)?))
}

pub fn run_method_cv(d: &Dataset, method: Method, plan: &FoldPlan, cfg: &EvalConfig) -> Result<MethodRecord> {
    cfg.validate()?;
    if plan.assignments.len() != d.n_samples() {
        return Err(Error::DimensionMismatch { expected: d.n_samples(), got: plan.assignments.len() });
    }
    let start = Instant::now();
    let global = match cfg.selection {
        SelectionMode::Global => {
            let full = Standardizer::fit(d)?.apply(d)?;
            Some(select_with(method, &full, cfg)?)
        }
        SelectionMode::PerFold => None,
    };

    let folds: Vec<FoldOutcome> = plan
        .splits()
        .into_par_iter()
        .map(|(train_idx, test_idx)| {
            let (train, test) = standardized(&d.subset_rows(&train_idx), &d.subset_rows(&test_idx))?;
            let mut selected = match &global {
                Some(s) => s.clone(),
                None => select_with(method, &train, cfg)?,
            };
            let fallback = selected.is_empty();
            if fallback {
                selected = (0..d.n_features()).collect();
            }
            let hyper = tune_svm(&train, &selected, cfg)?;
            let model = train_svm(&train, &selected, hyper.c, hyper.kernel_gamma, &cfg.smo)?;
            let accuracy = model.accuracy(&test)?;
            Ok(FoldOutcome { selected, fallback, hyper, accuracy, test_indices: test_idx })
        })
        .collect::<Result<Vec<_>>>()?;

    let fold_accuracies: Vec<f64> = folds.iter().map(|f| f.accuracy).collect();
    let (mean_accuracy, std_accuracy) = mean_std(&fold_accuracies);
    let mut union: Vec<usize> = folds.iter().flat_map(|f| f.selected.iter().copied()).collect();
    union.sort_unstable();
    union.dedup();
    let selected_count = match &global {
        Some(s) if !s.is_empty() => s.len() as f64,
        _ => folds.iter().map(|f| f.selected.len() as f64).sum::<f64>() / folds.len().max(1) as f64,
    };
    Ok(MethodRecord {
        method,
        selected_count,
        selected_union: union.len(),
        folds,
        fold_accuracies,
        mean_accuracy,
        std_accuracy,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    pub dataset_name: String,
    pub n_samples: usize,
    pub n_features: usize,
    pub plan: FoldPlan,
    pub config: EvalConfig,
    pub methods: Vec<MethodRecord>,
}

pub fn compare_methods(
    dataset_name: &str,
    d: &Dataset,
    methods: &[Method],
    plan: &FoldPlan,
    cfg: &EvalConfig,
) -> Result<CvReport> {
    if methods.is_empty() {
        return Err(Error::InvalidParameter("no methods to compare".into()));
    }
    let records = methods
        .iter()
        .map(|&m| run_method_cv(d, m, plan, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(CvReport {
        dataset_name: dataset_name.to_string(),
        n_samples: d.n_samples(),
        n_features: d.n_features(),
        plan: plan.clone(),
        config: cfg.clone(),
        methods: records,
    })
}

#[derive(Serialize, Deserialize)]
struct ReportDoc {
    dataset: String,
    samples: usize,
    features: usize,
    folds: usize,
    seed: u64,
    selection: SelectionMode,
    notes: Vec<String>,
    fold_assignments: Vec<usize>,
    config: EvalConfig,
    methods: Vec<MethodDoc>,
}

#[derive(Serialize, Deserialize)]
struct MethodDoc {
    method: Method,
    selected_count: f64,
    selected_union: usize,
    mean_accuracy: f64,
    std_accuracy: f64,
    fold_accuracies: Vec<f64>,
    any_fallback: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_seconds: Option<f64>,
    fold: Vec<FoldDoc>,
}

#[derive(Serialize, Deserialize)]
struct FoldDoc {
    index: usize,
    accuracy: f64,
    svm_c: f64,
    svm_gamma: f64,
    inner_cv_accuracy: Option<f64>,
    fallback: bool,
    test_samples: Vec<usize>,
    /// 1-based feature indices.
    selected: Vec<usize>,
}

impl CvReport {
    pub fn record(&self, method: Method) -> Option<&MethodRecord> {
        self.methods.iter().find(|r| r.method == method)
    }

    /// TOML document with every report field. Wall times are omitted unless
    /// `include_timing` is set, so repeated runs produce identical bytes.
    pub fn to_document(&self, include_timing: bool) -> Result<String> {
        let doc = ReportDoc {
            dataset: self.dataset_name.clone(),
            samples: self.n_samples,
            features: self.n_features,
            folds: self.plan.k,
            seed: self.config.seed,
            selection: self.config.selection,
            notes: vec![
                "accuracy std is the population standard deviation over folds".into(),
                "SVM grid search is nested inside each outer training split".into(),
                "standardization is fitted on each outer training split".into(),
            ],
            fold_assignments: self.plan.assignments.clone(),
            config: self.config.clone(),
            methods: self
                .methods
                .iter()
                .map(|r| MethodDoc {
                    method: r.method,
                    selected_count: r.selected_count,
                    selected_union: r.selected_union,
                    mean_accuracy: r.mean_accuracy,
                    std_accuracy: r.std_accuracy,
                    fold_accuracies: r.fold_accuracies.clone(),
                    any_fallback: r.any_fallback(),
                    wall_time_seconds: include_timing.then_some(r.wall_time),
                    fold: r
                        .folds
                        .iter()
                        .enumerate()
                        .map(|(i, f)| FoldDoc {
                            index: i,
                            accuracy: f.accuracy,
                            svm_c: f.hyper.c,
                            svm_gamma: f.hyper.kernel_gamma,
                            inner_cv_accuracy: (!f.hyper.cv_accuracy.is_nan()).then_some(f.hyper.cv_accuracy),
                            fallback: f.fallback,
                            test_samples: f.test_indices.clone(),
                            selected: f.selected.iter().map(|j| j + 1).collect(),
                        })
                        .collect(),
                })
                .collect(),
        };
        toml::to_string(&doc).map_err(|e| Error::InvalidData(format!("report serialization failed: {e}")))
    }
}

/// Percentage with one decimal, rounding halves up.
pub fn percent(v: f64) -> String {
    let tenths = (v * 1000.0 + 1e-9).floor() + if (v * 1000.0 + 1e-9).fract() >= 0.5 { 1.0 } else { 0.0 };
    format!("{:.1}", tenths / 10.0)
}

fn count_cell(v: f64) -> String {
    if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.1}")
    }
}

/// Table with one row per dataset: feature counts, then `mean ± std%` per
/// method, in the order the methods appear in the first report.
pub fn format_table(reports: &[CvReport]) -> String {
    let methods: Vec<Method> = reports.first().map(|r| r.methods.iter().map(|m| m.method).collect()).unwrap_or_default();
    let mut out = String::from("Feature Selection Results\n");
    let labels: Vec<&str> = methods.iter().map(|m| m.label()).collect();
    let _ = writeln!(
        out,
        "Dataset (samples × dimension) | Features: {} | Test Set Accuracy: {}",
        labels.join(" | "),
        labels.join(" | ")
    );
    for r in reports {
        let mut row = format!("{} ({} × {})", r.dataset_name, r.n_samples, r.n_features);
        let cells: Vec<&MethodRecord> = methods.iter().filter_map(|&m| r.record(m)).collect();
        for rec in &cells {
            let _ = write!(row, " | {}", count_cell(rec.selected_count));
        }
        for rec in &cells {
            if rec.fold_accuracies.is_empty() {
                row.push_str(" | n/a");
            } else {
                let _ = write!(row, " | {} ± {}%", percent(rec.mean_accuracy), percent(rec.std_accuracy));
            }
        }
        out.push_str(&row);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(method: Method, count: f64, accs: Vec<f64>) -> MethodRecord {
        let (mean_accuracy, std_accuracy) = mean_std(&accs);
        MethodRecord {
            method,
            selected_count: count,
            selected_union: count as usize,
            folds: vec![],
            fold_accuracies: accs,
            mean_accuracy,
            std_accuracy,
            wall_time: 0.0,
        }
    }

    fn report(name: &str, m: usize, n: usize, methods: Vec<MethodRecord>) -> CvReport {
        CvReport {
            dataset_name: name.into(),
            n_samples: m,
            n_features: n,
            plan: FoldPlan { k: 5, seed: 42, assignments: vec![] },
            config: EvalConfig::default(),
            methods,
        }
    }

    #[test]
    fn half_up_percentages() {
        assert_eq!(percent(0.83333), "83.3");
        assert_eq!(percent(0.958), "95.8");
        assert_eq!(percent(0.042), "4.2");
        assert_eq!(percent(0.9585), "95.9");
        assert_eq!(percent(1.0), "100.0");
        assert_eq!(percent(0.0), "0.0");
    }

    #[test]
    fn golub_row() {
        let mut rec = record(Method::Mcm, 47.0, vec![1.0]);
        rec.mean_accuracy = 0.958;
        rec.std_accuracy = 0.042;
        let t = format_table(&[report("Golub", 72, 7129, vec![rec])]);
        let row = t.lines().nth(2).unwrap();
        assert_eq!(row, "Golub (72 × 7129) | 47 | 95.8 ± 4.2%");
    }

    #[test]
    fn empty_report_row() {
        let t = format_table(&[report("Alon", 62, 2000, vec![])]);
        assert_eq!(t.lines().nth(2).unwrap(), "Alon (62 × 2000)");
    }

    #[test]
    fn population_std() {
        let (m, s) = mean_std(&[1.0, 0.0, 1.0, 0.0]);
        assert_eq!((m, s), (0.5, 0.5));
    }

    #[test]
    fn config_validation() {
        assert!(EvalConfig::default().validate().is_ok());
        let cfg = EvalConfig { fraction: 0.0, ..EvalConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = EvalConfig { svm_gamma_grid: vec![], ..EvalConfig::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn method_names() {
        for m in [Method::Mcm, Method::Relieff, Method::Fcbf] {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("lasso".parse::<Method>().is_err());
    }
}
