//! `mcmfs`: feature selection, model training, prediction, and benchmarking.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mcmfs::dataset::{load_dataset, parse_csv_features, parse_sparse, Format};
use mcmfs::eval::{self, compare_methods, format_table, EvalConfig, Method, SelectionMode};
use mcmfs::filters::{fcbf_rank, relieff_rank, Discretizer};
use mcmfs::mcm::train_mcm;
use mcmfs::svm::{grid_search, train_svm};
use mcmfs::{Dataset, FoldPlan, McmModel, McmVariant, Standardizer, SvmModel};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("option error: {0}")]
    Option(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("training error: {0}")]
    Training(String),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Option(_) => 2,
            CliError::Input(_) => 3,
            CliError::Training(_) => 4,
            CliError::Output(_) => 5,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn training(e: mcmfs::Error) -> CliError {
    CliError::Training(e.to_string())
}

#[derive(Parser)]
#[command(name = "mcmfs", version, about = "Sparse feature selection with the linear Minimal Complexity Machine")]
struct Cli {
    /// Print the effective configuration (every default included) and exit.
    #[arg(long, global = true)]
    show_config: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Select features and write their 1-based indices.
    Select(SelectArgs),
    /// Train an MCM or RBF-SVM model and write it as a document.
    Train(TrainArgs),
    /// Predict labels with a trained model.
    Predict(PredictArgs),
    /// Cross-validate selectors with a downstream RBF SVM.
    Benchmark(BenchmarkArgs),
}

#[derive(Args, Clone)]
struct DataArgs {
    /// Dataset path.
    #[arg(long)]
    input: PathBuf,
    /// `csv` (headered) or `sparse` (`label idx:val ...`).
    #[arg(long, default_value = "csv")]
    format: String,
    /// Name of the CSV label column.
    #[arg(long, default_value = "label")]
    label_column: String,
}

#[derive(Args, Clone)]
struct SelectorArgs {
    /// MCM trade-off constant.
    #[arg(long = "C", default_value_t = mcmfs::mcm::DEFAULT_C)]
    c: f64,
    /// `paper` (slack in both constraint families) or `classic`.
    #[arg(long, default_value = "paper")]
    mcm_variant: String,
    /// Choose C by inner cross-validation instead of using `--C`.
    #[arg(long)]
    tune_c: bool,
    /// ReliefF neighbours per class.
    #[arg(long, default_value_t = mcmfs::filters::relieff::DEFAULT_K_NEIGHBORS)]
    k: usize,
    /// ReliefF cumulative score fraction.
    #[arg(long, default_value_t = eval::DEFAULT_FRACTION)]
    fraction: f64,
    /// FCBF equal-frequency bins.
    #[arg(long, default_value_t = mcmfs::filters::fcbf::DEFAULT_BINS)]
    bins: usize,
    /// FCBF relevance threshold.
    #[arg(long, default_value_t = mcmfs::filters::fcbf::DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, default_value_t = eval::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct SelectArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    selector: SelectorArgs,
    /// `mcm`, `relieff`, or `fcbf`.
    #[arg(long, default_value = "mcm")]
    method: String,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the full ranking table (ReliefF and FCBF only).
    #[arg(long)]
    ranking: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    selector: SelectorArgs,
    /// `mcm` or `svm`.
    #[arg(long, default_value = "mcm")]
    model_type: String,
    /// Selector applied before SVM training (`mcm`, `relieff`, `fcbf`, `none`).
    #[arg(long, default_value = "none")]
    method: String,
    /// Inner folds for the SVM grid search.
    #[arg(long, default_value_t = eval::DEFAULT_INNER_FOLDS)]
    folds: usize,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    /// Dataset path; the label column may be absent from CSV input.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long, default_value = "label")]
    label_column: String,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Comma-separated SVM C values (default 2^-5, 2^-3, ..., 2^15).
    #[arg(long)]
    svm_c: Option<String>,
    /// Comma-separated RBF gamma values (default 2^-15, 2^-13, ..., 2^3).
    #[arg(long)]
    svm_gamma: Option<String>,
}

#[derive(Args)]
struct BenchmarkArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    selector: SelectorArgs,
    /// Comma-separated methods.
    #[arg(long, default_value = "mcm,relieff,fcbf")]
    methods: String,
    #[arg(long, default_value_t = eval::DEFAULT_FOLDS)]
    folds: usize,
    /// Folds of the grid search nested in each training split.
    #[arg(long, default_value_t = eval::DEFAULT_INNER_FOLDS)]
    inner_folds: usize,
    /// `per_fold` or `global`.
    #[arg(long, default_value = "per_fold")]
    selection: String,
    #[command(flatten)]
    grid: GridArgs,
    /// Dataset name in the report (default: input file stem).
    #[arg(long)]
    name: Option<String>,
    /// Report path; standard output when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the results table.
    #[arg(long)]
    table: bool,
    /// Include wall-clock times in the report (breaks byte-for-byte reproducibility).
    #[arg(long)]
    timing: bool,
}

fn parse_option<T: std::str::FromStr>(what: &str, v: &str) -> CliResult<T>
where
    T::Err: std::fmt::Display,
{
    v.parse().map_err(|e| CliError::Option(format!("--{what}: {e}")))
}

fn parse_list(what: &str, v: &str) -> CliResult<Vec<f64>> {
    let values = v
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| CliError::Option(format!("--{what}: '{s}' is not a number"))))
        .collect::<CliResult<Vec<_>>>()?;
    if values.is_empty() || values.iter().any(|x| x.is_nan() || *x <= 0.0 || x.is_infinite()) {
        return Err(CliError::Option(format!("--{what}: values must be positive")));
    }
    Ok(values)
}

fn eval_config(s: &SelectorArgs, grid: Option<&GridArgs>) -> CliResult<EvalConfig> {
    let mut cfg = EvalConfig { seed: s.seed, ..EvalConfig::default() };
    cfg.mcm.c = s.c;
    cfg.mcm.variant = parse_option::<McmVariant>("mcm-variant", &s.mcm_variant)?;
    cfg.mcm.tune_c = s.tune_c;
    cfg.relieff_k = s.k;
    cfg.fraction = s.fraction;
    cfg.fcbf_bins = s.bins;
    cfg.fcbf_delta = s.delta;
    if let Some(g) = grid {
        if let Some(v) = &g.svm_c {
            cfg.svm_c_grid = parse_list("svm-c", v)?;
        }
        if let Some(v) = &g.svm_gamma {
            cfg.svm_gamma_grid = parse_list("svm-gamma", v)?;
        }
    }
    if !(s.c > 0.0 && s.c.is_finite()) {
        return Err(CliError::Option("--C must be positive".into()));
    }
    cfg.validate().map_err(|e| CliError::Option(e.to_string()))?;
    Ok(cfg)
}

fn load(data: &DataArgs) -> CliResult<Dataset> {
    let format = parse_option::<Format>("format", &data.format)?;
    load_dataset(&data.input, format, &data.label_column)
        .map_err(|e| CliError::Input(format!("{}: {e}", data.input.display())))
}

fn standardize(d: &Dataset) -> CliResult<(Standardizer, Dataset)> {
    let s = Standardizer::fit(d).map_err(|e| CliError::Input(e.to_string()))?;
    let z = s.apply(d).map_err(training)?;
    Ok((s, z))
}

/// Writes through a sibling temporary file so a failed run never leaves a
/// partial output behind.
fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let name = path.file_name().ok_or_else(|| CliError::Output(format!("{}: not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = fs::write(&tmp, contents).and_then(|_| fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::Output(format!("{}: {e}", path.display())));
    }
    Ok(())
}

fn emit(path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        Some(p) => write_atomic(p, contents),
        None => std::io::stdout().write_all(contents.as_bytes()).map_err(|e| CliError::Output(e.to_string())),
    }
}

fn run_select(a: &SelectArgs) -> CliResult<()> {
    let method = parse_option::<Method>("method", &a.method)?;
    let cfg = eval_config(&a.selector, None)?;
    if a.ranking.is_some() && method == Method::Mcm {
        return Err(CliError::Option("--ranking applies to relieff and fcbf only".into()));
    }
    let d = load(&a.data)?;
    let (_, z) = standardize(&d)?;
    let selected = eval::select_with(method, &z, &cfg).map_err(training)?;
    let ranking = match (&a.ranking, method) {
        (Some(_), Method::Relieff) => Some(relieff_rank(&z, cfg.relieff_k, cfg.seed).map_err(training)?),
        (Some(_), Method::Fcbf) => {
            let disc = Discretizer::fit(&z, cfg.fcbf_bins).and_then(|b| b.apply(&z)).map_err(training)?;
            Some(fcbf_rank(&disc))
        }
        _ => None,
    };

    let mut out = format!(
        "# mcmfs select method={} seed={} samples={} features={}\n# selected={}\n",
        method.as_str(),
        cfg.seed,
        d.n_samples(),
        d.n_features(),
        selected.len()
    );
    if selected.is_empty() {
        eprintln!("warning: no feature selected");
    }
    for &j in &selected {
        out.push_str(&format!("{}\t{}\n", j + 1, d.feature_names()[j]));
    }
    if let (Some(path), Some(r)) = (&a.ranking, &ranking) {
        write_atomic(path, &r.to_table(d.feature_names()))?;
    }
    emit(a.out.as_deref(), &out)
}

fn run_train(a: &TrainArgs) -> CliResult<()> {
    let cfg = eval_config(&a.selector, Some(&a.grid))?;
    let svm = match a.model_type.as_str() {
        "mcm" => false,
        "svm" => true,
        other => return Err(CliError::Option(format!("--model-type: expected mcm or svm, got '{other}'"))),
    };
    let method = match a.method.as_str() {
        "none" => None,
        m => Some(parse_option::<Method>("method", m)?),
    };
    if !svm && method.is_some() {
        return Err(CliError::Option("--method applies to --model-type svm only".into()));
    }
    if a.folds < 2 {
        return Err(CliError::Option("--folds must be at least 2".into()));
    }
    let d = load(&a.data)?;
    let (standardizer, z) = standardize(&d)?;
    let header = format!("# mcmfs train model_type={} seed={} samples={}\n", a.model_type, cfg.seed, d.n_samples());
    let doc = if svm {
        let mut subset = match method {
            Some(m) => eval::select_with(m, &z, &cfg).map_err(training)?,
            None => (0..d.n_features()).collect(),
        };
        if subset.is_empty() {
            eprintln!("warning: empty selection, training on all features");
            subset = (0..d.n_features()).collect();
        }
        let (neg, pos) = z.class_counts();
        let folds = a.folds.min(neg).min(pos);
        let best = if folds >= 2 {
            grid_search(&z, &subset, &cfg.svm_c_grid, &cfg.svm_gamma_grid, folds, cfg.seed, &cfg.smo).map_err(training)?
        } else {
            return Err(CliError::Training(format!("each class needs at least 2 samples for the grid search, found {neg} and {pos}")));
        };
        let mut model: SvmModel = train_svm(&z, &subset, best.c, best.kernel_gamma, &cfg.smo).map_err(training)?;
        model.standardizer = Some(standardizer);
        format!("{header}# grid cv_accuracy = {:?}\n{}", best.cv_accuracy, model.to_document())
    } else {
        let mut model: McmModel = train_mcm(&z, &cfg.mcm).map_err(training)?;
        if model.selected.is_empty() {
            eprintln!("warning: all weights are zero");
        }
        model.standardizer = Some(standardizer);
        format!("{header}{}", model.to_document())
    };
    write_atomic(&a.out, &doc)
}

enum Model {
    Mcm(McmModel),
    Svm(SvmModel),
}

impl Model {
    fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let kind = text.lines().find_map(|l| l.trim().strip_prefix("kind").map(|r| r.trim_start_matches([' ', '=']).trim().to_string()));
        let bad = |e: mcmfs::Error| CliError::Input(format!("{}: {e}", path.display()));
        match kind.as_deref() {
            Some("mcm") => McmModel::from_document(&text).map(Model::Mcm).map_err(bad),
            Some("svm") => SvmModel::from_document(&text).map(Model::Svm).map_err(bad),
            _ => Err(CliError::Input(format!("{}: not a model document", path.display()))),
        }
    }

    fn n_features(&self) -> usize {
        match self {
            Model::Mcm(m) => m.n_features(),
            Model::Svm(m) => m.n_features,
        }
    }

    fn standardizer(&self) -> Option<&Standardizer> {
        match self {
            Model::Mcm(m) => m.standardizer.as_ref(),
            Model::Svm(m) => m.standardizer.as_ref(),
        }
    }

    fn class_names(&self) -> &[Option<String>; 2] {
        match self {
            Model::Mcm(m) => &m.class_names,
            Model::Svm(m) => &m.class_names,
        }
    }

    fn predict(&self, x: &[f64]) -> mcmfs::Result<i8> {
        match self {
            Model::Mcm(m) => m.predict(x),
            Model::Svm(m) => m.predict(x),
        }
    }
}

fn run_predict(a: &PredictArgs) -> CliResult<()> {
    let format = parse_option::<Format>("format", &a.format)?;
    let model = Model::load(&a.model)?;
    let text = fs::read_to_string(&a.input).map_err(|e| CliError::Input(format!("{}: {e}", a.input.display())))?;
    let in_err = |e: mcmfs::Error| CliError::Input(format!("{}: {e}", a.input.display()));
    let (rows, ids) = match format {
        Format::Csv => {
            let t = parse_csv_features(&text, &a.label_column).map_err(in_err)?;
            (t.samples, t.sample_ids)
        }
        Format::Sparse => {
            let d = parse_sparse(&text, Some(model.n_features())).map_err(in_err)?;
            (d.samples().to_vec(), d.sample_ids().to_vec())
        }
    };
    let n = model.n_features();
    if let Some(row) = rows.iter().find(|r| r.len() != n) {
        return Err(CliError::Input(format!("model expects {n} features, input has {}", row.len())));
    }
    let names = model.class_names();
    let mut out = format!("# mcmfs predict samples={}\nid\tprediction\n", rows.len());
    for (row, id) in rows.iter().zip(&ids) {
        let x = match model.standardizer() {
            Some(s) => s.transform_row(row).map_err(training)?,
            None => row.clone(),
        };
        let label = model.predict(&x).map_err(training)?;
        let slot = usize::from(label > 0);
        let shown = names[slot].clone().unwrap_or_else(|| if label > 0 { "+1".into() } else { "-1".into() });
        out.push_str(&format!("{id}\t{shown}\n"));
    }
    emit(a.out.as_deref(), &out)
}

fn run_benchmark(a: &BenchmarkArgs) -> CliResult<()> {
    let mut cfg = eval_config(&a.selector, Some(&a.grid))?;
    cfg.selection = parse_option::<SelectionMode>("selection", &a.selection)?;
    cfg.inner_folds = a.inner_folds;
    let methods = a.methods.split(',').map(|m| parse_option::<Method>("methods", m.trim())).collect::<CliResult<Vec<_>>>()?;
    if a.folds < 2 {
        return Err(CliError::Option("--folds must be at least 2".into()));
    }
    let d = load(&a.data)?;
    let name = a
        .name
        .clone()
        .unwrap_or_else(|| a.data.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "dataset".into()));
    let plan = FoldPlan::stratified(&d, a.folds, cfg.seed).map_err(training)?;
    let report = compare_methods(&name, &d, &methods, &plan, &cfg).map_err(training)?;
    for r in report.methods.iter().filter(|r| r.any_fallback()) {
        eprintln!("warning: {} selected no features in some folds; all features were used there", r.method.label());
    }
    let doc = report.to_document(a.timing).map_err(|e| CliError::Output(e.to_string()))?;
    emit(a.report.as_deref(), &doc)?;
    if a.table {
        print!("{}", format_table(&[report]));
    }
    Ok(())
}

fn show_config(command: Option<&Command>) -> CliResult<()> {
    let cfg = match command {
        Some(Command::Select(a)) => eval_config(&a.selector, None)?,
        Some(Command::Train(a)) => eval_config(&a.selector, Some(&a.grid))?,
        Some(Command::Benchmark(a)) => {
            let mut cfg = eval_config(&a.selector, Some(&a.grid))?;
            cfg.selection = parse_option::<SelectionMode>("selection", &a.selection)?;
            cfg.inner_folds = a.inner_folds;
            cfg
        }
        Some(Command::Predict(_)) | None => EvalConfig::default(),
    };
    let text = toml::to_string(&cfg).map_err(|e| CliError::Output(e.to_string()))?;
    print!("{text}");
    Ok(())
}

fn run(cli: &Cli) -> CliResult<()> {
    if cli.show_config {
        return show_config(cli.command.as_ref());
    }
    match &cli.command {
        Some(Command::Select(a)) => run_select(a),
        Some(Command::Train(a)) => run_train(a),
        Some(Command::Predict(a)) => run_predict(a),
        Some(Command::Benchmark(a)) => run_benchmark(a),
        None => Err(CliError::Option("a command is required (select, train, predict, benchmark)".into())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
