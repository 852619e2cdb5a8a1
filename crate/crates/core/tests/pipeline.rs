mod common;

use mcmfs::eval::{compare_methods, format_table, run_method_cv, EvalConfig, Method, SelectionMode};
use mcmfs::filters::{relieff_rank, relieff_weights};
use mcmfs::mcm::train_mcm;
use mcmfs::svm::{grid_search, train_svm, SmoOptions};
use mcmfs::synthetic::informative_gaussian;
use mcmfs::{Dataset, FoldPlan, McmConfig, Standardizer};

fn small_grid() -> EvalConfig {
    EvalConfig { svm_c_grid: vec![1.0, 10.0], svm_gamma_grid: vec![0.1, 1.0], ..EvalConfig::default() }
}

fn two_blobs(m: usize, n: usize, seed: u64) -> Dataset {
    informative_gaussian(m, n, 2, 1.0, seed).unwrap().data
}

#[test]
fn leave_one_out_on_six_samples() {
    let d = two_blobs(6, 3, 1);
    let plan = FoldPlan::leave_one_out(6).unwrap();
    let r = run_method_cv(&d, Method::Mcm, &plan, &small_grid()).unwrap();
    assert_eq!(r.fold_accuracies.len(), 6);
    assert!(r.fold_accuracies.iter().all(|&a| a == 0.0 || a == 1.0));
    assert!(r.mean_accuracy.is_finite() && r.std_accuracy.is_finite());
}

#[test]
fn single_method_report() {
    let d = two_blobs(30, 8, 2);
    let plan = FoldPlan::stratified(&d, 3, 42).unwrap();
    let r = compare_methods("blobs", &d, &[Method::Mcm], &plan, &small_grid()).unwrap();
    assert_eq!(r.methods.len(), 1);
    let table = format_table(&[r]);
    assert!(table.lines().nth(2).unwrap().starts_with("blobs (30 × 8) | "));
}

#[test]
fn methods_share_folds() {
    let d = two_blobs(40, 10, 3);
    let plan = FoldPlan::stratified(&d, 4, 42).unwrap();
    let r = compare_methods("blobs", &d, &[Method::Mcm, Method::Relieff], &plan, &small_grid()).unwrap();
    let tests = |m: Method| r.record(m).unwrap().folds.iter().map(|f| f.test_indices.clone()).collect::<Vec<_>>();
    assert_eq!(tests(Method::Mcm), tests(Method::Relieff));
}

#[test]
fn selection_never_sees_test_split() {
    let d = two_blobs(40, 10, 4);
    let plan = FoldPlan::stratified(&d, 4, 42).unwrap();
    let fold_test = plan.test_indices(0);
    let corrupted: Vec<Vec<f64>> = d
        .samples()
        .iter()
        .enumerate()
        .map(|(i, r)| if fold_test.contains(&i) { r.iter().map(|v| v * 37.0 - 11.0).collect() } else { r.clone() })
        .collect();
    let e = d.with_samples(corrupted).unwrap();
    for m in [Method::Mcm, Method::Relieff, Method::Fcbf] {
        let a = run_method_cv(&d, m, &plan, &small_grid()).unwrap();
        let b = run_method_cv(&e, m, &plan, &small_grid()).unwrap();
        assert_eq!(a.folds[0].selected, b.folds[0].selected, "{m:?}");
        assert_eq!(a.folds[0].hyper, b.folds[0].hyper, "{m:?}");
    }
}

#[test]
fn global_mode_selects_once() {
    let d = two_blobs(30, 12, 5);
    let plan = FoldPlan::stratified(&d, 3, 42).unwrap();
    let cfg = EvalConfig { selection: SelectionMode::Global, ..small_grid() };
    let r = run_method_cv(&d, Method::Relieff, &plan, &cfg).unwrap();
    assert!(r.folds.windows(2).all(|w| w[0].selected == w[1].selected));
    assert_eq!(r.selected_union as f64, r.selected_count);
}

#[test]
fn reports_are_reproducible() {
    let d = two_blobs(30, 6, 6);
    let plan = FoldPlan::stratified(&d, 3, 42).unwrap();
    let methods = [Method::Mcm, Method::Relieff, Method::Fcbf];
    let a = compare_methods("blobs", &d, &methods, &plan, &small_grid()).unwrap().to_document(false).unwrap();
    let b = compare_methods("blobs", &d, &methods, &plan, &small_grid()).unwrap().to_document(false).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("seed = 42"));
    assert!(!a.contains("wall_time"));
}

#[test]
fn relieff_on_synthetic_matches_naive() {
    let s = informative_gaussian(100, 200, 5, 0.5, 42).unwrap();
    let z = Standardizer::fit(&s.data).unwrap().apply(&s.data).unwrap();
    let w = relieff_weights(&z, 10, 42).unwrap();
    let want = common::relieff_oracle(&z, 10);
    assert!(w.iter().zip(&want).all(|(a, b)| (a - b).abs() < 1e-12));
    let noise: Vec<f64> = (0..200).filter(|j| !s.informative.contains(j)).map(|j| w[j]).collect();
    let noise_mean = noise.iter().sum::<f64>() / noise.len() as f64;
    assert!(s.informative.iter().all(|&j| w[j] > noise_mean));
    let ranking = relieff_rank(&z, 10, 42).unwrap();
    assert!(s.informative.contains(&ranking.entries[0].0));
}

#[test]
fn duplicated_data_keeps_model() {
    let base = Dataset::from_rows(vec![vec![1.0], vec![-1.0]], vec![1, -1]).unwrap();
    let rows: Vec<Vec<f64>> = (0..5).flat_map(|_| base.samples().to_vec()).collect();
    let labels: Vec<i8> = (0..5).flat_map(|_| base.labels().to_vec()).collect();
    let five = Dataset::from_rows(rows, labels).unwrap();
    let cfg = McmConfig { c: 100.0, ..McmConfig::default() };
    let (a, b) = (train_mcm(&base, &cfg).unwrap(), train_mcm(&five, &cfg).unwrap());
    assert!((a.h - 1.0).abs() < 1e-12 && (b.h - 1.0).abs() < 1e-12);
    assert!((a.w[0] - b.w[0]).abs() < 1e-12 && (a.b - b.b).abs() < 1e-12);
}

#[test]
fn separable_data_reaches_full_cv_accuracy() {
    let d = informative_gaussian(40, 4, 1, 2.0, 8).unwrap().data;
    let all: Vec<usize> = (0..4).collect();
    let best = grid_search(&d, &all, &[1.0, 100.0], &[0.01, 0.1], 4, 42, &SmoOptions::default()).unwrap();
    assert_eq!(best.cv_accuracy, 1.0);
    let model = train_svm(&d, &all, best.c, best.kernel_gamma, &SmoOptions::default()).unwrap();
    for (x, &c) in model.support_samples.iter().zip(&model.coeffs) {
        assert_eq!(model.predict(x).unwrap() as f64, c.signum());
    }
}
