//! Dense two-phase revised simplex.
//!
//! Problems are `minimize c·x` subject to rows `a·x {≤,≥,=} b`, with every
//! variable either nonnegative or free. Free variables are split into a
//! nonnegative pair internally. Each row receives a slack (`≤`), a surplus
//! plus an artificial (`≥`), or an artificial (`=`) after its right-hand
//! side has been made nonnegative. Phase one minimizes the sum of the
//! artificials; phase two the real objective.
//!
//! The basis inverse is kept explicitly and updated by elementary row
//! operations, with a full refactorization every [`REFACTOR_EVERY`] pivots.
//! Pricing is Dantzig's most-negative reduced cost; after
//! [`BLAND_AFTER`] consecutive degenerate pivots the solver switches to
//! Bland's smallest-index rule until the next nondegenerate pivot.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_FEAS_TOL: f64 = 1e-9;
pub const DEFAULT_OPT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITERS: usize = 50_000;

const BLAND_AFTER: usize = 50;
const REFACTOR_EVERY: usize = 64;
const PIVOT_TOL: f64 = 1e-9;
const DEGENERATE_STEP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// Lower bound of a variable; upper bounds are always `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LowerBound {
    Zero,
    NegInfinity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum()
    }

    /// Amount by which `x` violates the row (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = self.activity(x);
        match self.relation {
            Relation::Le => (lhs - self.rhs).max(0.0),
            Relation::Ge => (self.rhs - lhs).max(0.0),
            Relation::Eq => (lhs - self.rhs).abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    rows: Vec<Constraint>,
    lower: Vec<LowerBound>,
}

impl LinearProgram {
    /// A program with the given costs and every variable nonnegative.
    pub fn new(objective: Vec<f64>) -> Self {
        let lower = vec![LowerBound::Zero; objective.len()];
        Self { objective, rows: Vec::new(), lower }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn lower_bounds(&self) -> &[LowerBound] {
        &self.lower
    }

    pub fn set_lower_bound(&mut self, var: usize, bound: LowerBound) {
        self.lower[var] = bound;
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Result<()> {
        if coeffs.len() != self.n_vars() {
            return Err(Error::DimensionMismatch { expected: self.n_vars(), got: coeffs.len() });
        }
        self.rows.push(Constraint { coeffs, relation, rhs });
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("non-finite objective coefficient".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.coeffs.len() != self.n_vars() {
                return Err(Error::DimensionMismatch { expected: self.n_vars(), got: row.coeffs.len() });
            }
            if !row.rhs.is_finite() || row.coeffs.iter().any(|a| !a.is_finite()) {
                return Err(Error::InvalidParameter(format!("non-finite coefficient in row {i}")));
            }
        }
        Ok(())
    }

    pub fn objective_at(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest row or bound violation at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self.rows.iter().map(|r| r.violation(x)).fold(0.0, f64::max);
        let bounds = x
            .iter()
            .zip(&self.lower)
            .map(|(v, lb)| match lb {
                LowerBound::Zero => (-v).max(0.0),
                LowerBound::NegInfinity => 0.0,
            })
            .fold(0.0, f64::max);
        rows.max(bounds)
    }

    /// Plain-text dump, one line per row.
    ///
    /// ```text
    /// lp <vars> <rows>
    /// min <c_1> ... <c_V>
    /// lower <0|-inf> ...
    /// row <rel> <rhs> : <a_1> ... <a_V>
    /// ```
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lp {} {}", self.n_vars(), self.n_rows());
        out.push_str("min");
        for c in &self.objective {
            let _ = write!(out, " {c:?}");
        }
        out.push_str("\nlower");
        for lb in &self.lower {
            out.push_str(match lb {
                LowerBound::Zero => " 0",
                LowerBound::NegInfinity => " -inf",
            });
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "row {} {:?} :", row.relation.symbol(), row.rhs);
            for a in &row.coeffs {
                let _ = write!(out, " {a:?}");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal point in the caller's variables; meaningful only when optimal.
    pub point: Vec<f64>,
    pub objective_value: f64,
    pub iterations: usize,
    /// Row prices from the final basis: nonpositive on `≤` rows, nonnegative
    /// on `≥` rows, free on `=` rows. Meaningful only when optimal.
    pub duals: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub feas_tol: f64,
    pub opt_tol: f64,
    pub max_iters: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { feas_tol: DEFAULT_FEAS_TOL, opt_tol: DEFAULT_OPT_TOL, max_iters: DEFAULT_MAX_ITERS }
    }
}

pub fn solve_lp(lp: &LinearProgram, opts: &SolverOptions) -> Result<LpSolution> {
    lp.validate()?;
    if !(opts.feas_tol > 0.0 && opts.opt_tol > 0.0) {
        return Err(Error::InvalidParameter("tolerances must be positive".into()));
    }
    let mut simplex = Simplex::build(lp);
    let status = simplex.solve(opts);
    let mut point = vec![0.0; lp.n_vars()];
    let mut duals = vec![0.0; lp.n_rows()];
    if status == LpStatus::Optimal {
        let x = simplex.column_values();
        for (j, p) in point.iter_mut().enumerate() {
            let (pos, neg) = simplex.var_cols[j];
            *p = x[pos] - neg.map_or(0.0, |c| x[c]);
        }
        let y = simplex.prices(&simplex.cost);
        for (i, d) in duals.iter_mut().enumerate() {
            *d = if simplex.row_flipped[i] { -y[i] } else { y[i] };
        }
    }
    let objective_value = if status == LpStatus::Optimal { lp.objective_at(&point) } else { f64::NAN };
    Ok(LpSolution { status, point, objective_value, iterations: simplex.iterations, duals })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
    IterationLimit,
}

struct Simplex {
    m: usize,
    /// Column-major constraint matrix in standard form.
    cols: Vec<Vec<f64>>,
    kind: Vec<ColKind>,
    cost: Vec<f64>,
    rhs: Vec<f64>,
    /// Standard-form columns of each caller variable: (positive, negative part).
    var_cols: Vec<(usize, Option<usize>)>,
    row_flipped: Vec<bool>,

    basis: Vec<usize>,
    in_basis: Vec<bool>,
    excluded: Vec<bool>,
    binv: Vec<f64>,
    xb: Vec<f64>,

    iterations: usize,
    since_refactor: usize,
    degenerate_streak: usize,
    bland: bool,
}

impl Simplex {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.n_rows();
        let mut cols: Vec<Vec<f64>> = Vec::new();
        let mut kind = Vec::new();
        let mut cost = Vec::new();
        let mut var_cols = Vec::with_capacity(lp.n_vars());

        let row_flipped: Vec<bool> = lp.rows.iter().map(|r| r.rhs < 0.0).collect();
        let sign = |i: usize| if row_flipped[i] { -1.0 } else { 1.0 };
        let rhs: Vec<f64> = lp.rows.iter().enumerate().map(|(i, r)| sign(i) * r.rhs).collect();

        for j in 0..lp.n_vars() {
            let col: Vec<f64> = (0..m).map(|i| sign(i) * lp.rows[i].coeffs[j]).collect();
            let pos = cols.len();
            let neg = match lp.lower[j] {
                LowerBound::Zero => None,
                LowerBound::NegInfinity => Some(pos + 1),
            };
            if neg.is_some() {
                cols.push(col.clone());
                cols.push(col.iter().map(|a| -a).collect());
                cost.extend([lp.objective[j], -lp.objective[j]]);
                kind.extend([ColKind::Structural; 2]);
            } else {
                cols.push(col);
                cost.push(lp.objective[j]);
                kind.push(ColKind::Structural);
            }
            var_cols.push((pos, neg));
        }

        let mut basis = vec![usize::MAX; m];
        for (i, row) in lp.rows.iter().enumerate() {
            let relation = if row_flipped[i] { row.relation.flipped() } else { row.relation };
            let unit = |coef: f64| {
                let mut c = vec![0.0; m];
                c[i] = coef;
                c
            };
            match relation {
                Relation::Le => {
                    basis[i] = cols.len();
                    cols.push(unit(1.0));
                    kind.push(ColKind::Slack);
                    cost.push(0.0);
                }
                Relation::Ge => {
                    cols.push(unit(-1.0));
                    kind.push(ColKind::Slack);
                    cost.push(0.0);
                    basis[i] = cols.len();
                    cols.push(unit(1.0));
                    kind.push(ColKind::Artificial);
                    cost.push(0.0);
                }
                Relation::Eq => {
                    basis[i] = cols.len();
                    cols.push(unit(1.0));
                    kind.push(ColKind::Artificial);
                    cost.push(0.0);
                }
            }
        }

        let ncols = cols.len();
        let mut in_basis = vec![false; ncols];
        for &b in &basis {
            in_basis[b] = true;
        }
        let mut binv = vec![0.0; m * m];
        for i in 0..m {
            binv[i * m + i] = 1.0;
        }
        let xb = rhs.clone();
        Self {
            m,
            cols,
            kind,
            cost,
            rhs,
            var_cols,
            row_flipped,
            basis,
            in_basis,
            excluded: vec![false; ncols],
            binv,
            xb,
            iterations: 0,
            since_refactor: 0,
            degenerate_streak: 0,
            bland: false,
        }
    }

    fn solve(&mut self, opts: &SolverOptions) -> LpStatus {
        let has_artificial = self.basis.iter().any(|&b| self.kind[b] == ColKind::Artificial);
        if has_artificial {
            let phase1: Vec<f64> = self
                .kind
                .iter()
                .map(|k| if *k == ColKind::Artificial { 1.0 } else { 0.0 })
                .collect();
            match self.run_phase(&phase1, opts, true) {
                PhaseEnd::Optimal => {}
                PhaseEnd::IterationLimit => return LpStatus::IterationLimit,
                // phase one is bounded below by zero
                PhaseEnd::Unbounded => return LpStatus::Infeasible,
            }
            self.refactor();
            let scale = 1.0 + self.rhs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            let infeasibility: f64 = (0..self.m)
                .filter(|&r| self.kind[self.basis[r]] == ColKind::Artificial)
                .map(|r| self.xb[r].max(0.0))
                .sum();
            if infeasibility > opts.feas_tol * scale {
                return LpStatus::Infeasible;
            }
            self.drive_out_artificials();
        }
        for j in 0..self.cols.len() {
            if self.kind[j] == ColKind::Artificial {
                self.excluded[j] = true;
            }
        }
        self.degenerate_streak = 0;
        self.bland = false;
        let cost = self.cost.clone();
        let end = self.run_phase(&cost, opts, false);
        self.refactor();
        match end {
            PhaseEnd::Optimal => LpStatus::Optimal,
            PhaseEnd::Unbounded => LpStatus::Unbounded,
            PhaseEnd::IterationLimit => LpStatus::IterationLimit,
        }
    }

    fn run_phase(&mut self, cost: &[f64], opts: &SolverOptions, phase_one: bool) -> PhaseEnd {
        let mut column = vec![0.0; self.m];
        loop {
            if self.since_refactor >= REFACTOR_EVERY {
                self.refactor();
            }
            let y = self.prices(cost);
            let Some(entering) = self.choose_entering(cost, &y, opts.opt_tol) else {
                return PhaseEnd::Optimal;
            };
            if self.iterations >= opts.max_iters {
                return PhaseEnd::IterationLimit;
            }
            self.ftran(entering, &mut column);
            let Some((leave_row, step)) = self.ratio_test(&column) else {
                if phase_one {
                    // numerically lost; refactor and retry once in the next loop
                    self.refactor();
                    self.excluded[entering] = true;
                    continue;
                }
                return PhaseEnd::Unbounded;
            };
            self.pivot(leave_row, entering, &column, step);
            if step <= DEGENERATE_STEP {
                self.degenerate_streak += 1;
                if self.degenerate_streak >= BLAND_AFTER {
                    self.bland = true;
                }
            } else {
                self.degenerate_streak = 0;
                self.bland = false;
            }
        }
    }

    /// Simplex multipliers `y = c_B B⁻¹`.
    fn prices(&self, cost: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for (k, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                let row = &self.binv[k * m..(k + 1) * m];
                for (yi, bi) in y.iter_mut().zip(row) {
                    *yi += cb * bi;
                }
            }
        }
        y
    }

    fn choose_entering(&self, cost: &[f64], y: &[f64], opt_tol: f64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.cols.len() {
            if self.in_basis[j] || self.excluded[j] {
                continue;
            }
            let d = cost[j] - dot(&self.cols[j], y);
            if d < -opt_tol {
                if self.bland {
                    return Some(j);
                }
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((j, d));
                }
            }
        }
        best.map(|(j, _)| j)
    }

    /// `out = B⁻¹ a_j`.
    fn ftran(&self, j: usize, out: &mut [f64]) {
        let m = self.m;
        let col = &self.cols[j];
        for (k, o) in out.iter_mut().enumerate() {
            *o = dot(&self.binv[k * m..(k + 1) * m], col);
        }
    }

    fn ratio_test(&self, column: &[f64]) -> Option<(usize, f64)> {
        let mut min_ratio = f64::INFINITY;
        for (r, &u) in column.iter().enumerate() {
            if u > PIVOT_TOL {
                min_ratio = min_ratio.min(self.xb[r].max(0.0) / u);
            }
        }
        if !min_ratio.is_finite() {
            return None;
        }
        let tie = min_ratio + 1e-12 * (1.0 + min_ratio);
        let mut chosen: Option<usize> = None;
        for (r, &u) in column.iter().enumerate() {
            if u <= PIVOT_TOL || self.xb[r].max(0.0) / u > tie {
                continue;
            }
            chosen = match chosen {
                None => Some(r),
                Some(c) => {
                    let better = if self.bland {
                        self.basis[r] < self.basis[c]
                    } else {
                        u > column[c]
                    };
                    Some(if better { r } else { c })
                }
            };
        }
        chosen.map(|r| (r, self.xb[r].max(0.0) / column[r]))
    }

    fn pivot(&mut self, leave_row: usize, entering: usize, column: &[f64], step: f64) {
        let m = self.m;
        for (r, x) in self.xb.iter_mut().enumerate() {
            *x -= step * column[r];
        }
        self.xb[leave_row] = step;

        let pivot = column[leave_row];
        let (head, rest) = self.binv.split_at_mut(leave_row * m);
        let (prow, tail) = rest.split_at_mut(m);
        prow.iter_mut().for_each(|v| *v /= pivot);
        for (k, row) in head.chunks_exact_mut(m).chain(tail.chunks_exact_mut(m)).enumerate() {
            let r = if k < leave_row { k } else { k + 1 };
            let f = column[r];
            if f != 0.0 {
                for (v, p) in row.iter_mut().zip(prow.iter()) {
                    *v -= f * p;
                }
            }
        }

        let leaving = self.basis[leave_row];
        self.in_basis[leaving] = false;
        if self.kind[leaving] == ColKind::Artificial {
            self.excluded[leaving] = true;
        }
        self.basis[leave_row] = entering;
        self.in_basis[entering] = true;
        self.iterations += 1;
        self.since_refactor += 1;
    }

    /// Pivots zero-level artificials out of the basis where some non-artificial
    /// column has a nonzero entry in their row; rows where none does are
    /// redundant and keep their artificial at zero.
    fn drive_out_artificials(&mut self) {
        let m = self.m;
        let mut column = vec![0.0; m];
        for r in 0..m {
            if self.kind[self.basis[r]] != ColKind::Artificial {
                continue;
            }
            let rho = self.binv[r * m..(r + 1) * m].to_vec();
            let mut best: Option<(usize, f64)> = None;
            for j in 0..self.cols.len() {
                if self.in_basis[j] || self.kind[j] == ColKind::Artificial {
                    continue;
                }
                let alpha = dot(&rho, &self.cols[j]).abs();
                if alpha > 1e-7 && best.is_none_or(|(_, a)| alpha > a) {
                    best = Some((j, alpha));
                }
            }
            if let Some((j, _)) = best {
                self.ftran(j, &mut column);
                let step = self.xb[r] / column[r];
                self.pivot(r, j, &column, step);
            }
        }
        self.refactor();
    }

    /// Recomputes `B⁻¹` by Gauss-Jordan elimination and `x_B = B⁻¹ b`.
    fn refactor(&mut self) {
        let m = self.m;
        self.since_refactor = 0;
        if m == 0 {
            return;
        }
        let mut a = vec![0.0; m * m];
        for (k, &b) in self.basis.iter().enumerate() {
            for i in 0..m {
                a[i * m + k] = self.cols[b][i];
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for c in 0..m {
            let p = (c..m)
                .max_by(|&x, &y| a[x * m + c].abs().total_cmp(&a[y * m + c].abs()))
                .unwrap_or(c);
            if a[p * m + c].abs() < 1e-14 {
                // singular; keep the product-form inverse
                return;
            }
            if p != c {
                for j in 0..m {
                    a.swap(p * m + j, c * m + j);
                    inv.swap(p * m + j, c * m + j);
                }
            }
            let d = a[c * m + c];
            for j in 0..m {
                a[c * m + j] /= d;
                inv[c * m + j] /= d;
            }
            for r in 0..m {
                if r == c {
                    continue;
                }
                let f = a[r * m + c];
                if f != 0.0 {
                    for j in 0..m {
                        a[r * m + j] -= f * a[c * m + j];
                        inv[r * m + j] -= f * inv[c * m + j];
                    }
                }
            }
        }
        // rows of `inv` index the basis positions: (B⁻¹)[k][i]
        self.binv = inv;
        for k in 0..m {
            let v = dot(&self.binv[k * m..(k + 1) * m], &self.rhs);
            self.xb[k] = if v < 0.0 && v > -1e-11 { 0.0 } else { v };
        }
    }

    fn column_values(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.cols.len()];
        for (k, &b) in self.basis.iter().enumerate() {
            x[b] = self.xb[k].max(0.0);
        }
        x
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(lp: &LinearProgram) -> LpSolution {
        solve_lp(lp, &SolverOptions::default()).unwrap()
    }

    #[test]
    fn single_tight_constraint() {
        let mut lp = LinearProgram::new(vec![1.0]);
        lp.add_row(vec![1.0], Relation::Ge, 1.0).unwrap();
        lp.add_row(vec![1.0], Relation::Ge, 0.0).unwrap();
        let s = solve(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.point[0] - 1.0).abs() < 1e-12);
        assert!((s.objective_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_vertex() {
        let mut lp = LinearProgram::new(vec![-1.0, -1.0]);
        lp.add_row(vec![1.0, 1.0], Relation::Le, 1.0).unwrap();
        let s = solve(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value + 1.0).abs() < 1e-12);
        let vertices = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        assert!(vertices
            .iter()
            .any(|v| (v[0] - s.point[0]).abs() < 1e-12 && (v[1] - s.point[1]).abs() < 1e-12));
    }

    #[test]
    fn empty_feasible_set() {
        let mut lp = LinearProgram::new(vec![1.0]);
        lp.add_row(vec![1.0], Relation::Le, -1.0).unwrap();
        assert_eq!(solve(&lp).status, LpStatus::Infeasible);
    }

    #[test]
    fn ray_is_unbounded() {
        let lp = LinearProgram::new(vec![-1.0]);
        assert_eq!(solve(&lp).status, LpStatus::Unbounded);
        let mut lp = LinearProgram::new(vec![-1.0]);
        lp.add_row(vec![1.0], Relation::Ge, 0.0).unwrap();
        assert_eq!(solve(&lp).status, LpStatus::Unbounded);
    }

    #[test]
    fn free_variable_and_equality() {
        // min x + 2y, x free, x + y = -3, y >= 0  -> y = 0, x = -3
        let mut lp = LinearProgram::new(vec![1.0, 2.0]);
        lp.set_lower_bound(0, LowerBound::NegInfinity);
        lp.add_row(vec![1.0, 1.0], Relation::Eq, -3.0).unwrap();
        let s = solve(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.point[0] + 3.0).abs() < 1e-12);
        assert!(s.point[1].abs() < 1e-12);
        // dual of an equality row reproduces the objective
        assert!((s.duals[0] * -3.0 - s.objective_value).abs() < 1e-12);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(vec![1.0, 1.0]);
        lp.add_row(vec![1.0, 1.0], Relation::Eq, 2.0).unwrap();
        lp.add_row(vec![2.0, 2.0], Relation::Eq, 4.0).unwrap();
        lp.add_row(vec![1.0, 0.0], Relation::Ge, 0.5).unwrap();
        let s = solve(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 2.0).abs() < 1e-12);
        assert!(lp.max_violation(&s.point) < 1e-9);
    }

    #[test]
    fn iteration_limit_reported() {
        let mut lp = LinearProgram::new(vec![-1.0, -1.0, -1.0]);
        lp.add_row(vec![1.0, 2.0, 3.0], Relation::Le, 10.0).unwrap();
        lp.add_row(vec![3.0, 1.0, 1.0], Relation::Le, 10.0).unwrap();
        lp.add_row(vec![1.0, 1.0, 0.0], Relation::Ge, 1.0).unwrap();
        let opts = SolverOptions { max_iters: 1, ..SolverOptions::default() };
        let s = solve_lp(&lp, &opts).unwrap();
        assert_eq!(s.status, LpStatus::IterationLimit);
    }

    #[test]
    fn rejects_bad_input() {
        let mut lp = LinearProgram::new(vec![1.0, f64::NAN]);
        assert!(lp.add_row(vec![1.0], Relation::Le, 1.0).is_err());
        assert!(solve_lp(&lp, &SolverOptions::default()).is_err());
        let lp = LinearProgram::new(vec![1.0]);
        let opts = SolverOptions { feas_tol: 0.0, ..SolverOptions::default() };
        assert!(solve_lp(&lp, &opts).is_err());
    }

    #[test]
    fn dump_layout() {
        let mut lp = LinearProgram::new(vec![1.0, -2.5]);
        lp.set_lower_bound(1, LowerBound::NegInfinity);
        lp.add_row(vec![1.0, 1.0], Relation::Le, 4.0).unwrap();
        assert_eq!(lp.dump(), "lp 2 1\nmin 1.0 -2.5\nlower 0 -inf\nrow <= 4.0 : 1.0 1.0\n");
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under naive Dantzig pricing with lowest-index ties
        let mut lp = LinearProgram::new(vec![-0.75, 150.0, -0.02, 6.0]);
        lp.add_row(vec![0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0).unwrap();
        lp.add_row(vec![0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0).unwrap();
        lp.add_row(vec![0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0).unwrap();
        let s = solve(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value + 0.05).abs() < 1e-9);
    }
}
