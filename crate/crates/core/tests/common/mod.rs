//! Brute-force oracles shared by the integration tests.

#![allow(dead_code, clippy::needless_range_loop)]

use mcmfs::linprog::{LowerBound, Relation};
use mcmfs::{Dataset, LinearProgram};
use rand::Rng;

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
/// `None` when the matrix is numerically singular.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Halfspace `a · x ≥ rhs`.
#[derive(Clone, Debug)]
pub struct Half {
    pub a: Vec<f64>,
    pub rhs: f64,
}

/// Minimum of `c · x` over the pointed polyhedron `{x : every half holds}`,
/// found by solving every `dim`-subset of halfspaces as equalities.
/// `None` when no vertex is feasible.
pub fn min_over_vertices(c: &[f64], halves: &[Half], tol: f64) -> Option<(f64, Vec<f64>)> {
    let dim = c.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for_each_subset(halves.len(), dim, |s| {
        let a = s.iter().map(|&i| halves[i].a.clone()).collect();
        let b = s.iter().map(|&i| halves[i].rhs).collect();
        let Some(x) = solve_dense(a, b) else { return };
        let feasible = halves.iter().all(|h| {
            let v: f64 = h.a.iter().zip(&x).map(|(p, q)| p * q).sum();
            v >= h.rhs - tol * (1.0 + h.rhs.abs())
        });
        if feasible {
            let obj: f64 = c.iter().zip(&x).map(|(p, q)| p * q).sum();
            if best.as_ref().is_none_or(|(o, _)| obj < *o) {
                best = Some((obj, x));
            }
        }
    });
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleLp {
    Optimal(f64),
    Infeasible,
    Unbounded,
}

fn lp_halves(lp: &LinearProgram, bound: f64) -> Vec<Half> {
    let v = lp.n_vars();
    let mut halves = Vec::new();
    for row in lp.rows() {
        let neg: Vec<f64> = row.coeffs.iter().map(|x| -x).collect();
        match row.relation {
            Relation::Ge => halves.push(Half { a: row.coeffs.clone(), rhs: row.rhs }),
            Relation::Le => halves.push(Half { a: neg, rhs: -row.rhs }),
            Relation::Eq => {
                halves.push(Half { a: row.coeffs.clone(), rhs: row.rhs });
                halves.push(Half { a: neg, rhs: -row.rhs });
            }
        }
    }
    for j in 0..v {
        let mut e = vec![0.0; v];
        e[j] = 1.0;
        if lp.lower_bounds()[j] == LowerBound::Zero {
            halves.push(Half { a: e.clone(), rhs: 0.0 });
        } else {
            halves.push(Half { a: e.clone(), rhs: -bound });
        }
        e[j] = -1.0;
        halves.push(Half { a: e, rhs: -bound });
    }
    halves
}

/// Vertex enumeration inside the box `|x| ≤ B` and again at `2B`; an optimum
/// that moves with the box means the LP is unbounded.
pub fn lp_oracle(lp: &LinearProgram) -> OracleLp {
    const B: f64 = 1e6;
    let small = min_over_vertices(lp.objective(), &lp_halves(lp, B), 1e-9);
    let Some((o1, _)) = small else { return OracleLp::Infeasible };
    let (o2, _) = min_over_vertices(lp.objective(), &lp_halves(lp, 2.0 * B), 1e-9).expect("larger box stays feasible");
    if o2 < o1 - 1e-6 * (1.0 + o1.abs()) {
        OracleLp::Unbounded
    } else {
        OracleLp::Optimal(o1)
    }
}

/// LP with `vars ≤ 6` variables and `rows ≤ 6` constraints, integer data in
/// `[-5, 5]`, mixed relations, and roughly one free variable in four.
pub fn random_lp(rng: &mut impl Rng) -> LinearProgram {
    let v = rng.gen_range(1..=6);
    let r = rng.gen_range(1..=6);
    let mut lp = LinearProgram::new((0..v).map(|_| f64::from(rng.gen_range(-5..=5))).collect());
    for j in 0..v {
        if rng.gen_bool(0.25) {
            lp.set_lower_bound(j, LowerBound::NegInfinity);
        }
    }
    for _ in 0..r {
        let coeffs = (0..v).map(|_| f64::from(rng.gen_range(-5..=5))).collect();
        let rel = match rng.gen_range(0..10) {
            0..=4 => Relation::Le,
            5..=8 => Relation::Ge,
            _ => Relation::Eq,
        };
        lp.add_row(coeffs, rel, f64::from(rng.gen_range(-5..=5))).unwrap();
    }
    lp
}

/// Optimal objective of the soft-margin MCM in natural variables
/// `(h, w, b, q)` with `w`, `b` free and `h, q ≥ 0`. Requires `M ≥ n + 1`
/// points in general position so the feasible set has a vertex.
pub fn mcm_oracle(d: &Dataset, c: f64, classic: bool) -> f64 {
    let (m, n) = (d.n_samples(), d.n_features());
    let dim = 1 + n + 1 + m;
    let mut halves = Vec::new();
    for i in 0..m {
        let y = d.label(i);
        let mut fx = vec![0.0; dim];
        for j in 0..n {
            fx[1 + j] = y * d.row(i)[j];
        }
        fx[1 + n] = y;
        // h - y f(x) - q ≥ 0 (classic omits q)
        let mut upper: Vec<f64> = fx.iter().map(|v| -v).collect();
        upper[0] = 1.0;
        if !classic {
            upper[2 + n + i] = -1.0;
        }
        halves.push(Half { a: upper, rhs: 0.0 });
        // y f(x) + q ≥ 1
        let mut lower = fx;
        lower[2 + n + i] = 1.0;
        halves.push(Half { a: lower, rhs: 1.0 });
        let mut qpos = vec![0.0; dim];
        qpos[2 + n + i] = 1.0;
        halves.push(Half { a: qpos, rhs: 0.0 });
    }
    let mut hpos = vec![0.0; dim];
    hpos[0] = 1.0;
    halves.push(Half { a: hpos, rhs: 0.0 });
    let mut obj = vec![0.0; dim];
    obj[0] = 1.0;
    for i in 0..m {
        obj[2 + n + i] = c;
    }
    min_over_vertices(&obj, &halves, 1e-9).expect("soft-margin MCM is always feasible").0
}

/// Maximum of the SVM dual `Σα − ½ αᵀQα` over `0 ≤ α ≤ C`, `yᵀα = 0`,
/// by enumerating every assignment of each `α_i` to lower bound, upper
/// bound, or free, and solving the stationarity system on the free set.
pub fn svm_dual_oracle(k: &[Vec<f64>], y: &[f64], c: f64) -> f64 {
    let m = y.len();
    let q = |i: usize, j: usize| y[i] * y[j] * k[i][j];
    let objective = |a: &[f64]| {
        let lin: f64 = a.iter().sum();
        let quad: f64 = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| a[i] * a[j] * q(i, j)).sum();
        lin - 0.5 * quad
    };
    let mut best = f64::NEG_INFINITY;
    for code in 0..3usize.pow(m as u32) {
        let mut state = vec![0u8; m];
        let mut c_rem = code;
        for s in state.iter_mut() {
            *s = (c_rem % 3) as u8;
            c_rem /= 3;
        }
        let free: Vec<usize> = (0..m).filter(|&i| state[i] == 2).collect();
        let mut alpha: Vec<f64> = state.iter().map(|&s| if s == 1 { c } else { 0.0 }).collect();
        if !free.is_empty() {
            // rows: (Qα)_i + ν y_i = 1 for free i; yᵀα = 0
            let f = free.len();
            let mut a = vec![vec![0.0; f + 1]; f + 1];
            let mut b = vec![0.0; f + 1];
            for (r, &i) in free.iter().enumerate() {
                for (s, &j) in free.iter().enumerate() {
                    a[r][s] = q(i, j);
                }
                a[r][f] = y[i];
                b[r] = 1.0 - (0..m).filter(|&j| state[j] == 1).map(|j| q(i, j) * c).sum::<f64>();
                a[f][r] = y[i];
            }
            b[f] = -(0..m).filter(|&j| state[j] == 1).map(|j| y[j] * c).sum::<f64>();
            let Some(sol) = solve_dense(a, b) else { continue };
            if sol[..f].iter().any(|&v| v < -1e-12 || v > c + 1e-12) {
                continue;
            }
            for (r, &i) in free.iter().enumerate() {
                alpha[i] = sol[r].clamp(0.0, c);
            }
        }
        let balance: f64 = alpha.iter().zip(y).map(|(a, y)| a * y).sum();
        if balance.abs() > 1e-9 {
            continue;
        }
        best = best.max(objective(&alpha));
    }
    best
}

/// ReliefF weights recomputed from scratch: full sort of all other samples
/// by Manhattan distance on range-scaled features, `k` nearest per class.
/// Valid only when no distance ties occur.
pub fn relieff_oracle(d: &Dataset, k: usize) -> Vec<f64> {
    let (m, n) = (d.n_samples(), d.n_features());
    let ranges: Vec<f64> = (0..n)
        .map(|j| {
            let col = d.column(j);
            let hi = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lo = col.iter().cloned().fold(f64::INFINITY, f64::min);
            hi - lo
        })
        .collect();
    let diff = |a: usize, b: usize, j: usize| {
        if ranges[j] > 0.0 {
            (d.row(a)[j] - d.row(b)[j]).abs() / ranges[j]
        } else {
            0.0
        }
    };
    let dist = |a: usize, b: usize| (0..n).map(|j| diff(a, b, j)).sum::<f64>();
    let mut w = vec![0.0; n];
    for a in 0..m {
        let mut others: Vec<usize> = (0..m).filter(|&o| o != a).collect();
        others.sort_by(|&p, &q| dist(a, p).partial_cmp(&dist(a, q)).unwrap());
        let hits: Vec<usize> = others.iter().copied().filter(|&o| d.labels()[o] == d.labels()[a]).take(k).collect();
        let misses: Vec<usize> = others.iter().copied().filter(|&o| d.labels()[o] != d.labels()[a]).take(k).collect();
        for j in 0..n {
            let h: f64 = hits.iter().map(|&o| diff(a, o, j)).sum();
            let q: f64 = misses.iter().map(|&o| diff(a, o, j)).sum();
            w[j] += (q - h) / (m * k) as f64;
        }
    }
    w
}

/// Random continuous dataset with both classes present; labels alternate so
/// each class has at least `m / 2` samples.
pub fn random_dataset(rng: &mut impl Rng, m: usize, n: usize) -> Dataset {
    let rows = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
    let labels = (0..m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    Dataset::from_rows(rows, labels).unwrap()
}
