//! Closed-form tour length models, MST-anchored estimators, a-priori bounds
//! and relative-error bookkeeping.
//!
//! `n^(1/d)` is always evaluated as `2^(log2(n) / d)`. This keeps
//! `e(2^d, d)` exactly 1/2 and lets callers pass `log2(n)` directly when `n`
//! itself would overflow.

use crate::error::EstimateError;
use crate::metric::InstanceStats;

/// `n^(1/d)` for `n >= 1`.
pub fn nth_root(n: f64, d: usize) -> f64 {
    (n.log2() / d as f64).exp2()
}

/// Grid-derived model `w1·n / ((n^(1/d) − 1)·√d)`.
pub fn o1(n: usize, d: usize, w1: f64) -> f64 {
    let root = nth_root(n as f64, d);
    w1 * n as f64 / ((root - 1.0) * (d as f64).sqrt())
}

/// Classical `n^(1−1/d)` scaling model `w1·n^(1−1/d) / √d`.
pub fn o2(n: usize, d: usize, w1: f64) -> f64 {
    let n_f = n as f64;
    w1 * n_f / nth_root(n_f, d) / (d as f64).sqrt()
}

/// Whether `o2` stays at or above `2·w1`: false exactly when
/// `n^(1−1/d) < 2√d`.
pub fn o2_respects_triangle(n: usize, d: usize) -> bool {
    let n_f = n as f64;
    n_f / nth_root(n_f, d) >= 2.0 * (d as f64).sqrt()
}

/// Ratio `o2 / o1 = 1 − n^(−1/d)`.
pub fn e_ratio(n: f64, d: usize) -> f64 {
    e_ratio_log2(n.log2(), d)
}

/// [`e_ratio`] taking `log2(n)`.
pub fn e_ratio_log2(log2_n: f64, d: usize) -> f64 {
    1.0 - (-log2_n / d as f64).exp2()
}

/// `‖T‖ + w1 / ((n^(1/d) − 1)·√d)`.
pub fn ot1(mst_total: f64, n: usize, d: usize, w1: f64) -> f64 {
    let root = nth_root(n as f64, d);
    mst_total + w1 / ((root - 1.0) * (d as f64).sqrt())
}

/// `‖T‖ + w1 / (n^(1/d)·√d)`.
pub fn ot2(mst_total: f64, n: usize, d: usize, w1: f64) -> f64 {
    let root = nth_root(n as f64, d);
    mst_total + w1 / (root * (d as f64).sqrt())
}

/// `ot1` with `n = 2^d`: `‖T‖ + w1/√d`.
pub fn otc1(mst_total: f64, d: usize, w1: f64) -> f64 {
    mst_total + w1 / (d as f64).sqrt()
}

/// `ot2` with `n = 2^d`: `‖T‖ + w1/(2√d)`.
pub fn otc2(mst_total: f64, d: usize, w1: f64) -> f64 {
    mst_total + w1 / (2.0 * (d as f64).sqrt())
}

/// Individual a-priori bounds on the optimal tour length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    /// `‖T‖ + w0`
    pub mst_plus_w0: f64,
    /// `‖T‖·n/(n−1)`
    pub mst_ratio: f64,
    /// `2·w1`
    pub two_w1: f64,
    /// `n·w0`
    pub n_w0: f64,
    /// `2·‖T‖`
    pub two_mst: f64,
    /// `n·w1`
    pub n_w1: f64,
}

impl Bounds {
    pub fn lower(&self) -> f64 {
        self.mst_plus_w0
            .max(self.mst_ratio)
            .max(self.two_w1)
            .max(self.n_w0)
    }

    pub fn upper(&self) -> f64 {
        self.two_mst.min(self.n_w1)
    }

    /// False when the inputs are mutually inconsistent (lower above upper).
    /// Only reachable through bad input data.
    pub fn is_consistent(&self) -> bool {
        self.lower() <= self.upper()
    }
}

/// All bounds for an instance. `stats` and `mst_total` must be in the same units.
pub fn bounds(stats: &InstanceStats, mst_total: f64) -> Bounds {
    let n = stats.n as f64;
    Bounds {
        mst_plus_w0: mst_total + stats.w0,
        mst_ratio: mst_total * n / (n - 1.0),
        two_w1: 2.0 * stats.w1,
        n_w0: n * stats.w0,
        two_mst: 2.0 * mst_total,
        n_w1: n * stats.w1,
    }
}

/// Every estimator and bound evaluated for one instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateReport {
    pub o1: f64,
    pub o2: f64,
    pub ot1: f64,
    pub ot2: f64,
    pub otc1: f64,
    pub otc2: f64,
    pub bounds: Bounds,
    pub e_ratio: f64,
}

impl EstimateReport {
    pub fn new(stats: &InstanceStats, mst_total: f64, d: usize) -> Self {
        let (n, w1) = (stats.n, stats.w1);
        EstimateReport {
            o1: o1(n, d, w1),
            o2: o2(n, d, w1),
            ot1: ot1(mst_total, n, d, w1),
            ot2: ot2(mst_total, n, d, w1),
            otc1: otc1(mst_total, d, w1),
            otc2: otc2(mst_total, d, w1),
            bounds: bounds(stats, mst_total),
            e_ratio: e_ratio(n as f64, d),
        }
    }
}

/// `100·(estimate/opt − 1)` percent.
pub fn relative_error(estimate: f64, opt: f64) -> Result<f64, EstimateError> {
    if !(opt.is_finite() && opt > 0.0) {
        return Err(EstimateError::NonPositiveOptimum(opt));
    }
    Ok(100.0 * (estimate / opt - 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRecord {
    pub instance_name: String,
    pub formula_name: String,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorStats {
    pub formula_name: String,
    pub count: usize,
    pub min_eps: f64,
    pub max_eps: f64,
    pub range: f64,
    pub rms: f64,
}

/// Per-formula min, max, range and root-mean-square of ε, in order of first
/// appearance of each formula.
pub fn aggregate_errors(records: &[ErrorRecord]) -> Result<Vec<ErrorStats>, EstimateError> {
    if records.is_empty() {
        return Err(EstimateError::EmptyRecords);
    }
    let mut order: Vec<&str> = Vec::new();
    for r in records {
        if !r.epsilon.is_finite() {
            return Err(EstimateError::NonFiniteEpsilon {
                instance: r.instance_name.clone(),
                formula: r.formula_name.clone(),
            });
        }
        if !order.contains(&r.formula_name.as_str()) {
            order.push(&r.formula_name);
        }
    }
    Ok(order
        .into_iter()
        .map(|name| {
            let eps: Vec<f64> = records
                .iter()
                .filter(|r| r.formula_name == name)
                .map(|r| r.epsilon)
                .collect();
            let min_eps = eps.iter().copied().fold(f64::INFINITY, f64::min);
            let max_eps = eps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let rms = (eps.iter().map(|e| e * e).sum::<f64>() / eps.len() as f64).sqrt();
            ErrorStats {
                formula_name: name.to_string(),
                count: eps.len(),
                min_eps,
                max_eps,
                range: max_eps - min_eps,
                rms,
            }
        })
        .collect())
}
