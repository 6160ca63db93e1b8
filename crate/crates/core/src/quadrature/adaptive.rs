//! Adaptive composite Gauss-Legendre integration with breakpoint control.
//!
//! Each panel carries a 15-point value and a 7-point estimate; the worst
//! panel (largest |I15 - I7|) is bisected until the summed estimate meets
//! the tolerance. Panels never straddle a user breakpoint because the
//! initial partition is cut at every breakpoint.

use std::collections::BinaryHeap;
use std::sync::OnceLock;

use super::gauss::{gauss_legendre_rule, QuadratureRule};
use crate::error::{Error, Result};

/// Default absolute tolerance used across the crate.
pub const DEFAULT_ABS_TOL: f64 = 1e-10;
/// Default panel budget.
pub const DEFAULT_MAX_PANELS: usize = 4096;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct IntegralResult {
    pub value: f64,
    /// Conservative absolute error estimate (>= 0).
    pub error_estimate: f64,
    pub panels_used: usize,
}

impl IntegralResult {
    fn zero() -> Self {
        IntegralResult {
            value: 0.0,
            error_estimate: 0.0,
            panels_used: 0,
        }
    }

    /// Accumulate another partial result into this one.
    pub fn merge(&mut self, other: &IntegralResult) {
        self.value += other.value;
        self.error_estimate += other.error_estimate;
        self.panels_used += other.panels_used;
    }
}

fn panel_rules() -> &'static (QuadratureRule, QuadratureRule) {
    static RULES: OnceLock<(QuadratureRule, QuadratureRule)> = OnceLock::new();
    RULES.get_or_init(|| (gauss_legendre_rule(15), gauss_legendre_rule(7)))
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn evaluate_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let (r15, r7) = panel_rules();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut v15 = 0.0;
    for (&x, &w) in r15.nodes.iter().zip(&r15.weights) {
        let y = f(mid + half * x);
        v15 += w * y;
    }
    let mut v7 = 0.0;
    for (&x, &w) in r7.nodes.iter().zip(&r7.weights) {
        v7 += w * f(mid + half * x);
    }
    v15 *= half;
    v7 *= half;
    let err = if v15.is_finite() && v7.is_finite() {
        (v15 - v7).abs()
    } else {
        f64::INFINITY
    };
    Panel {
        a,
        b,
        value: v15,
        err,
    }
}

/// Integrate `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// `breakpoints` are interior points where the integrand may have an
/// integrable singularity or reduced smoothness; the initial partition is
/// cut there and refinement bisects toward them. Returns a budget error
/// when `max_panels` panels do not reach the tolerance.
pub fn integrate_adaptive(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    abs_tol: f64,
    max_panels: usize,
) -> Result<IntegralResult> {
    assert!(abs_tol > 0.0, "abs_tol must be positive");
    if a == b {
        return Ok(IntegralResult::zero());
    }
    assert!(a < b, "integrate_adaptive needs a < b");

    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&t| t > a && t < b)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(a);
    edges.extend(cuts);
    edges.push(b);

    // non-finite error estimates (singular nodes) are tracked by count, so
    // the running sum never forms inf - inf = NaN and the budget checks
    // cannot be skipped by a NaN comparison
    let mut heap = BinaryHeap::new();
    let mut total_err = 0.0f64;
    let mut live_nonfinite = 0usize;
    for pair in edges.windows(2) {
        let p = evaluate_panel(&f, pair[0], pair[1]);
        if p.err.is_finite() {
            total_err += p.err;
        } else {
            live_nonfinite += 1;
        }
        heap.push(p);
    }

    let width_floor = (b - a) * 1e-15;
    let mut stalled: Vec<Panel> = Vec::new();
    let mut stalled_err = 0.0f64;
    let mut stalled_nonfinite = 0usize;

    let residual = |total: f64, stall: f64, nonfinite: usize| -> f64 {
        if nonfinite > 0 {
            f64::INFINITY
        } else {
            total + stall
        }
    };

    while residual(total_err, stalled_err, live_nonfinite + stalled_nonfinite) > abs_tol {
        if heap.len() + stalled.len() >= max_panels {
            return Err(Error::QuadratureBudget {
                panels: heap.len() + stalled.len(),
                residual: residual(total_err, stalled_err, live_nonfinite + stalled_nonfinite),
                tol: abs_tol,
            });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break, // everything stalled; fall through to the report
        };
        if worst.err.is_finite() {
            total_err -= worst.err;
        } else {
            live_nonfinite -= 1;
        }
        if worst.b - worst.a <= width_floor {
            // cannot refine further in f64; keep its estimate on the books
            if worst.err.is_finite() {
                stalled_err += worst.err;
            } else {
                stalled_nonfinite += 1;
            }
            stalled.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        for child in [
            evaluate_panel(&f, worst.a, mid),
            evaluate_panel(&f, mid, worst.b),
        ] {
            if child.err.is_finite() {
                total_err += child.err;
            } else {
                live_nonfinite += 1;
            }
            heap.push(child);
        }
    }

    // the residual is finite or +inf by construction, never NaN
    let residual = residual(total_err, stalled_err, live_nonfinite + stalled_nonfinite);
    if residual > abs_tol {
        return Err(Error::QuadratureBudget {
            panels: heap.len() + stalled.len(),
            residual,
            tol: abs_tol,
        });
    }

    let mut value = 0.0;
    let mut panels = 0;
    for p in heap.iter().chain(stalled.iter()) {
        value += p.value;
        panels += 1;
    }
    Ok(IntegralResult {
        value,
        error_estimate: residual,
        panels_used: panels,
    })
}
