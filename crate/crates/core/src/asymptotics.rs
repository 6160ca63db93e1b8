//! Szego asymptotic comparison: the conjugate function gamma(x), the
//! comparison function g_n = sqrt2 cos(n arccos x + gamma(x)), L2(rho)
//! deviations, the leading-coefficient limit, truncated functions, and the
//! oscillatory averaging lemma as a numeric property.

use std::f64::consts::PI;

use serde::Serialize;

use crate::entropy::{truncation_set, IntervalSet};
use crate::error::{Error, Result};
use crate::orthopoly::RecurrenceTable;
use crate::quadrature::{integrate_adaptive, principal_value};
use crate::weights::{szego_constant, Weight};

/// Node count of the phase interpolant.
const PHASE_NODES: usize = 512;
/// Per-node principal-value tolerance, and the relaxed retry used for
/// nodes squeezed against the endpoints where the extrapolation is
/// ill-conditioned.
const PHASE_TOL: f64 = 1e-9;
const PHASE_TOL_RELAXED: f64 = 1e-6;

/// The harmonic-conjugate phase gamma(x) of log w0, by the principal-value
/// integral
/// (1/2 pi) PV int [log w0(x) - log w0(t)]/(x - t) sqrt((1-x^2)/(1-t^2)) dt,
/// evaluated in theta coordinates where the kernel is the smooth difference
/// quotient [H(theta) - H(phi)] sin(theta)/(cos theta - cos phi).
pub fn conjugate_gamma(weight: &Weight, x: f64, abs_tol: f64, max_panels: usize) -> Result<f64> {
    if !weight.szego_flag() {
        return Err(Error::SzegoDivergent);
    }
    assert!(x > -1.0 && x < 1.0, "gamma is defined on the open interval");
    if weight.is_chebyshev() {
        return Ok(0.0);
    }
    let theta = x.acos();
    gamma_at_theta_pv(weight, theta, abs_tol, max_panels)
}

fn log_w0_theta(weight: &Weight, phi: f64) -> f64 {
    let w0 = weight.w0_at_theta(phi);
    if w0 > 0.0 {
        w0.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// cos(theta) - cos(phi) in the cancellation-free product form.
fn cos_diff(theta: f64, phi: f64) -> f64 {
    2.0 * ((theta + phi) * 0.5).sin() * ((phi - theta) * 0.5).sin()
}

fn gamma_at_theta_pv(weight: &Weight, theta: f64, abs_tol: f64, max_panels: usize) -> Result<f64> {
    let h_theta = log_w0_theta(weight, theta);
    let sin_theta = theta.sin();
    let integrand = |phi: f64| {
        let num = h_theta - log_w0_theta(weight, phi);
        num * sin_theta / cos_diff(theta, phi) / (2.0 * PI)
    };
    principal_value(integrand, theta, 0.0, PI, abs_tol, max_panels)
}

/// Barycentric interpolant of gamma on Chebyshev (first-kind) nodes in
/// theta, built once per weight; evaluation afterwards is pure and
/// shareable across threads.
#[derive(Debug, Clone)]
pub struct ConjugatePhase {
    thetas: Vec<f64>,
    values: Vec<f64>,
    bary: Vec<f64>,
    worst_spread: f64,
}

impl ConjugatePhase {
    pub fn build(weight: &Weight, max_panels: usize) -> Result<Self> {
        let k = PHASE_NODES;
        let mut thetas = Vec::with_capacity(k);
        let mut bary = Vec::with_capacity(k);
        for j in 1..=k {
            let t = (2 * j - 1) as f64 * PI / (2.0 * k as f64);
            // node (pi/2)(1 + cos t) with first-kind barycentric weight
            thetas.push(0.5 * PI * (1.0 + t.cos()));
            bary.push(if j % 2 == 1 { t.sin() } else { -t.sin() });
        }
        thetas.reverse();
        bary.reverse();

        let retryable = |e: &Error| {
            matches!(
                e,
                Error::PrincipalValueNonConvergence { .. } | Error::QuadratureBudget { .. }
            )
        };
        let mut worst_spread = 0.0f64;
        let mut values = Vec::with_capacity(k);
        for &theta in &thetas {
            let v = match gamma_at_theta_pv(weight, theta, PHASE_TOL, max_panels) {
                Ok(v) => v,
                Err(ref e) if retryable(e) => {
                    match gamma_at_theta_pv(weight, theta, PHASE_TOL_RELAXED, max_panels) {
                        Ok(v) => {
                            worst_spread = worst_spread.max(PHASE_TOL_RELAXED);
                            v
                        }
                        Err(ref e) if retryable(e) => {
                            // endpoint-squeezed node: keep the extrapolate,
                            // record how bad it is
                            let spread = match e {
                                Error::PrincipalValueNonConvergence { spread, .. } => *spread,
                                _ => PHASE_TOL_RELAXED,
                            };
                            worst_spread = worst_spread.max(spread);
                            gamma_at_theta_best_effort(weight, theta, max_panels)?
                        }
                        Err(e) => return Err(e),
                    }
                }
                Err(e) => return Err(e),
            };
            values.push(v);
        }
        Ok(ConjugatePhase {
            thetas,
            values,
            bary,
            worst_spread,
        })
    }

    /// Largest unresolved extrapolation spread across nodes; zero when all
    /// node values met the standard tolerance.
    pub fn worst_node_spread(&self) -> f64 {
        self.worst_spread
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..self.thetas.len() {
            let d = theta - self.thetas[j];
            if d == 0.0 {
                return self.values[j];
            }
            let t = self.bary[j] / d;
            num += t * self.values[j];
            den += t;
        }
        num / den
    }
}

fn gamma_at_theta_best_effort(weight: &Weight, theta: f64, max_panels: usize) -> Result<f64> {
    // same excision as principal_value but never refuses: single radius
    // pair, linear extrapolation, relaxed inner tolerance
    let h_theta = log_w0_theta(weight, theta);
    let sin_theta = theta.sin();
    let f = |phi: f64| {
        (h_theta - log_w0_theta(weight, phi)) * sin_theta / cos_diff(theta, phi) / (2.0 * PI)
    };
    let dist = theta.min(PI - theta);
    let r0 = (1e-2 * PI).min(dist / 16.0);
    let mut vals = [0.0f64; 2];
    for (k, v) in vals.iter_mut().enumerate() {
        let r = r0 / 2f64.powi(k as i32);
        let left = integrate_adaptive(f, 0.0, theta - r, &[], 1e-8, max_panels)?;
        let right = integrate_adaptive(f, theta + r, PI, &[], 1e-8, max_panels)?;
        *v = left.value + right.value;
    }
    Ok(2.0 * vals[1] - vals[0])
}

/// Per-degree asymptotics record.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsReport {
    pub n: usize,
    pub l2_dev: f64,
    pub gamma_log_ratio: f64,
    pub gamma_limit: f64,
    pub trunc_l2_dev: f64,
}

impl AsymptoticsReport {
    pub const CSV_HEADER: &'static str = "n,l2_dev,gamma_log_ratio,gamma_limit,trunc_l2_dev";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n, self.l2_dev, self.gamma_log_ratio, self.gamma_limit, self.trunc_l2_dev
        )
    }
}

/// The truncated function: f_n off the truncation set, 1 on it.
pub struct TruncatedF<'a> {
    weight: &'a Weight,
    table: &'a RecurrenceTable,
    n: usize,
    set: IntervalSet,
}

impl<'a> TruncatedF<'a> {
    pub fn set(&self) -> &IntervalSet {
        &self.set
    }

    pub fn eval_theta(&self, theta: f64) -> f64 {
        if self.set.contains_theta(theta) {
            1.0
        } else {
            f_n_theta(self.weight, self.table, self.n, theta)
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_theta(x.clamp(-1.0, 1.0).acos())
    }
}

/// Assemble the truncated function for (n, M).
pub fn truncated_f<'a>(
    weight: &'a Weight,
    table: &'a RecurrenceTable,
    n: usize,
    m_level: f64,
) -> Result<TruncatedF<'a>> {
    let set = truncation_set(weight, table, n, m_level)?;
    Ok(TruncatedF {
        weight,
        table,
        n,
        set,
    })
}

fn f_n_theta(weight: &Weight, table: &RecurrenceTable, n: usize, theta: f64) -> f64 {
    let p = table.evaluate_pn(n, theta.cos()).expect("degree checked");
    p * weight.w0_at_theta(theta).sqrt()
}

/// Comparison function g_n by a one-off principal-value evaluation of the
/// phase. Sweeps should go through [`Asymptotics`], which caches the phase.
pub fn szego_gn(weight: &Weight, n: usize, x: f64, abs_tol: f64, max_panels: usize) -> Result<f64> {
    let gamma = conjugate_gamma(weight, x, abs_tol, max_panels)?;
    Ok(2f64.sqrt() * (n as f64 * x.acos() + gamma).cos())
}

/// Szego comparison engine for one weight: phase interpolant plus the
/// recurrence table. Immutable after construction.
pub struct Asymptotics<'a> {
    weight: &'a Weight,
    table: &'a RecurrenceTable,
    phase: Option<ConjugatePhase>,
}

impl<'a> Asymptotics<'a> {
    pub fn new(weight: &'a Weight, table: &'a RecurrenceTable, max_panels: usize) -> Result<Self> {
        if !weight.szego_flag() {
            return Err(Error::SzegoDivergent);
        }
        let phase = if weight.is_chebyshev() {
            None
        } else {
            Some(ConjugatePhase::build(weight, max_panels)?)
        };
        Ok(Asymptotics {
            weight,
            table,
            phase,
        })
    }

    pub fn phase(&self) -> Option<&ConjugatePhase> {
        self.phase.as_ref()
    }

    pub fn gamma_at_theta(&self, theta: f64) -> f64 {
        match &self.phase {
            None => 0.0,
            Some(p) => p.eval(theta),
        }
    }

    /// g_n(cos theta) = sqrt2 cos(n theta + gamma(theta)).
    pub fn gn_theta(&self, n: usize, theta: f64) -> f64 {
        2f64.sqrt() * (n as f64 * theta + self.gamma_at_theta(theta)).cos()
    }

    pub fn szego_gn(&self, n: usize, x: f64) -> f64 {
        self.gn_theta(n, x.clamp(-1.0, 1.0).acos())
    }

    /// ||f_n - g_n||_{L2(rho)}, integrated in theta with panels no wider
    /// than pi/(8n) so the oscillation stays resolved.
    pub fn l2_deviation(&self, n: usize, abs_tol: f64, max_panels: usize) -> Result<f64> {
        self.l2_deviation_of(n, abs_tol, max_panels, |theta| {
            f_n_theta(self.weight, self.table, n, theta)
        })
    }

    /// Same deviation with f_n replaced by the truncated function.
    pub fn truncated_l2_deviation(
        &self,
        n: usize,
        m_level: f64,
        abs_tol: f64,
        max_panels: usize,
    ) -> Result<f64> {
        let tf = truncated_f(self.weight, self.table, n, m_level)?;
        self.l2_deviation_of(n, abs_tol, max_panels, move |theta| tf.eval_theta(theta))
    }

    fn l2_deviation_of(
        &self,
        n: usize,
        abs_tol: f64,
        max_panels: usize,
        f: impl Fn(f64) -> f64,
    ) -> Result<f64> {
        let segments = 8 * n.max(1);
        let breaks: Vec<f64> = (1..segments)
            .map(|k| PI * k as f64 / segments as f64)
            .collect();
        let r = integrate_adaptive(
            |theta: f64| {
                let d = f(theta) - self.gn_theta(n, theta);
                d * d / PI
            },
            0.0,
            PI,
            &breaks,
            abs_tol,
            max_panels,
        )?;
        Ok(r.value.max(0.0).sqrt())
    }

    /// log(gamma_n / 2^n), the quantity whose limit is
    /// -(1/2)(log 2 + S(rho, w)).
    pub fn gamma_log_ratio(&self, n: usize) -> Result<f64> {
        Ok(self.table.log_leading_coefficient(n)? - n as f64 * std::f64::consts::LN_2)
    }

    pub fn gamma_limit(&self, abs_tol: f64) -> Result<f64> {
        let s = szego_constant(self.weight, abs_tol)?;
        Ok(-0.5 * (std::f64::consts::LN_2 + s))
    }

    pub fn report(
        &self,
        n: usize,
        m_level: f64,
        abs_tol: f64,
        max_panels: usize,
    ) -> Result<AsymptoticsReport> {
        Ok(AsymptoticsReport {
            n,
            l2_dev: self.l2_deviation(n, abs_tol, max_panels)?,
            gamma_log_ratio: self.gamma_log_ratio(n)?,
            gamma_limit: self.gamma_limit(abs_tol)?,
            trunc_l2_dev: self.truncated_l2_deviation(n, m_level, abs_tol, max_panels)?,
        })
    }
}

/// Value and limit of the oscillatory average
/// int_0^pi g(n theta + gamma(theta)) f(theta) dtheta  vs
/// (1/pi) int_0^pi g int_0^pi f.
#[derive(Debug, Clone, Copy)]
pub struct OscillatoryAverage {
    pub value: f64,
    pub limit: f64,
}

/// Numeric form of the averaging lemma for pi-periodic continuous g,
/// integrable f, and a phase function gamma.
pub fn oscillatory_average(
    g: impl Fn(f64) -> f64,
    f: impl Fn(f64) -> f64,
    gamma_fn: impl Fn(f64) -> f64,
    n: usize,
    abs_tol: f64,
    max_panels: usize,
) -> Result<OscillatoryAverage> {
    let segments = 8 * n.max(1);
    let breaks: Vec<f64> = (1..segments)
        .map(|k| PI * k as f64 / segments as f64)
        .collect();
    let value = integrate_adaptive(
        |theta: f64| g(n as f64 * theta + gamma_fn(theta)) * f(theta),
        0.0,
        PI,
        &breaks,
        abs_tol,
        max_panels,
    )?
    .value;
    let g_mean = integrate_adaptive(
        &g,
        0.0,
        PI,
        &[PI / 4.0, PI / 2.0, 3.0 * PI / 4.0],
        abs_tol,
        max_panels,
    )?
    .value
        / PI;
    let f_int = integrate_adaptive(&f, 0.0, PI, &[], abs_tol, max_panels)?.value;
    Ok(OscillatoryAverage {
        value,
        limit: g_mean * f_int,
    })
}
