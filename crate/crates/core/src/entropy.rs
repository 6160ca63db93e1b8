//! The entropy integral E_n and its split into F_n + G_n, mutual entropy
//! and mutual logarithmic energy, truncation sets, and the correction and
//! condition integrals attached to the asymptotic bounds.
//!
//! All integrals run in theta coordinates (x = cos theta) with breakpoints
//! at the zeros of p_n, where the integrands lose smoothness. The value
//! 0 log 0 is taken as 0 throughout (removable limit).

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::orthopoly::RecurrenceTable;
use crate::quadrature::{integrate_adaptive, IntegralResult};
use crate::weights::{szego_constant, Weight};

/// Default truncation level; anything above sqrt(2) works, and smaller
/// M gives larger, better-conditioned truncation sets.
pub const DEFAULT_TRUNCATION_LEVEL: f64 = 1.5;

/// y^2 log(y^2) with the removable value 0 at y = 0.
fn r_entropy(y: f64) -> f64 {
    let t = y * y;
    if t > 0.0 {
        t * t.ln()
    } else {
        0.0
    }
}

/// t log(t) for t >= 0 with the removable value 0 at t = 0.
fn xlogx(t: f64) -> f64 {
    if t > 0.0 {
        t * t.ln()
    } else {
        0.0
    }
}

/// Breakpoints in theta at the zeros of p_n.
fn zero_breakpoints(table: &RecurrenceTable, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let zeros = table.zeros(n)?;
    Ok(zeros.zeros.iter().map(|&z| z.acos()).collect())
}

/// The information entropy E_n = -int p_n^2 log(p_n^2) w dx.
pub fn entropy_en(
    weight: &Weight,
    table: &RecurrenceTable,
    n: usize,
    abs_tol: f64,
    max_panels: usize,
) -> Result<IntegralResult> {
    let breaks = zero_breakpoints(table, n)?;
    let f = |theta: f64| {
        let p = table.evaluate_pn(n, theta.cos()).expect("degree checked");
        -r_entropy(p) * weight.w0_at_theta(theta) / PI
    };
    integrate_adaptive(f, 0.0, PI, &breaks, abs_tol, max_panels)
}

/// F_n = -int log(p_n^2 w0) p_n^2 w dx = -int f_n^2 log(f_n^2) rho dx.
pub fn functional_fn(
    weight: &Weight,
    table: &RecurrenceTable,
    n: usize,
    abs_tol: f64,
    max_panels: usize,
) -> Result<IntegralResult> {
    let breaks = zero_breakpoints(table, n)?;
    let f = |theta: f64| {
        let p = table.evaluate_pn(n, theta.cos()).expect("degree checked");
        let fsq = p * p * weight.w0_at_theta(theta);
        -xlogx(fsq) / PI
    };
    integrate_adaptive(f, 0.0, PI, &breaks, abs_tol, max_panels)
}

/// G_n = int log(w0) p_n^2 w dx; requires the Szego condition, otherwise
/// the integral diverges to -infinity.
pub fn functional_gn(
    weight: &Weight,
    table: &RecurrenceTable,
    n: usize,
    abs_tol: f64,
    max_panels: usize,
) -> Result<IntegralResult> {
    if !weight.szego_flag() {
        return Err(Error::SzegoDivergent);
    }
    if weight.is_chebyshev() {
        // log w0 = 0 identically
        return Ok(IntegralResult {
            value: 0.0,
            error_estimate: 0.0,
            panels_used: 0,
        });
    }
    let breaks = zero_breakpoints(table, n)?;
    let f = |theta: f64| {
        let w0 = weight.w0_at_theta(theta);
        if w0 <= 0.0 {
            return 0.0; // f_n^2 = p_n^2 w0 vanishes with w0
        }
        let p = table.evaluate_pn(n, theta.cos()).expect("degree checked");
        w0.ln() * p * p * w0 / PI
    };
    integrate_adaptive(f, 0.0, PI, &breaks, abs_tol, max_panels)
}

/// Mutual entropy S(mu, nu) = -int log(dmu/dnu) dmu of two unit densities
/// on [-1, 1] given by their Radon-Nikodym derivatives against dx.
///
/// Returns the -infinity sentinel when nu vanishes somewhere mu does not.
/// Breakpoints are x-coordinates where either density loses smoothness.
pub fn mutual_entropy(
    mu: impl Fn(f64) -> f64,
    nu: impl Fn(f64) -> f64,
    breakpoints_x: &[f64],
    abs_tol: f64,
    max_panels: usize,
) -> Result<f64> {
    let breaks: Vec<f64> = breakpoints_x
        .iter()
        .map(|&x| x.clamp(-1.0, 1.0).acos())
        .collect();

    let mass = |d: &dyn Fn(f64) -> f64| -> Result<f64> {
        Ok(integrate_adaptive(
            |theta: f64| d(theta.cos()) * theta.sin(),
            0.0,
            PI,
            &breaks,
            (abs_tol * 0.1).max(1e-12),
            max_panels,
        )?
        .value)
    };
    let mu_mass = mass(&mu)?;
    if (mu_mass - 1.0).abs() > 1e-6 {
        return Err(Error::MassMismatch(mu_mass));
    }
    let nu_mass = mass(&nu)?;
    if (nu_mass - 1.0).abs() > 1e-6 {
        return Err(Error::MassMismatch(nu_mass));
    }

    // absolute-continuity scan on a fixed grid
    for k in 0..4096 {
        let theta = PI * (k as f64 + 0.5) / 4096.0;
        let x = theta.cos();
        if nu(x) <= 0.0 && mu(x) > 1e-12 {
            return Ok(f64::NEG_INFINITY);
        }
    }

    let integrand = |theta: f64| {
        let x = theta.cos();
        let m = mu(x);
        if m <= 0.0 {
            return 0.0;
        }
        let n = nu(x);
        if n <= 0.0 {
            return f64::INFINITY;
        }
        -(m / n).ln() * m * theta.sin()
    };
    match integrate_adaptive(integrand, 0.0, PI, &breaks, abs_tol, max_panels) {
        Ok(r) => Ok(r.value),
        Err(Error::QuadratureBudget { residual, .. }) if residual.is_infinite() => {
            Ok(f64::NEG_INFINITY)
        }
        Err(e) => Err(e),
    }
}

/// How to compute the mutual logarithmic energy I(mu_n, nu_n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyMode {
    /// From the identity E_n = -2 log gamma_n + 2n I(mu_n, nu_n).
    Identity,
    /// Direct double integral: -(1/n) sum_j int log|zeta_j - t| dnu_n(t).
    BruteForce,
}

/// Mutual logarithmic energy of the zero counting measure mu_n against the
/// density nu_n = p_n^2 w.
pub fn mutual_energy(
    weight: &Weight,
    table: &RecurrenceTable,
    n: usize,
    mode: EnergyMode,
    abs_tol: f64,
    max_panels: usize,
) -> Result<f64> {
    assert!(n >= 1, "mutual energy needs n >= 1");
    match mode {
        EnergyMode::Identity => {
            let e = entropy_en(weight, table, n, abs_tol, max_panels)?.value;
            let log_gamma = table.log_leading_coefficient(n)?;
            Ok((e + 2.0 * log_gamma) / (2.0 * n as f64))
        }
        EnergyMode::BruteForce => {
            let zeros = table.zeros(n)?.zeros;
            let breaks: Vec<f64> = zeros.iter().map(|&z| z.acos()).collect();
            let mut total = 0.0;
            for &zeta in &zeros {
                let r = integrate_adaptive(
                    |theta: f64| {
                        let x = theta.cos();
                        let p = table.evaluate_pn(n, x).expect("degree checked");
                        let dist = (zeta - x).abs();
                        if dist == 0.0 {
                            return f64::NEG_INFINITY;
                        }
                        dist.ln() * p * p * weight.w0_at_theta(theta) / PI
                    },
                    0.0,
                    PI,
                    &breaks,
                    abs_tol,
                    max_panels,
                )?;
                total += r.value;
            }
            Ok(-total / n as f64)
        }
    }
}

/// Disjoint closed subintervals of [0, pi] (theta coordinates) where
/// |f_n| >= M.
#[derive(Debug, Clone, Serialize)]
pub struct IntervalSet {
    /// Sorted, pairwise disjoint (lo, hi) pairs in theta.
    pub intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet {
            intervals: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// rho-measure: each dtheta slice carries dtheta/pi of rho mass.
    pub fn rho_measure(&self) -> f64 {
        // + 0.0 normalizes the empty sum's negative zero
        self.intervals
            .iter()
            .map(|&(lo, hi)| (hi - lo) / PI)
            .sum::<f64>()
            + 0.0
    }

    pub fn contains_theta(&self, theta: f64) -> bool {
        self.intervals
            .iter()
            .any(|&(lo, hi)| theta >= lo && theta <= hi)
    }
}

fn f_squared(weight: &Weight, table: &RecurrenceTable, n: usize, theta: f64) -> f64 {
    let p = table.evaluate_pn(n, theta.cos()).expect("degree checked");
    p * p * weight.w0_at_theta(theta)
}

/// The truncation set Delta_n(M) = {x : |f_n(x)| >= M} located by sign
/// changes of f_n^2 - M^2 on a theta grid of at least 64 n points, each
/// crossing refined by bisection to 1e-12 in theta.
pub fn truncation_set(
    weight: &Weight,
    table: &RecurrenceTable,
    n: usize,
    m_level: f64,
) -> Result<IntervalSet> {
    if m_level.is_nan() || m_level <= 2f64.sqrt() {
        return Err(Error::TruncationLevelTooSmall(m_level));
    }
    let g = |theta: f64| f_squared(weight, table, n, theta) - m_level * m_level;

    let count = (64 * n).max(256);
    let grid: Vec<f64> = (0..=count).map(|k| PI * k as f64 / count as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&t| g(t)).collect();

    let bisect = |mut lo: f64, mut hi: f64| -> f64 {
        // keeps the invariant sign(g(lo)) != sign(g(hi))
        let flo = g(lo) >= 0.0;
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if (g(mid) >= 0.0) == flo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let mut intervals = Vec::new();
    let mut open: Option<f64> = None;
    for k in 0..=count {
        let inside = vals[k] >= 0.0;
        match (inside, open) {
            (true, None) => {
                let start = if k == 0 {
                    0.0
                } else {
                    bisect(grid[k - 1], grid[k])
                };
                open = Some(start);
            }
            (false, Some(start)) => {
                // crossing between k-1 and k
                let end = bisect(grid[k - 1], grid[k]);
                intervals.push((start, end));
                open = None;
            }
            _ => {}
        }
    }
    if let Some(start) = open {
        intervals.push((start, PI));
    }
    Ok(IntervalSet { intervals })
}

/// The two correction integrals of the asymptotic identities: over
/// Delta_n(M), int p^2 log+(p^2) w dx (always >= 0) and
/// int f^2 log(f^2) rho dx (>= 0 because f^2 >= M^2 > 2 there).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CorrectionTerms {
    pub correction_e: f64,
    pub correction_f: f64,
}

pub fn correction_terms(
    weight: &Weight,
    table: &RecurrenceTable,
    n: usize,
    m_level: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<CorrectionTerms> {
    let set = truncation_set(weight, table, n, m_level)?;
    correction_terms_on(weight, table, n, &set, abs_tol, max_panels)
}

pub(crate) fn correction_terms_on(
    weight: &Weight,
    table: &RecurrenceTable,
    n: usize,
    set: &IntervalSet,
    abs_tol: f64,
    max_panels: usize,
) -> Result<CorrectionTerms> {
    let mut ce = 0.0;
    let mut cf = 0.0;
    for &(lo, hi) in &set.intervals {
        let e_part = integrate_adaptive(
            |theta: f64| {
                let p = table.evaluate_pn(n, theta.cos()).expect("degree checked");
                let psq = p * p;
                let logplus = if psq > 1.0 { psq.ln() } else { 0.0 };
                psq * logplus * weight.w0_at_theta(theta) / PI
            },
            lo,
            hi,
            &[],
            abs_tol,
            max_panels,
        )?;
        let f_part = integrate_adaptive(
            |theta: f64| {
                let fsq = f_squared(weight, table, n, theta);
                xlogx(fsq) / PI
            },
            lo,
            hi,
            &[],
            abs_tol,
            max_panels,
        )?;
        ce += e_part.value;
        cf += f_part.value;
    }
    Ok(CorrectionTerms {
        correction_e: ce,
        correction_f: cf,
    })
}

/// The four suprema of the sufficient-condition integrals over a degree
/// list; boundedness over the grid is the numeric proxy for the
/// subsequence hypotheses.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConditionSuprema {
    pub sup_e_log: f64,
    pub sup_e_pow: f64,
    pub sup_f_log: f64,
    pub sup_f_pow: f64,
    /// Set when any of the four running suprema grows superlinearly in n.
    pub divergence_flag: bool,
}

pub fn condition_check(
    weight: &Weight,
    table: &RecurrenceTable,
    n_list: &[usize],
    epsilon: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<ConditionSuprema> {
    assert!(epsilon > 0.0, "epsilon must be positive");
    assert!(!n_list.is_empty(), "n_list must not be empty");
    let mut per_n: Vec<[f64; 4]> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let breaks = zero_breakpoints(table, n)?;
        let quad = |f: &dyn Fn(f64) -> f64| -> Result<f64> {
            Ok(integrate_adaptive(f, 0.0, PI, &breaks, abs_tol, max_panels)?.value)
        };
        let e_log = quad(&|theta| {
            let p = table.evaluate_pn(n, theta.cos()).expect("degree checked");
            let psq = p * p;
            let lp = if psq > 1.0 { psq.ln() } else { 0.0 };
            lp.powf(1.0 + epsilon) * psq * weight.w0_at_theta(theta) / PI
        })?;
        let e_pow = quad(&|theta| {
            let p = table.evaluate_pn(n, theta.cos()).expect("degree checked");
            (p * p).powf(1.0 + epsilon) * weight.w0_at_theta(theta) / PI
        })?;
        let f_log = quad(&|theta| {
            let fsq = f_squared(weight, table, n, theta);
            let lp = if fsq > 1.0 { fsq.ln() } else { 0.0 };
            lp.powf(1.0 + epsilon) * fsq / PI
        })?;
        let f_pow = quad(&|theta| f_squared(weight, table, n, theta).powf(1.0 + epsilon) / PI)?;
        per_n.push([e_log, e_pow, f_log, f_pow]);
    }

    let sup = |idx: usize| per_n.iter().map(|r| r[idx]).fold(0.0f64, f64::max);
    // superlinear growth proxy: the last value per degree beats twice the
    // linear extrapolation from the first
    let first_n = n_list[0] as f64;
    let last_n = *n_list.last().unwrap() as f64;
    let divergence_flag = (0..4).any(|i| {
        let first = per_n[0][i];
        let last = per_n[per_n.len() - 1][i];
        last_n > first_n && last > 2.0 * first.max(1e-12) * (last_n / first_n)
    });

    Ok(ConditionSuprema {
        sup_e_log: sup(0),
        sup_e_pow: sup(1),
        sup_f_log: sup(2),
        sup_f_pow: sup(3),
        divergence_flag,
    })
}

/// Everything the CLI reports per degree, one CSV row or JSON object.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    pub n: usize,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "G")]
    pub g: f64,
    pub szego_const: f64,
    #[serde(rename = "correction_E")]
    pub correction_e: f64,
    #[serde(rename = "correction_F")]
    pub correction_f: f64,
    pub delta_measure: f64,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "I_energy")]
    pub i_energy: f64,
    pub quad_error: f64,
}

impl EntropyReport {
    pub const CSV_HEADER: &'static str =
        "n,E,F,G,szego_const,correction_E,correction_F,delta_measure,M,I_energy,quad_error";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.e,
            self.f,
            self.g,
            self.szego_const,
            self.correction_e,
            self.correction_f,
            self.delta_measure,
            self.m,
            self.i_energy,
            self.quad_error
        )
    }
}

/// Assemble the full per-degree report.
pub fn entropy_report(
    weight: &Weight,
    table: &RecurrenceTable,
    n: usize,
    m_level: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<EntropyReport> {
    let e = entropy_en(weight, table, n, abs_tol, max_panels)?;
    let f = functional_fn(weight, table, n, abs_tol, max_panels)?;
    let g = functional_gn(weight, table, n, abs_tol, max_panels)?;
    let szego = szego_constant(weight, abs_tol)?;
    let set = truncation_set(weight, table, n, m_level)?;
    let corrections = correction_terms_on(weight, table, n, &set, abs_tol, max_panels)?;
    let i_energy = if n >= 1 {
        (e.value + 2.0 * table.log_leading_coefficient(n)?) / (2.0 * n as f64)
    } else {
        f64::NAN
    };
    Ok(EntropyReport {
        n,
        e: e.value,
        f: f.value,
        g: g.value,
        szego_const: szego,
        correction_e: corrections.correction_e,
        correction_f: corrections.correction_f,
        delta_measure: set.rho_measure(),
        m: m_level,
        i_energy,
        quad_error: e.error_estimate + f.error_estimate + g.error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein::{exact_g, fejer_riesz};
    use crate::orthopoly::recurrence_coefficients;
    use crate::weights::{build_weight, chebyshev_rho, WeightSpec};
    use std::f64::consts::LN_2;

    const TOL: f64 = 1e-10;
    const PANELS: usize = 4096;

    fn cheb() -> (Weight, RecurrenceTable) {
        let w = build_weight(WeightSpec::Chebyshev).unwrap();
        let t = recurrence_coefficients(&w, 32).unwrap();
        (w, t)
    }

    #[test]
    fn entropy_at_degree_zero_vanishes() {
        let (w, t) = cheb();
        let e = entropy_en(&w, &t, 0, TOL, PANELS).unwrap();
        assert!(e.value.abs() < 1e-10);
    }

    #[test]
    fn chebyshev_entropy_is_log2_minus_1() {
        let (w, t) = cheb();
        for n in 1..=20 {
            let e = entropy_en(&w, &t, n, TOL, PANELS).unwrap();
            assert!((e.value - (LN_2 - 1.0)).abs() < 1e-9, "n={n} E={}", e.value);
        }
    }

    #[test]
    fn entropy_nonpositive_for_test_weights() {
        let specs = vec![
            WeightSpec::Jacobi {
                alpha: 0.0,
                beta: 0.0,
            },
            WeightSpec::Bernstein { s: vec![5.0, -4.0] },
        ];
        for spec in specs {
            let w = build_weight(spec.clone()).unwrap();
            let t = recurrence_coefficients(&w, 10).unwrap();
            for n in 1..=10 {
                let e = entropy_en(&w, &t, n, TOL, PANELS).unwrap();
                assert!(e.value <= 1e-9, "{spec:?} n={n}: E={}", e.value);
            }
        }
    }

    #[test]
    fn legendre_entropy_against_fixed_grid_oracle() {
        // brute-force oracle: composite Simpson in theta on 200k panels,
        // entirely independent of the adaptive integrator
        let w = build_weight(WeightSpec::Jacobi {
            alpha: 0.0,
            beta: 0.0,
        })
        .unwrap();
        let t = recurrence_coefficients(&w, 6).unwrap();
        let integrand = |theta: f64| {
            let p = t.evaluate_pn(5, theta.cos()).unwrap();
            -r_entropy(p) * w.w0_at_theta(theta) / PI
        };
        let m = 200_000usize;
        let h = PI / m as f64;
        let mut oracle = integrand(0.0) + integrand(PI);
        for k in 1..m {
            let factor = if k % 2 == 1 { 4.0 } else { 2.0 };
            oracle += factor * integrand(k as f64 * h);
        }
        oracle *= h / 3.0;

        let e = entropy_en(&w, &t, 5, TOL, PANELS).unwrap();
        assert!(
            (e.value - oracle).abs() < 1e-8,
            "E={} oracle={oracle}",
            e.value
        );
    }

    #[test]
    fn split_sums_to_entropy() {
        let specs = vec![
            WeightSpec::Chebyshev,
            WeightSpec::Jacobi {
                alpha: 0.0,
                beta: 0.0,
            },
            WeightSpec::Jacobi {
                alpha: 0.5,
                beta: -0.3,
            },
            WeightSpec::Bernstein { s: vec![5.0, -4.0] },
            WeightSpec::Bernstein {
                s: vec![25.0, 0.0, -16.0],
            },
        ];
        for spec in specs {
            let w = build_weight(spec.clone()).unwrap();
            let t = recurrence_coefficients(&w, 30).unwrap();
            for n in [1usize, 7, 18, 30] {
                let e = entropy_en(&w, &t, n, TOL, PANELS).unwrap();
                let f = functional_fn(&w, &t, n, TOL, PANELS).unwrap();
                let g = functional_gn(&w, &t, n, TOL, PANELS).unwrap();
                let budget = 2.0 * (e.error_estimate + f.error_estimate + g.error_estimate) + 1e-12;
                assert!(
                    (e.value - f.value - g.value).abs() <= budget,
                    "{spec:?} n={n}: E-F-G = {}",
                    e.value - f.value - g.value
                );
            }
        }
    }

    #[test]
    fn chebyshev_g_vanishes() {
        let (w, t) = cheb();
        for n in [0, 3, 11] {
            assert_eq!(functional_gn(&w, &t, n, TOL, PANELS).unwrap().value, 0.0);
        }
    }

    #[test]
    fn bernstein_f_equals_log2_minus_1() {
        let w = build_weight(WeightSpec::Bernstein { s: vec![5.0, -4.0] }).unwrap();
        let t = recurrence_coefficients(&w, 12).unwrap();
        let f3 = functional_fn(&w, &t, 3, TOL, PANELS).unwrap();
        assert!((f3.value - (LN_2 - 1.0)).abs() < 1e-8, "F_3 = {}", f3.value);
    }

    #[test]
    fn bernstein_g_matches_contour_oracle() {
        let w = build_weight(WeightSpec::Bernstein { s: vec![5.0, -4.0] }).unwrap();
        let t = recurrence_coefficients(&w, 12).unwrap();
        let factor = fejer_riesz(&[5.0, -4.0], w.mass()).unwrap();
        let g12 = functional_gn(&w, &t, 12, TOL, PANELS).unwrap().value;
        let oracle = exact_g(&factor, 12).unwrap();
        assert!((g12 - oracle).abs() < 1e-9, "G_12={g12} oracle={oracle}");
        // and the n = 12 value has already reached the limit log(3/4)
        assert!((g12 - 0.75f64.ln()).abs() < 1e-8);
    }

    #[test]
    fn bernstein_entropy_matches_exact_split() {
        // E_n by quadrature against exact_F + exact_G for n up to 12
        let w = build_weight(WeightSpec::Bernstein { s: vec![5.0, -4.0] }).unwrap();
        let t = recurrence_coefficients(&w, 12).unwrap();
        let factor = fejer_riesz(&[5.0, -4.0], w.mass()).unwrap();
        for n in factor.min_valid_degree()..=12 {
            let e = entropy_en(&w, &t, n, TOL, PANELS).unwrap().value;
            let exact = (LN_2 - 1.0) + exact_g(&factor, n).unwrap();
            assert!((e - exact).abs() <= 1e-7, "n={n}: E={e} exact={exact}");
        }
    }

    #[test]
    fn bernstein_g_reaches_szego_constant_at_n40() {
        // bounded log w0: G_n converges to S(rho, w)
        let w = build_weight(WeightSpec::Bernstein { s: vec![5.0, -4.0] }).unwrap();
        let t = recurrence_coefficients(&w, 40).unwrap();
        let s = crate::weights::szego_constant(&w, 1e-11).unwrap();
        let g40 = functional_gn(&w, &t, 40, TOL, PANELS).unwrap().value;
        assert!((g40 - s).abs() <= 1e-8, "G_40={g40} S={s}");
    }

    #[test]
    fn condition_check_diagnostic_path_for_flat_vanishing_weight() {
        // tabulated w0 ~ exp(-1/(1-x^2)): outside the Szego class, but the
        // condition integrals still evaluate; the flag is reported, not
        // asserted
        let k = 129;
        let samples: Vec<f64> = (0..k)
            .map(|j| {
                let x = (j as f64 * PI / (k - 1) as f64).cos();
                let d: f64 = 1.0 - x * x;
                if d <= 1e-12 {
                    0.0
                } else {
                    (-1.0 / d).exp()
                }
            })
            .collect();
        let w = build_weight(WeightSpec::Tabulated { w0: samples }).unwrap();
        assert!(!w.szego_flag());
        let t = recurrence_coefficients(&w, 8).unwrap();
        let s = condition_check(&w, &t, &[2, 4, 8], 0.5, 1e-8, PANELS).unwrap();
        assert!(s.sup_f_pow.is_finite());
        assert!(functional_gn(&w, &t, 4, 1e-8, PANELS).is_err());
    }

    #[test]
    fn mutual_entropy_of_identical_densities_is_zero() {
        let v = mutual_entropy(chebyshev_rho, chebyshev_rho, &[], 1e-10, PANELS).unwrap();
        assert!(v.abs() < 1e-10);
    }

    #[test]
    fn mutual_entropy_reproduces_entropy_en() {
        // S(nu_3, nu) along the generic path against the dedicated one
        let (w, t) = cheb();
        let e3 = entropy_en(&w, &t, 3, TOL, PANELS).unwrap().value;
        let zeros_x: Vec<f64> = t.zeros(3).unwrap().zeros;
        let mu = |x: f64| {
            let p = t.evaluate_pn(3, x).unwrap();
            p * p * w.eval_w(x)
        };
        let nu = |x: f64| w.eval_w(x);
        let s = mutual_entropy(mu, nu, &zeros_x, 1e-10, PANELS).unwrap();
        assert!((s - e3).abs() < 1e-8, "S={s} E_3={e3}");
    }

    #[test]
    fn mutual_entropy_mass_check() {
        let e = mutual_entropy(
            |x| 2.0 * chebyshev_rho(x),
            chebyshev_rho,
            &[],
            1e-10,
            PANELS,
        );
        assert!(matches!(e, Err(Error::MassMismatch(_))));
    }

    #[test]
    fn mutual_entropy_sentinel_when_nu_vanishes() {
        // nu supported on half the interval, mu everywhere
        let nu = |x: f64| if x > 0.0 { 2.0 * chebyshev_rho(x) } else { 0.0 };
        // not quite unit mass for nu? it is: rho mass on (0,1) is 1/2
        let v = mutual_entropy(chebyshev_rho, nu, &[0.0], 1e-8, PANELS).unwrap();
        assert_eq!(v, f64::NEG_INFINITY);
    }

    #[test]
    fn chebyshev_energy_closed_form() {
        // algebraic consequence of the identity: I = log 2 - 1/(2n)
        let (w, t) = cheb();
        for n in [1usize, 4, 9, 20] {
            let i = mutual_energy(&w, &t, n, EnergyMode::Identity, TOL, PANELS).unwrap();
            let expect = LN_2 - 1.0 / (2.0 * n as f64);
            assert!((i - expect).abs() < 1e-8, "n={n} I={i} expect={expect}");
        }
    }

    #[test]
    fn energy_modes_agree() {
        let (w, t) = cheb();
        for n in [2usize, 4] {
            let a = mutual_energy(&w, &t, n, EnergyMode::Identity, TOL, PANELS).unwrap();
            let b = mutual_energy(&w, &t, n, EnergyMode::BruteForce, 1e-9, PANELS).unwrap();
            assert!((a - b).abs() < 1e-6, "n={n}: identity {a} vs brute {b}");
        }
    }

    #[test]
    fn truncation_set_preconditions_and_trivial_cases() {
        let (w, t) = cheb();
        assert!(matches!(
            truncation_set(&w, &t, 3, 1.2),
            Err(Error::TruncationLevelTooSmall(_))
        ));
        // |f_n| <= sqrt2 < 1.5 everywhere for the Chebyshev weight
        for n in [1usize, 5, 12] {
            let set = truncation_set(&w, &t, n, 1.5).unwrap();
            assert!(set.is_empty(), "n={n}: {:?}", set.intervals);
            assert_eq!(set.rho_measure(), 0.0);
        }
    }

    #[test]
    fn truncation_set_empty_for_bernstein() {
        // f_n = sqrt2 cos(n theta - arg q) keeps |f_n| <= sqrt2
        let w = build_weight(WeightSpec::Bernstein { s: vec![5.0, -4.0] }).unwrap();
        let t = recurrence_coefficients(&w, 8).unwrap();
        for n in 1..=8 {
            let set = truncation_set(&w, &t, n, 1.5).unwrap();
            assert!(set.is_empty(), "n={n}");
        }
    }

    #[test]
    fn truncation_set_jacobi_11_sane() {
        let w = build_weight(WeightSpec::Jacobi {
            alpha: 1.0,
            beta: 1.0,
        })
        .unwrap();
        let t = recurrence_coefficients(&w, 10).unwrap();
        let set = truncation_set(&w, &t, 10, 1.5).unwrap();
        let meas = set.rho_measure();
        assert!((0.0..=1.0).contains(&meas), "measure {meas}");
        for pair in set.intervals.windows(2) {
            assert!(pair[0].1 < pair[1].0, "intervals overlap");
        }
    }

    #[test]
    fn corrections_vanish_on_empty_set() {
        let (w, t) = cheb();
        let c = correction_terms(&w, &t, 6, 1.5, TOL, PANELS).unwrap();
        assert_eq!(c.correction_e, 0.0);
        assert_eq!(c.correction_f, 0.0);
    }

    #[test]
    fn corrections_nonnegative_when_set_nonempty() {
        let w = build_weight(WeightSpec::Jacobi {
            alpha: 1.0,
            beta: 1.0,
        })
        .unwrap();
        let t = recurrence_coefficients(&w, 12).unwrap();
        let set = truncation_set(&w, &t, 12, 1.5).unwrap();
        let c = correction_terms(&w, &t, 12, 1.5, 1e-9, PANELS).unwrap();
        assert!(c.correction_e >= 0.0);
        assert!(c.correction_f >= -1e-12);
        if !set.is_empty() {
            assert!(c.correction_f > 0.0);
        }
    }

    #[test]
    fn condition_check_chebyshev_closed_forms() {
        // oracle for sup_f_pow at eps = 1/2: (1/pi) int_0^pi (2cos^2)^{3/2}
        // = 2^{3/2} * 4/(3 pi), constant in n by periodicity
        let (w, t) = cheb();
        let oracle = 2f64.powf(1.5) * 4.0 / (3.0 * PI);
        let s = condition_check(&w, &t, &[1, 2, 5, 10], 0.5, 1e-9, PANELS).unwrap();
        assert!(
            (s.sup_f_pow - oracle).abs() < 1e-8,
            "sup_f_pow={} oracle={oracle}",
            s.sup_f_pow
        );
        // w0 = 1 makes the E- and F-side integrals coincide
        assert!((s.sup_e_pow - s.sup_f_pow).abs() < 1e-8);
        assert!((s.sup_e_log - s.sup_f_log).abs() < 1e-8);
        assert!(!s.divergence_flag);
    }

    #[test]
    fn condition_check_legendre_bounded() {
        let w = build_weight(WeightSpec::Jacobi {
            alpha: 0.0,
            beta: 0.0,
        })
        .unwrap();
        let t = recurrence_coefficients(&w, 40).unwrap();
        let s = condition_check(&w, &t, &[10, 20, 40], 0.5, 1e-8, PANELS).unwrap();
        assert!(s.sup_f_pow.is_finite() && s.sup_f_pow > 0.0);
        assert!(!s.divergence_flag, "{s:?}");
    }

    #[test]
    fn report_assembles_and_serializes() {
        let (w, t) = cheb();
        let r = entropy_report(&w, &t, 4, 1.5, TOL, PANELS).unwrap();
        assert!((r.e - (LN_2 - 1.0)).abs() < 1e-9);
        assert!((r.e - r.f - r.g).abs() <= 2.0 * r.quad_error + 1e-12);
        assert_eq!(r.g, 0.0);
        assert_eq!(r.szego_const, 0.0);
        assert_eq!(r.delta_measure, 0.0);
        let row = r.csv_row();
        assert_eq!(row.split(',').count(), 11);
        assert_eq!(
            EntropyReport::CSV_HEADER.split(',').count(),
            row.split(',').count()
        );
        let json = serde_json::to_value(&r).unwrap();
        assert!(json.get("E").is_some());
        assert!(json.get("correction_E").is_some());
    }
}
