//! Unitary orthogonality weights on [-1, 1] and their trigonometric
//! companions w0(x) = pi sqrt(1-x^2) w(x).
//!
//! A built [`Weight`] always integrates to one; the raw mass is kept so the
//! Bernstein closed forms can be rescaled consistently. Classification into
//! the Szego class is a numeric proxy: the endpoint-refined integral of
//! |log w0| against the Chebyshev density must stop growing under dyadic
//! refinement.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_adaptive, IntegralResult, DEFAULT_MAX_PANELS};

/// Chebyshev (equilibrium) density rho(x) = 1/(pi sqrt(1-x^2)), the unit
/// weight every other weight is measured against.
pub fn chebyshev_rho(x: f64) -> f64 {
    1.0 / (PI * (1.0 - x * x).sqrt())
}

/// Declarative description of a weight, the unit the CLI consumes as JSON:
/// `{"kind":"chebyshev"}`, `{"kind":"jacobi","alpha":0.0,"beta":0.0}`,
/// `{"kind":"bernstein","S":[5.0,-4.0]}` (coefficients in increasing
/// degree), `{"kind":"tabulated","w0":[...]}` (samples of w0 at Chebyshev
/// points of the second kind, starting at x = 1).
///
/// Tabulated interpolation is spectrally accurate for w0 smooth in x.
/// Samples of a w0 that merely touches zero at the endpoints (Jacobi-like
/// square-root behavior) interpolate with tiny negative dips there, which
/// the clamp turns into spurious zero stretches: such weights may be
/// conservatively classified outside the Szego class. Use the dedicated
/// jacobi kind for those.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightSpec {
    Chebyshev,
    Jacobi {
        alpha: f64,
        beta: f64,
    },
    Bernstein {
        #[serde(rename = "S")]
        s: Vec<f64>,
    },
    Tabulated {
        w0: Vec<f64>,
    },
}

/// Minimum sample count for the tabulated kind.
pub const MIN_TABULATED_SAMPLES: usize = 33;

/// Outcome of the Szego-condition test.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SzegoDiagnostic {
    /// True when the integral of |log w0| rho converged under refinement.
    pub finite: bool,
    /// The integral itself; `None` is the divergence sentinel.
    pub integral_of_abs_log: Option<f64>,
}

#[derive(Debug, Clone)]
enum WeightKind {
    Chebyshev,
    Jacobi { alpha: f64, beta: f64 },
    Bernstein { s: Vec<f64> },
    Tabulated { interp: Barycentric },
}

/// A unitary weight together with its trigonometric companion.
#[derive(Debug, Clone)]
pub struct Weight {
    spec: WeightSpec,
    kind: WeightKind,
    /// Mass of the raw, pre-normalization weight.
    mass: f64,
    szego: SzegoDiagnostic,
}

impl Weight {
    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    /// Mass of the raw weight before normalization.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn szego_flag(&self) -> bool {
        self.szego.finite
    }

    pub fn szego_diagnostic(&self) -> SzegoDiagnostic {
        self.szego
    }

    pub fn is_chebyshev(&self) -> bool {
        matches!(self.kind, WeightKind::Chebyshev)
    }

    /// True when the weight is even in x, which forces all recurrence
    /// centers a_k to vanish.
    pub fn is_symmetric(&self) -> bool {
        match &self.kind {
            WeightKind::Chebyshev => true,
            WeightKind::Jacobi { alpha, beta } => alpha == beta,
            WeightKind::Bernstein { s } => s.iter().skip(1).step_by(2).all(|&c| c == 0.0),
            WeightKind::Tabulated { .. } => false,
        }
    }

    /// The unitary weight w(x), for x strictly inside (-1, 1).
    pub fn eval_w(&self, x: f64) -> f64 {
        chebyshev_rho(x) * self.eval_w0(x)
    }

    /// The trigonometric companion w0(x) = pi sqrt(1-x^2) w(x).
    pub fn eval_w0(&self, x: f64) -> f64 {
        self.w0_at_theta(x.clamp(-1.0, 1.0).acos())
    }

    /// w0(cos theta), evaluated without forming 1 - cos theta (stable at the
    /// endpoints). All theta-space quadratures go through this.
    pub fn w0_at_theta(&self, theta: f64) -> f64 {
        match &self.kind {
            WeightKind::Chebyshev => 1.0,
            WeightKind::Jacobi { alpha, beta } => {
                // w0 = pi 2^(a+b+1) sin^(2a+1)(t/2) cos^(2b+1)(t/2) / mass
                // with a = alpha + 1/2, b = beta + 1/2
                let (s, c) = (0.5 * theta).sin_cos();
                let ea = 2.0 * alpha + 1.0;
                let eb = 2.0 * beta + 1.0;
                PI * 2f64.powf(alpha + beta + 1.0) * s.powf(ea) * c.powf(eb) / self.mass
            }
            WeightKind::Bernstein { s } => 1.0 / (self.mass * eval_poly(s, theta.cos())),
            WeightKind::Tabulated { interp } => interp.eval(theta.cos()).max(0.0) / self.mass,
        }
    }
}

fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Barycentric interpolation on Chebyshev points of the second kind,
/// x_j = cos(j pi / (K-1)) for j = 0..K.
#[derive(Debug, Clone)]
struct Barycentric {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl Barycentric {
    fn new(values: Vec<f64>) -> Self {
        let k = values.len();
        let nodes = (0..k)
            .map(|j| (j as f64 * PI / (k - 1) as f64).cos())
            .collect();
        Barycentric { nodes, values }
    }

    fn eval(&self, x: f64) -> f64 {
        let k = self.nodes.len();
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..k {
            let dx = x - self.nodes[j];
            if dx == 0.0 {
                return self.values[j];
            }
            // second-kind weights: (-1)^j, halved at the two ends
            let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == k - 1 {
                w *= 0.5;
            }
            let t = w / dx;
            num += t * self.values[j];
            den += t;
        }
        num / den
    }
}

/// Raw (pre-normalization) w0, i.e. pi sqrt(1-x^2) times the raw weight, as
/// a function of theta.
fn raw_w0_theta(spec: &WeightSpec, interp: Option<&Barycentric>, theta: f64) -> f64 {
    match spec {
        WeightSpec::Chebyshev => 1.0,
        WeightSpec::Jacobi { alpha, beta } => {
            let (s, c) = (0.5 * theta).sin_cos();
            PI * 2f64.powf(alpha + beta + 1.0)
                * s.powf(2.0 * alpha + 1.0)
                * c.powf(2.0 * beta + 1.0)
        }
        WeightSpec::Bernstein { s } => 1.0 / eval_poly(s, theta.cos()),
        WeightSpec::Tabulated { .. } => interp.unwrap().eval(theta.cos()).max(0.0),
    }
}

/// Validate a spec, integrate the raw weight (in theta), record its mass,
/// rescale to unit mass, and run the Szego-condition test.
pub fn build_weight(spec: WeightSpec) -> Result<Weight> {
    match &spec {
        WeightSpec::Chebyshev => {}
        WeightSpec::Jacobi { alpha, beta } => {
            if *alpha <= -1.0 {
                return Err(Error::NotIntegrable(*alpha));
            }
            if *beta <= -1.0 {
                return Err(Error::NotIntegrable(*beta));
            }
        }
        WeightSpec::Bernstein { s } => {
            if s.is_empty() || s.iter().all(|&c| c == 0.0) {
                return Err(Error::InvalidSpec("bernstein S has no coefficients".into()));
            }
            // positivity proxy: a 1024-point Chebyshev grid on [-1,1]
            for k in 0..1024 {
                let x = ((2 * k + 1) as f64 * PI / 2048.0).cos();
                let v = eval_poly(s, x);
                if v <= 0.0 {
                    return Err(Error::PositivityViolation(format!(
                        "S({x:.6}) = {v:.6e} <= 0"
                    )));
                }
            }
        }
        WeightSpec::Tabulated { w0 } => {
            if w0.len() < MIN_TABULATED_SAMPLES {
                return Err(Error::TooFewSamples {
                    min: MIN_TABULATED_SAMPLES,
                    got: w0.len(),
                });
            }
            if w0.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::PositivityViolation(
                    "tabulated w0 has negative or non-finite samples".into(),
                ));
            }
        }
    }

    let interp = match &spec {
        WeightSpec::Tabulated { w0 } => Some(Barycentric::new(w0.clone())),
        _ => None,
    };

    // mass of the raw weight: int w_raw dx = (1/pi) int_0^pi w0_raw(cos t) dt
    let mass = match &spec {
        WeightSpec::Chebyshev => 1.0,
        _ => {
            let f = |t: f64| raw_w0_theta(&spec, interp.as_ref(), t) / PI;
            integrate_adaptive(f, 0.0, PI, &[], 1e-12, DEFAULT_MAX_PANELS)?.value
        }
    };
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::PositivityViolation(format!(
            "raw weight mass {mass} is not a positive number"
        )));
    }

    let kind = match &spec {
        WeightSpec::Chebyshev => WeightKind::Chebyshev,
        WeightSpec::Jacobi { alpha, beta } => WeightKind::Jacobi {
            alpha: *alpha,
            beta: *beta,
        },
        WeightSpec::Bernstein { s } => WeightKind::Bernstein { s: s.clone() },
        WeightSpec::Tabulated { .. } => WeightKind::Tabulated {
            interp: interp.unwrap(),
        },
    };

    let mut weight = Weight {
        spec,
        kind,
        mass,
        szego: SzegoDiagnostic {
            finite: true,
            integral_of_abs_log: Some(0.0),
        },
    };
    weight.szego = check_szego_condition(&weight);
    Ok(weight)
}

/// Number of dyadic refinement levels in the Szego-condition test.
const SZEGO_DEPTH: u32 = 20;
/// Growth between the two deepest levels above which we declare divergence.
const SZEGO_GROWTH_LIMIT: f64 = 1e-3;

/// Decide whether log(w0) is rho-integrable by refining the integral of
/// |log w0| rho toward the endpoints and watching for growth.
pub fn check_szego_condition(weight: &Weight) -> SzegoDiagnostic {
    let integrand = |t: f64| {
        let w0 = weight.w0_at_theta(t);
        if w0 <= 0.0 {
            f64::INFINITY
        } else {
            w0.ln().abs() / PI
        }
    };

    // adaptive integration over a dyadically graded mesh; refinement depth k
    // adds the slices [pi 2^-(k+1), pi 2^-k] at both ends. A slice whose
    // integral cannot converge (infinite integrand inside) counts as +inf.
    let slice = |a: f64, b: f64| -> f64 {
        integrate_adaptive(integrand, a, b, &[], 1e-9, 512)
            .map(|r| r.value)
            .unwrap_or(f64::INFINITY)
    };

    let mut level_totals = Vec::with_capacity(SZEGO_DEPTH as usize);
    let mut acc = slice(PI / 4.0, PI / 2.0) + slice(PI / 2.0, 3.0 * PI / 4.0);
    for k in 2..=SZEGO_DEPTH {
        let lo = PI / 2f64.powi(k as i32 + 1);
        let hi = PI / 2f64.powi(k as i32);
        acc += slice(lo, hi) + slice(PI - hi, PI - lo);
        level_totals.push(acc);
    }
    let last = *level_totals.last().unwrap();
    let prev = level_totals[level_totals.len() - 2];

    if !last.is_finite() || (last - prev).abs() > SZEGO_GROWTH_LIMIT {
        return SzegoDiagnostic {
            finite: false,
            integral_of_abs_log: None,
        };
    }
    SzegoDiagnostic {
        finite: true,
        integral_of_abs_log: Some(last),
    }
}

/// The Szego constant S(rho, w) = int log(w0) rho dx, always <= 0 for a
/// unitary weight, with equality only for w = rho.
pub fn szego_constant(weight: &Weight, abs_tol: f64) -> Result<f64> {
    if !weight.szego_flag() {
        return Err(Error::SzegoDivergent);
    }
    if weight.is_chebyshev() {
        return Ok(0.0);
    }
    let r = szego_constant_integral(weight, abs_tol)?;
    Ok(r.value)
}

pub(crate) fn szego_constant_integral(weight: &Weight, abs_tol: f64) -> Result<IntegralResult> {
    let f = |t: f64| {
        let w0 = weight.w0_at_theta(t);
        if w0 <= 0.0 {
            f64::NEG_INFINITY
        } else {
            w0.ln() / PI
        }
    };
    integrate_adaptive(f, 0.0, PI, &[], abs_tol, DEFAULT_MAX_PANELS)
}
