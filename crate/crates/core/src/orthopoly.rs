//! Orthonormal polynomial families: recurrence coefficients by the
//! Stieltjes procedure on a discretized inner product, point evaluation,
//! leading coefficients, and zeros through the Jacobi matrix.
//!
//! The recurrence convention is
//!
//! ```text
//! b_{k+1} p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x),   p_0 = 1,
//! ```
//!
//! so `p_n` is orthonormal against the unitary weight and the leading
//! coefficient is gamma_n = 1/(b_1 b_2 ... b_n).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre_rule, Domain, QuadratureRule};
use crate::weights::Weight;

/// Residual limit for the orthonormality certificate on the build grid.
pub const CERTIFICATE_LIMIT: f64 = 1e-8;
/// Default cap on the degree; desk-scale asymptotics need n <~ 200.
pub const DEFAULT_DEGREE_CAP: usize = 200;

/// Three-term recurrence coefficients of an orthonormal family.
#[derive(Debug, Clone)]
pub struct RecurrenceTable {
    /// a[k] = a_k for k = 0 .. n_max-1.
    a: Vec<f64>,
    /// b[k-1] = b_k for k = 1 .. n_max.
    b: Vec<f64>,
    n_max: usize,
    /// Largest |<p_i, p_j> - delta_ij| observed on the build grid.
    cert_residual: f64,
}

/// Sorted zeros of p_n, all strictly inside (-1, 1).
#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub n: usize,
    pub zeros: Vec<f64>,
}

impl RecurrenceTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Recurrence center a_k, 0 <= k < n_max.
    pub fn a(&self, k: usize) -> f64 {
        self.a[k]
    }

    /// Off-diagonal b_k, 1 <= k <= n_max.
    pub fn b(&self, k: usize) -> f64 {
        self.b[k - 1]
    }

    pub fn certificate_residual(&self) -> f64 {
        self.cert_residual
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::DegreeOutOfRange {
                n,
                n_max: self.n_max,
            });
        }
        Ok(())
    }

    /// p_n(x) by the forward recurrence.
    pub fn evaluate_pn(&self, n: usize, x: f64) -> Result<f64> {
        self.check_degree(n)?;
        let mut prev = 0.0;
        let mut cur = 1.0;
        for k in 0..n {
            let next = ((x - self.a[k]) * cur - if k == 0 { 0.0 } else { self.b[k - 1] } * prev)
                / self.b[k];
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// Leading coefficient gamma_n = 1/(b_1 ... b_n) > 0.
    pub fn leading_coefficient(&self, n: usize) -> Result<f64> {
        Ok(self.log_leading_coefficient(n)?.exp())
    }

    /// log(gamma_n), safe from overflow for large n.
    pub fn log_leading_coefficient(&self, n: usize) -> Result<f64> {
        self.check_degree(n)?;
        assert!(n >= 1, "gamma_n is defined for n >= 1");
        Ok(-self.b[..n].iter().map(|&b| b.ln()).sum::<f64>())
    }

    /// Zeros of p_n: eigenvalues of the n x n symmetric tridiagonal Jacobi
    /// matrix with diagonal a_0..a_{n-1} and off-diagonal b_1..b_{n-1}.
    pub fn zeros(&self, n: usize) -> Result<ZeroSet> {
        self.check_degree(n)?;
        assert!(n >= 1, "zeros are defined for n >= 1");
        let mut diag = self.a[..n].to_vec();
        let mut off: Vec<f64> = self.b[..n.saturating_sub(1)].to_vec();
        let mut zeros = tridiagonal_eigenvalues(&mut diag, &mut off)?;
        zeros.sort_by(f64::total_cmp);
        Ok(ZeroSet { n, zeros })
    }

    /// The probability density of nu_n: x -> p_n(x)^2 w(x).
    pub fn nu_n_density<'a>(
        &'a self,
        weight: &'a Weight,
        n: usize,
    ) -> Result<impl Fn(f64) -> f64 + 'a> {
        self.check_degree(n)?;
        Ok(move |x: f64| {
            let p = self
                .evaluate_pn(n, x)
                .expect("degree checked at construction");
            p * p * weight.eval_w(x)
        })
    }
}

/// Composite Gauss-Legendre rule on [0, pi]: panels uniform at the
/// oscillation scale of degree-n_max polynomials in the middle and graded
/// geometrically toward both endpoints, so that endpoint algebraic
/// singularities of w0 (exponents from the weight spec) are resolved to
/// machine precision without starving the oscillatory center.
fn theta_rule(weight: &Weight, n_max: usize, target_points: usize) -> QuadratureRule {
    // grading depth per side: enough that the skipped sliver carries less
    // than ~1e-16 of mass even for the weakest admissible exponent
    let exponent = |side_alpha: f64| -> f64 { 2.0 * side_alpha + 1.0 };
    let (exp_left, exp_right) = match weight.spec() {
        crate::weights::WeightSpec::Jacobi { alpha, beta } => (exponent(*alpha), exponent(*beta)),
        _ => (0.0, 0.0),
    };
    let depth = |e: f64| -> usize {
        let e1 = (e + 1.0).max(0.05);
        ((16.0 * std::f64::consts::LN_10 / (std::f64::consts::LN_2 * e1)).ceil() as usize).max(40)
    };
    let (dl, dr) = (depth(exp_left), depth(exp_right));

    // central panels no wider than ~8 pi / n_max keep products of two
    // degree-n_max polynomials well inside the per-panel rule's resolution
    let central = (n_max / 8).max(8);
    let h = PI / central as f64;

    let mut edges: Vec<f64> = Vec::with_capacity(dl + dr + central);
    for k in (1..=dl).rev() {
        edges.push(h / 2f64.powi(k as i32));
    }
    // the sliver [0, h 2^-dl] and its mirror are dropped; their mass is
    // below resolution by the choice of depth
    let inner = ((PI - 2.0 * h) / h).ceil() as usize;
    for j in 0..=inner {
        edges.push(h + (PI - 2.0 * h) * j as f64 / inner as f64);
    }
    for k in 1..=dr {
        edges.push(PI - h / 2f64.powi(k as i32));
    }

    let panels = edges.len() - 1;
    let per_panel = target_points.div_ceil(panels);
    let base = gauss_legendre_rule(per_panel.max(16));

    let mut nodes = Vec::with_capacity(panels * base.nodes.len());
    let mut weights = Vec::with_capacity(panels * base.nodes.len());
    for pair in edges.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        let half = 0.5 * (pair[1] - pair[0]);
        for (&t, &gw) in base.nodes.iter().zip(&base.weights) {
            nodes.push(mid + half * t);
            weights.push(gw * half);
        }
    }
    QuadratureRule {
        nodes,
        weights,
        domain: Domain::ZeroPi,
    }
}

/// Discrete inner-product measure: theta nodes and lambda weights with
/// the weight's w0/pi folded in.
fn discretize_theta(weight: &Weight, n_max: usize, target_points: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = theta_rule(weight, n_max, target_points);
    let lambdas = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&theta, &gw)| gw * weight.w0_at_theta(theta) / PI)
        .collect();
    (rule.nodes, lambdas)
}

/// Build the recurrence table for degrees 0..=n_max by the Stieltjes
/// procedure with full reorthogonalization on the discrete grid.
///
/// Fails with a loss-of-orthogonality error when the certificate residual
/// exceeds [`CERTIFICATE_LIMIT`], which signals an insufficient
/// discretization or an invalid weight.
pub fn recurrence_coefficients(weight: &Weight, n_max: usize) -> Result<RecurrenceTable> {
    assert!(n_max >= 1, "n_max must be at least 1");
    let target = 4096usize.max(16 * n_max);
    let (thetas, lambdas) = discretize_theta(weight, n_max, target);
    let xs: Vec<f64> = thetas.iter().map(|&t| t.cos()).collect();
    let npts = xs.len();

    let dot = |u: &[f64], v: &[f64]| -> f64 {
        u.iter()
            .zip(v)
            .zip(&lambdas)
            .map(|((&ui, &vi), &li)| ui * vi * li)
            .sum()
    };

    let mut a = Vec::with_capacity(n_max);
    let mut b = Vec::with_capacity(n_max);
    // p holds the orthonormal vectors p_0 .. p_{n_max} sampled on the grid
    let mut p: Vec<Vec<f64>> = Vec::with_capacity(n_max + 1);

    let mass = lambdas.iter().sum::<f64>();
    p.push(vec![1.0 / mass.sqrt(); npts]);

    for k in 0..n_max {
        let pk = &p[k];
        let ak = xs
            .iter()
            .zip(pk)
            .zip(&lambdas)
            .map(|((&x, &v), &l)| x * v * v * l)
            .sum::<f64>();
        a.push(ak);

        let mut r: Vec<f64> = xs
            .iter()
            .zip(pk.iter())
            .map(|(&x, &v)| (x - ak) * v)
            .collect();
        if k > 0 {
            let bk = b[k - 1];
            for (ri, &v) in r.iter_mut().zip(&p[k - 1]) {
                *ri -= bk * v;
            }
        }
        // two rounds of full reorthogonalization keep the discrete Lanczos
        // vectors orthonormal out to large degree
        for _ in 0..2 {
            for q in &p {
                let c = dot(&r, q);
                for (ri, &qi) in r.iter_mut().zip(q) {
                    *ri -= c * qi;
                }
            }
        }
        let norm = dot(&r, &r).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::LossOfOrthogonality {
                residual: f64::INFINITY,
                limit: CERTIFICATE_LIMIT,
            });
        }
        b.push(norm);
        for ri in r.iter_mut() {
            *ri /= norm;
        }
        p.push(r);
    }

    // orthonormality certificate on the build grid
    let mut cert: f64 = 0.0;
    for i in 0..=n_max {
        for j in i..=n_max {
            let g = dot(&p[i], &p[j]);
            let target = if i == j { 1.0 } else { 0.0 };
            cert = cert.max((g - target).abs());
        }
    }
    if cert > CERTIFICATE_LIMIT {
        return Err(Error::LossOfOrthogonality {
            residual: cert,
            limit: CERTIFICATE_LIMIT,
        });
    }

    // the discrete p_0 is 1/sqrt(mass); for a unitary weight the mass is 1
    // up to discretization error, which the certificate budget covers
    Ok(RecurrenceTable {
        a,
        b,
        n_max,
        cert_residual: cert,
    })
}

/// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
/// algorithm, eigenvalues only.
///
/// `diag` has length n, `off` has length n-1. Both are consumed as
/// workspace.
fn tridiagonal_eigenvalues(diag: &mut [f64], off: &mut Vec<f64>) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    off.push(0.0); // sentinel slot e[n-1]
    let e = off;
    let d = diag;

    for l in 0..n {
        let mut iter = 0;
        loop {
            // find the first negligible off-diagonal at or after l
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::EigenNonConvergence);
            }
            // implicit shift from the leading 2x2 of the active block
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut restarted = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let bb = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // deflate and redo the sweep on the shrunk block
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    restarted = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;
            }
            if restarted {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d.to_vec())
}
