//! Fixed Gauss rules: Legendre (via Newton on the recurrence) and
//! Chebyshev (closed form).

use std::f64::consts::PI;

/// Interval a rule lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// [-1, 1]
    MinusOneOne,
    /// [0, pi]
    ZeroPi,
}

/// Nodes and weights of a fixed quadrature rule.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    /// Abscissas, strictly increasing, inside the open domain.
    pub nodes: Vec<f64>,
    /// Positive weights.
    pub weights: Vec<f64>,
    pub domain: Domain,
}

impl QuadratureRule {
    /// Plain weighted sum `sum_i w_i f(x_i)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Legendre polynomial P_n and its derivative at x, by the three-term
/// recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// n-point Gauss-Legendre rule on [-1, 1].
///
/// Exact for polynomials of degree <= 2n - 1. Nodes are the roots of P_n,
/// found by Newton iteration from the Chebyshev-angle initial guess; weights
/// are 2 / ((1 - x^2) P_n'(x)^2).
pub fn gauss_legendre_rule(n_points: usize) -> QuadratureRule {
    assert!(n_points >= 1, "gauss_legendre_rule needs n_points >= 1");
    let n = n_points;
    if n == 1 {
        return QuadratureRule {
            nodes: vec![0.0],
            weights: vec![2.0],
            domain: Domain::MinusOneOne,
        };
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n / 2;
    for i in 0..n.div_ceil(2) {
        // classical initial guess for the i-th positive-side root
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p2, d2) = legendre_with_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // the guess above walks from the largest root downwards
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[half] = 0.0;
        let (_, dp) = legendre_with_derivative(n, 0.0);
        weights[half] = 2.0 / (dp * dp);
    }
    QuadratureRule {
        nodes,
        weights,
        domain: Domain::MinusOneOne,
    }
}

/// n-point Gauss-Chebyshev rule on [-1, 1].
///
/// Nodes cos((2k-1) pi / 2n), all weights pi/n. Dividing the weights by pi
/// makes the rule exact for integrals against the Chebyshev density
/// rho(x) = 1/(pi sqrt(1-x^2)) up to polynomial degree 2n - 1.
pub fn gauss_chebyshev_rule(n_points: usize) -> QuadratureRule {
    assert!(n_points >= 1, "gauss_chebyshev_rule needs n_points >= 1");
    let n = n_points;
    let w = PI / n as f64;
    let mut nodes: Vec<f64> = (1..=n)
        .map(|k| ((2 * k - 1) as f64 * PI / (2.0 * n as f64)).cos())
        .collect();
    nodes.reverse(); // increasing
    QuadratureRule {
        nodes,
        weights: vec![w; n],
        domain: Domain::MinusOneOne,
    }
}
