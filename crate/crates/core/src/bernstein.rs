//! Exact machinery for Bernstein weights w0 = 1/S with S a polynomial
//! positive on [-1, 1].
//!
//! The Fejer-Riesz factor q realizes S on the unit circle through
//! S(cos t) = |q(e^it)|^2 with every zero of q outside the closed disk and
//! q(0) > 0. From it come closed-form orthonormal polynomials, Blaschke
//! products, and contour-integral values of the split functionals F_n and
//! G_n that the quadrature route must reproduce.

use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::contour_integral_circle;

/// Guard band around the unit circle: a Laurent-lift root this close to
/// |z| = 1 means S vanishes somewhere on [-1, 1] and the factorization is
/// refused rather than guessed.
const CIRCLE_GUARD_BAND: f64 = 1e-8;

/// Spectral factor of a positive polynomial: q with real coefficients,
/// q(0) > 0, zeros outside the closed unit disk, and |q(e^it)|^2 equal to
/// the mass-normalized S(cos t).
#[derive(Debug, Clone)]
pub struct FejerRieszFactor {
    /// Coefficients of q in increasing degree.
    q_coeffs: Vec<f64>,
    /// Roots of q, all with modulus > 1.
    zeta: Vec<Complex64>,
    /// q(0) > 0.
    q0: f64,
}

impl FejerRieszFactor {
    pub fn degree(&self) -> usize {
        self.q_coeffs.len() - 1
    }

    /// Smallest degree n for which the closed-form machinery applies,
    /// i.e. the least n with 2n > deg q.
    pub fn min_valid_degree(&self) -> usize {
        self.degree() / 2 + 1
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.q_coeffs
    }

    pub fn roots(&self) -> &[Complex64] {
        &self.zeta
    }

    pub fn min_root_modulus(&self) -> f64 {
        self.zeta
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// q(z) by Horner.
    pub fn eval_q(&self, z: Complex64) -> Complex64 {
        self.q_coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// The reversed polynomial z^d q(1/z).
    fn eval_q_reversed(&self, z: Complex64) -> Complex64 {
        self.q_coeffs
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// The analytic branch of log q(z) on |z| < min |zeta|, real at z = 0.
    ///
    /// Computed factor by factor as log q0 + sum log(1 - z/zeta_j); each
    /// factor stays in the right half plane there, so the principal branch
    /// never jumps even when the full product winds past the negative axis.
    pub fn log_q(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(self.q0.ln(), 0.0);
        for &zeta in &self.zeta {
            acc += (Complex64::new(1.0, 0.0) - z / zeta).ln();
        }
        acc
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if 2 * n <= self.degree() {
            return Err(Error::DegreeBelowThreshold {
                n,
                threshold: self.degree() / 2,
            });
        }
        Ok(())
    }
}

/// Roots of a real-coefficient polynomial (increasing degree, nonzero
/// leading coefficient) by Durand-Kerner iteration with Newton polish.
///
/// Returns the roots and the last relative step size; multiple roots stall
/// the iteration at the sqrt(eps) conditioning floor, so callers widen
/// their classification bands by the achieved accuracy.
fn polynomial_roots(coeffs: &[f64]) -> Result<(Vec<Complex64>, f64)> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Ok((Vec::new(), 0.0));
    }
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|&c| c / lead).collect();

    let eval = |z: Complex64| -> Complex64 {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let eval_deriv = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (1..=deg).rev() {
            acc = acc * z + monic[k] * k as f64;
        }
        acc
    };

    // initial guesses on a circle of the Cauchy-bound scale, rotated off
    // the real axis so real-root symmetry cannot stall the iteration
    let bound = 1.0 + monic[..deg].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let radius = bound.min(2.0 * monic[0].abs().powf(1.0 / deg as f64).max(0.5));
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|i| {
            Complex64::from_polar(
                radius,
                2.0 * std::f64::consts::PI * i as f64 / deg as f64 + 0.7,
            )
        })
        .collect();

    let mut last_step = f64::INFINITY;
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let zi = roots[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom.norm() == 0.0 {
                // coincident iterates; nudge apart
                roots[i] += Complex64::new(1e-6, 1e-6);
                max_step = f64::INFINITY;
                continue;
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            max_step = max_step.max(step.norm() / (1.0 + roots[i].norm()));
        }
        last_step = max_step;
        if max_step < 1e-14 {
            break;
        }
    }
    if last_step.is_nan() || last_step >= 1e-6 {
        return Err(Error::PairingFailure(
            "root iteration did not converge".into(),
        ));
    }
    for z in roots.iter_mut() {
        for _ in 0..3 {
            let d = eval_deriv(*z);
            if d.norm() > 0.0 {
                *z -= eval(*z) / d;
            }
        }
    }

    // multiple roots stall both iterations at the sqrt(eps) conditioning
    // floor, scattered symmetrically around the true root: collapse each
    // cluster onto its centroid and re-polish with multiplicity-aware
    // Newton steps, which converge quadratically again
    let mut polished: Vec<Complex64> = Vec::with_capacity(deg);
    let mut used = vec![false; deg];
    for i in 0..deg {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut members = vec![roots[i]];
        for j in (i + 1)..deg {
            if !used[j] && (roots[j] - roots[i]).norm() <= 1e-6 * (1.0 + roots[i].norm()) {
                used[j] = true;
                members.push(roots[j]);
            }
        }
        let m = members.len();
        let mut c = members.iter().sum::<Complex64>() / m as f64;
        for _ in 0..50 {
            let d = eval_deriv(c);
            if d.norm() == 0.0 {
                break;
            }
            let step = eval(c) / d * m as f64;
            c -= step;
            if step.norm() <= 1e-15 * (1.0 + c.norm()) {
                break;
            }
        }
        polished.extend(std::iter::repeat_n(c, m));
    }
    Ok((polished, last_step))
}

/// Coefficients of the Laurent lift z^d S((z + 1/z)/2), a palindromic
/// polynomial of degree 2d whose roots pair as (zeta, 1/zeta).
fn laurent_lift(s_coeffs: &[f64]) -> Vec<f64> {
    let d = s_coeffs.len() - 1;
    let mut lift = vec![0.0; 2 * d + 1];
    for (k, &sk) in s_coeffs.iter().enumerate() {
        // s_k ((z + 1/z)/2)^k contributes s_k 2^-k C(k,j) z^(d-k+2j)
        let scale = sk / 2f64.powi(k as i32);
        let mut binom = 1.0;
        for j in 0..=k {
            lift[d - k + 2 * j] += scale * binom;
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
    }
    lift
}

/// Fejer-Riesz factorization of the positive polynomial S, rescaled by
/// sqrt(mass) so that the unitary Bernstein weight satisfies
/// w0 = 1/|q(e^it)|^2.
///
/// Pass `mass = 1` to factor the raw S itself.
pub fn fejer_riesz(s_coeffs: &[f64], mass: f64) -> Result<FejerRieszFactor> {
    assert!(mass > 0.0, "mass must be positive");
    let mut s: Vec<f64> = s_coeffs.to_vec();
    while s.len() > 1 && *s.last().unwrap() == 0.0 {
        s.pop();
    }
    if s.is_empty() || (s.len() == 1 && s[0] <= 0.0) {
        return Err(Error::PositivityViolation(
            "S must be positive on [-1, 1]".into(),
        ));
    }
    let d = s.len() - 1;
    let s_at_one: f64 = s.iter().sum();
    if s_at_one <= 0.0 {
        return Err(Error::PositivityViolation(format!(
            "S(1) = {s_at_one} <= 0"
        )));
    }

    if d == 0 {
        let q0 = (mass * s[0]).sqrt();
        return Ok(FejerRieszFactor {
            q_coeffs: vec![q0],
            zeta: Vec::new(),
            q0,
        });
    }

    let lift = laurent_lift(&s);
    let (roots, accuracy) = polynomial_roots(&lift)?;

    let band = CIRCLE_GUARD_BAND.max(100.0 * accuracy);
    let mut outside = Vec::with_capacity(d);
    for &z in &roots {
        let m = z.norm();
        if (m - 1.0).abs() <= band {
            return Err(Error::RootOnCircle(m));
        }
        if m > 1.0 {
            outside.push(z);
        }
    }
    if outside.len() != d {
        return Err(Error::PairingFailure(format!(
            "{} of {} lift roots outside the unit circle, expected {d}",
            outside.len(),
            roots.len()
        )));
    }

    // snap near-real roots onto the axis and force exact conjugate pairs,
    // so the expanded coefficients are real to machine precision
    for z in outside.iter_mut() {
        if z.im.abs() <= 1e-8 * (1.0 + z.norm()) {
            z.im = 0.0;
        }
    }
    let reals: Vec<Complex64> = outside.iter().copied().filter(|z| z.im == 0.0).collect();
    let upper: Vec<Complex64> = outside.iter().copied().filter(|z| z.im > 0.0).collect();
    let mut lower: Vec<Complex64> = outside.iter().copied().filter(|z| z.im < 0.0).collect();
    if upper.len() != lower.len() {
        return Err(Error::PairingFailure(format!(
            "complex roots do not pair: {} above vs {} below the axis",
            upper.len(),
            lower.len()
        )));
    }
    let mut paired = reals;
    for u in upper {
        let (k, _) = lower
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (u - a.conj()).norm().total_cmp(&(u - b.conj()).norm()))
            .expect("same count above and below");
        let partner = lower.swap_remove(k);
        let merged = (u + partner.conj()) / 2.0;
        paired.push(merged);
        paired.push(merged.conj());
    }
    let outside = paired;

    // q(z) = c prod (1 - z/zeta_j); the product over (1 - 1/zeta_j) is real
    // and positive because the zeta come in conjugate pairs with |zeta| > 1
    let prod_at_one = outside.iter().fold(Complex64::new(1.0, 0.0), |acc, &z| {
        acc * (Complex64::new(1.0, 0.0) - 1.0 / z)
    });
    if prod_at_one.re <= 0.0 || prod_at_one.im.abs() > 1e-8 * prod_at_one.re.abs() {
        return Err(Error::PairingFailure(format!(
            "factor value at z = 1 is not positive real: {prod_at_one}"
        )));
    }
    let c = (mass * s_at_one).sqrt() / prod_at_one.re;

    // expand the product into real coefficients
    let mut coeffs = vec![Complex64::new(c, 0.0)];
    for &zeta in &outside {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (j, &cj) in coeffs.iter().enumerate() {
            next[j] += cj;
            next[j + 1] -= cj / zeta;
        }
        coeffs = next;
    }
    let q_coeffs: Vec<f64> = coeffs.iter().map(|c| c.re).collect();
    let imag_leak = coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    let scale = q_coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
    if imag_leak > 1e-10 * scale {
        return Err(Error::PairingFailure(format!(
            "expanded factor has imaginary leakage {imag_leak:.3e}"
        )));
    }

    Ok(FejerRieszFactor {
        q0: q_coeffs[0],
        q_coeffs,
        zeta: outside,
    })
}

/// Closed-form orthonormal polynomial for the Bernstein weight:
/// p_n(cos t) = sqrt2 Re(e^{-int} q(e^{it})), valid for 2n > deg q.
pub fn bernstein_pn(factor: &FejerRieszFactor, n: usize, x: f64) -> Result<f64> {
    factor.check_degree(n)?;
    let theta = x.clamp(-1.0, 1.0).acos();
    let z = Complex64::from_polar(1.0, theta);
    let q = factor.eval_q(z);
    let rot = Complex64::from_polar(1.0, -(n as f64) * theta);
    Ok(2f64.sqrt() * (rot * q).re)
}

/// Blaschke product B_n(z) = z^{2n} q(1/z)/q(z), unimodular on |z| = 1 and
/// vanishing at the origin once 2n > deg q.
#[derive(Debug, Clone)]
pub struct BlaschkeProduct<'a> {
    factor: &'a FejerRieszFactor,
    n: usize,
}

impl<'a> BlaschkeProduct<'a> {
    pub fn new(factor: &'a FejerRieszFactor, n: usize) -> Self {
        BlaschkeProduct { factor, n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// B_n(z), written as z^{2n-d} (z^d q(1/z)) / q(z) so the origin is a
    /// regular point.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let d = self.factor.degree();
        let q = self.factor.eval_q(z);
        let scale = self
            .factor
            .coefficients()
            .iter()
            .map(|c| c.abs())
            .fold(0.0, f64::max)
            * (1.0 + z.norm()).powi(d as i32);
        if q.norm() <= 1e-14 * scale {
            return Err(Error::BlaschkePole);
        }
        let rev = self.factor.eval_q_reversed(z);
        Ok(z.powi(2 * self.n as i32 - d as i32) * rev / q)
    }
}

/// The exact split functional F_n for a Bernstein weight: log 2 - 1 for
/// every n above the degree threshold.
///
/// The defining contour integral is evaluated anyway and must come out as
/// 1 within 1e-10; anything else is reported as an error instead of being
/// absorbed.
pub fn exact_f(factor: &FejerRieszFactor, n: usize) -> Result<f64> {
    let integral = f_correction_integral(factor, n)?;
    if (integral - 1.0).abs() > 1e-10 {
        return Err(Error::ContourIdentity(integral));
    }
    Ok(LN_2 - 1.0)
}

/// The contour integral behind [`exact_f`]:
/// (1/2 pi i) \oint log(1 + B_n(z))/B_n(z) dz/z over |z| = 1/2.
///
/// This is the independent route to F_n = log 2 - integral; the quadrature
/// route must agree with it.
pub fn f_correction_integral(factor: &FejerRieszFactor, n: usize) -> Result<f64> {
    factor.check_degree(n)?;
    let b = BlaschkeProduct::new(factor, n);
    let g = |z: Complex64| {
        let w = b.eval(z).expect("q has no zeros inside the unit disk");
        log1p_over(w)
    };
    let mean = contour_integral_circle(g, 0.5, 64, 1e-12)?;
    Ok(mean.re)
}

/// log(1 + w)/w with the removable singularity at w = 0 filled in.
fn log1p_over(w: Complex64) -> Complex64 {
    if w.norm() < 1e-4 {
        // series: 1 - w/2 + w^2/3 - w^3/4, truncation below 1e-18
        let mut acc = Complex64::new(1.0, 0.0);
        acc -= w / 2.0;
        acc += w * w / 3.0;
        acc -= w * w * w / 4.0;
        acc
    } else {
        (Complex64::new(1.0, 0.0) + w).ln() / w
    }
}

/// The exact split functional G_n by the contour identity
/// G_n = -2 log q(0) - (1/2 pi i) \oint log(q(z)) B_n(1/z) dz/z,
/// integrated on a circle inside the analyticity annulus 1 < R < min|zeta|.
pub fn exact_g(factor: &FejerRieszFactor, n: usize) -> Result<f64> {
    let min_mod = factor.min_root_modulus();
    let radius = if min_mod.is_finite() {
        min_mod.sqrt().min(4.0)
    } else {
        1.5
    };
    exact_g_at_radius(factor, n, radius)
}

/// [`exact_g`] at an explicit contour radius; the value must not depend on
/// the radius anywhere inside the annulus.
pub fn exact_g_at_radius(factor: &FejerRieszFactor, n: usize, radius: f64) -> Result<f64> {
    factor.check_degree(n)?;
    assert!(
        radius > 1.0 && radius < factor.min_root_modulus(),
        "radius must satisfy 1 < R < min |zeta|"
    );
    let b = BlaschkeProduct::new(factor, n);
    let g = |z: Complex64| {
        let bn_inv = b.eval(1.0 / z).expect("1/z stays away from the roots of q");
        factor.log_q(z) * bn_inv
    };
    let mean = contour_integral_circle(g, radius, 64, 1e-13)?;
    Ok(-2.0 * factor.q0.ln() - mean.re)
}

/// Spread of E_n = exact_f + exact_g over a degree window; zero exactly
/// when the weight is the Chebyshev one.
#[derive(Debug, Clone, Copy)]
pub struct ProbeResult {
    pub max_spread: f64,
}

/// Probe for constant entropy: max_n |E_n - E_{n_lo}| over n in
/// [n_lo, n_hi]. A genuinely non-Chebyshev factor must show a positive
/// spread.
pub fn constant_entropy_probe(
    factor: &FejerRieszFactor,
    n_lo: usize,
    n_hi: usize,
) -> Result<ProbeResult> {
    factor.check_degree(n_lo)?;
    assert!(n_lo <= n_hi);
    let e_at = |n: usize| -> Result<f64> { Ok(exact_f(factor, n)? + exact_g(factor, n)?) };
    let base = e_at(n_lo)?;
    let mut max_spread = 0.0f64;
    for n in n_lo..=n_hi {
        max_spread = max_spread.max((e_at(n)? - base).abs());
    }
    Ok(ProbeResult { max_spread })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::recurrence_coefficients;
    use crate::quadrature::integrate_adaptive;
    use crate::weights::{build_weight, WeightSpec};
    use std::f64::consts::PI;

    fn factor_5_minus_4x() -> FejerRieszFactor {
        // mass 1/3 from the closed-form circle integral
        fejer_riesz(&[5.0, -4.0], 1.0 / 3.0).unwrap()
    }

    fn factor_25_minus_16x2() -> FejerRieszFactor {
        fejer_riesz(&[25.0, 0.0, -16.0], 1.0 / 15.0).unwrap()
    }

    #[test]
    fn constant_s_gives_constant_q() {
        let f = fejer_riesz(&[1.0], 1.0).unwrap();
        assert_eq!(f.degree(), 0);
        assert!((f.q0() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn factor_of_5_minus_4x() {
        // oracle: (2 - z)(2 - 1/z) = 5 - 4 (z + 1/z)/2, so qtilde = (2-z)/sqrt3
        let f = factor_5_minus_4x();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.roots().len(), 1);
        assert!((f.roots()[0] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!((f.q0() - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        let c: Vec<f64> = f.coefficients().to_vec();
        assert!((c[0] - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((c[1] + 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn factor_of_25_minus_16x2() {
        // oracle: (4 - z^2)(4 - 1/z^2) = 25 - 16 x^2 on the circle, and the
        // mass 1/15 comes out of (1/2pi) \oint dt / |4 - e^{2it}|^2
        let mass = integrate_adaptive(
            |t: f64| {
                let z2 = Complex64::from_polar(1.0, 2.0 * t);
                1.0 / (Complex64::new(4.0, 0.0) - z2).norm_sqr() / PI
            },
            0.0,
            PI,
            &[],
            1e-12,
            4096,
        )
        .unwrap()
        .value;
        assert!((mass - 1.0 / 15.0).abs() < 1e-12);

        let f = factor_25_minus_16x2();
        assert_eq!(f.degree(), 2);
        assert!((f.q0() - 4.0 / 15f64.sqrt()).abs() < 1e-12);
        let mut mods: Vec<f64> = f.roots().iter().map(|z| z.norm()).collect();
        mods.sort_by(f64::total_cmp);
        assert!((mods[0] - 2.0).abs() < 1e-10);
        assert!((mods[1] - 2.0).abs() < 1e-10);
    }

    // deg-1, deg-2 even, deg-3 odd product, and deg-2 with complex roots
    fn test_s_lists() -> Vec<Vec<f64>> {
        vec![
            vec![5.0, -4.0],
            vec![25.0, 0.0, -16.0],
            vec![125.0, -100.0, -80.0, 64.0],
            vec![4.0, -4.0, 4.0],
        ]
    }

    #[test]
    fn factorization_residual_on_circle() {
        // |qtilde(e^it)|^2 w0(cos t) = 1 on a 1024-point grid
        for s in test_s_lists() {
            let w = build_weight(WeightSpec::Bernstein { s: s.clone() }).unwrap();
            let f = fejer_riesz(&s, w.mass()).unwrap();
            let mut worst = 0.0f64;
            for k in 0..1024 {
                let t = PI * (k as f64 + 0.5) / 1024.0;
                let q = f.eval_q(Complex64::from_polar(1.0, t));
                let resid = (q.norm_sqr() * w.w0_at_theta(t) - 1.0).abs();
                worst = worst.max(resid);
            }
            assert!(worst <= 1e-9, "S={s:?}: residual {worst}");
        }
    }

    #[test]
    fn factor_of_odd_degree_product() {
        // S = (5 - 4x)(25 - 16x^2): the raw factor is (2 - z)(4 - z^2)
        let s = vec![125.0, -100.0, -80.0, 64.0];
        let raw = fejer_riesz(&s, 1.0).unwrap();
        assert_eq!(raw.degree(), 3);
        assert!((raw.q0() - 8.0).abs() < 1e-10);
        for root in raw.roots() {
            assert!((root.norm() - 2.0).abs() < 1e-9);
        }
        assert_eq!(raw.min_valid_degree(), 2);
        assert!(matches!(
            bernstein_pn(&raw, 1, 0.5),
            Err(Error::DegreeBelowThreshold { .. })
        ));
    }

    #[test]
    fn factor_with_complex_roots() {
        // S = 4(x^2 - x + 1) is positive on the whole line; the lift roots
        // form a conjugate pair off the real axis
        let s = vec![4.0, -4.0, 4.0];
        let w = build_weight(WeightSpec::Bernstein { s: s.clone() }).unwrap();
        let f = fejer_riesz(&s, w.mass()).unwrap();
        assert_eq!(f.roots().len(), 2);
        assert!(f.roots()[0].im.abs() > 0.1, "expected complex roots");
        assert!((f.roots()[0] - f.roots()[1].conj()).norm() < 1e-10);
        assert!(f.min_root_modulus() > 1.0);

        // the analytic log branch feeds exact_g; it must match the
        // quadrature route for the normalized weight
        let table = recurrence_coefficients(&w, 4).unwrap();
        let g2_quad = integrate_adaptive(
            |t: f64| {
                let w0 = w.w0_at_theta(t);
                let p = table.evaluate_pn(2, t.cos()).unwrap();
                w0.ln() * p * p * w0 / PI
            },
            0.0,
            PI,
            &[],
            1e-11,
            4096,
        )
        .unwrap()
        .value;
        let g2_exact = exact_g(&f, 2).unwrap();
        assert!(
            (g2_quad - g2_exact).abs() < 1e-9,
            "quad {g2_quad} vs exact {g2_exact}"
        );
        assert!((f_correction_integral(&f, 2).unwrap() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn vanishing_s_is_refused() {
        // S = (2x - 1)^2 vanishes at x = 1/2: the lift has a double root
        // pair on the circle at e^{+-i pi/3}
        let e = fejer_riesz(&[1.0, -4.0, 4.0], 1.0);
        assert!(matches!(e, Err(Error::RootOnCircle(_))), "{e:?}");
        // S vanishing exactly at the endpoint is caught by the S(1) check
        let e = fejer_riesz(&[1.0, -1.0], 1.0);
        assert!(matches!(e, Err(Error::PositivityViolation(_))), "{e:?}");
    }

    #[test]
    fn closed_form_pn_explicit_value() {
        // q = (2 - z)/sqrt3, n = 2, x = 0: direct complex arithmetic gives
        // -2 sqrt2/sqrt3
        let f = factor_5_minus_4x();
        let p = bernstein_pn(&f, 2, 0.0).unwrap();
        let oracle = -2.0 * 2f64.sqrt() / 3f64.sqrt();
        assert!((p - oracle).abs() < 1e-13, "p={p} oracle={oracle}");
    }

    #[test]
    fn closed_form_is_chebyshev_for_unit_s() {
        let f = fejer_riesz(&[1.0], 1.0).unwrap();
        for n in 1..=6 {
            for &t in &[0.25f64, 1.0, 2.8] {
                let p = bernstein_pn(&f, n, t.cos()).unwrap();
                let expect = 2f64.sqrt() * (n as f64 * t).cos();
                assert!((p - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn closed_form_below_threshold_is_refused() {
        let f = factor_25_minus_16x2();
        assert!(matches!(
            bernstein_pn(&f, 1, 0.3),
            Err(Error::DegreeBelowThreshold { .. })
        ));
    }

    #[test]
    fn closed_form_orthonormality_by_quadrature() {
        // int p_n^2 w dx = 1 for n = 1..8 with S = 5 - 4x
        let w = build_weight(WeightSpec::Bernstein { s: vec![5.0, -4.0] }).unwrap();
        let f = factor_5_minus_4x();
        for n in 1..=8 {
            let mass = integrate_adaptive(
                |t: f64| {
                    let p = bernstein_pn(&f, n, t.cos()).unwrap();
                    p * p * w.w0_at_theta(t) / PI
                },
                0.0,
                PI,
                &[],
                1e-11,
                4096,
            )
            .unwrap()
            .value;
            assert!((mass - 1.0).abs() < 1e-10, "n={n} mass={mass}");
        }
    }

    #[test]
    fn leading_coefficient_closed_form() {
        // gamma_n = 2^n q(0)/sqrt2 once the closed form is in force
        let w = build_weight(WeightSpec::Bernstein { s: vec![5.0, -4.0] }).unwrap();
        let table = recurrence_coefficients(&w, 8).unwrap();
        let f = factor_5_minus_4x();
        for n in 2..=8 {
            let expect = 2f64.powi(n as i32) * f.q0() / 2f64.sqrt();
            let got = table.leading_coefficient(n).unwrap();
            assert!(
                ((got - expect) / expect).abs() < 1e-10,
                "n={n}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn closed_form_matches_recurrence_pipeline() {
        // two independent constructions of the same polynomials
        for s in test_s_lists() {
            let w = build_weight(WeightSpec::Bernstein { s: s.clone() }).unwrap();
            let table = recurrence_coefficients(&w, 20).unwrap();
            let f = fejer_riesz(&s, w.mass()).unwrap();
            let mut worst = 0.0f64;
            for n in f.min_valid_degree()..=20 {
                for k in 0..200 {
                    let x = -0.995 + 1.99 * k as f64 / 199.0;
                    let a = bernstein_pn(&f, n, x).unwrap();
                    let b = table.evaluate_pn(n, x).unwrap();
                    worst = worst.max((a - b).abs());
                }
            }
            assert!(worst <= 1e-9, "S={s:?}: worst deviation {worst}");
        }
    }

    #[test]
    fn blaschke_unimodular_on_circle() {
        let f = factor_5_minus_4x();
        let b = BlaschkeProduct::new(&f, 3);
        for k in 0..64 {
            let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 64.0);
            let v = b.eval(z).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn blaschke_is_power_for_unit_q() {
        let f = fejer_riesz(&[1.0], 1.0).unwrap();
        let b = BlaschkeProduct::new(&f, 2);
        let z = Complex64::new(0.3, 0.4);
        assert!((b.eval(z).unwrap() - z.powi(4)).norm() < 1e-14);
    }

    #[test]
    fn blaschke_vanishes_at_origin_and_inverts() {
        let f = factor_25_minus_16x2();
        let b = BlaschkeProduct::new(&f, 2);
        assert!(b.eval(Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-300);
        // B_n(1/z) = 1/B_n(z) for real coefficients
        let z = Complex64::new(0.7, 0.1);
        let direct = b.eval(1.0 / z).unwrap();
        let inverted = 1.0 / b.eval(z).unwrap();
        assert!((direct - inverted).norm() < 1e-12);
    }

    #[test]
    fn blaschke_pole_at_root() {
        let f = factor_5_minus_4x();
        let b = BlaschkeProduct::new(&f, 1);
        assert!(matches!(
            b.eval(Complex64::new(2.0, 0.0)),
            Err(Error::BlaschkePole)
        ));
    }

    #[test]
    fn exact_f_values() {
        let cheb = fejer_riesz(&[1.0], 1.0).unwrap();
        assert!((exact_f(&cheb, 1).unwrap() - (LN_2 - 1.0)).abs() < 1e-15);
        let f = factor_5_minus_4x();
        for n in [1, 2, 5, 9] {
            let v = exact_f(&f, n).unwrap();
            assert!((v - (LN_2 - 1.0)).abs() < 1e-15);
            let integral = f_correction_integral(&f, n).unwrap();
            assert!((integral - 1.0).abs() < 1e-11, "n={n} integral={integral}");
        }
    }

    #[test]
    fn exact_g_chebyshev_is_zero() {
        let cheb = fejer_riesz(&[1.0], 1.0).unwrap();
        for n in 1..=4 {
            assert!(exact_g(&cheb, n).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn exact_g_tends_to_szego_constant_geometrically() {
        let f = factor_5_minus_4x();
        let limit = (0.75f64).ln(); // -2 log(2/sqrt3)
        let mut prev_gap = f64::INFINITY;
        for n in 2..=12 {
            let gap = (exact_g(&f, n).unwrap() - limit).abs();
            assert!(gap < prev_gap.max(1e-14), "n={n} gap={gap}");
            prev_gap = gap;
        }
        assert!((exact_g(&f, 12).unwrap() - limit).abs() <= 1e-8);
    }

    #[test]
    fn exact_g_radius_independence() {
        let f = factor_5_minus_4x();
        let m = f.min_root_modulus();
        let radii = [
            1.0 + 0.25 * (m - 1.0),
            1.0 + 0.5 * (m - 1.0),
            1.0 + 0.75 * (m - 1.0),
        ];
        let base = exact_g_at_radius(&f, 4, radii[0]).unwrap();
        for &r in &radii[1..] {
            let v = exact_g_at_radius(&f, 4, r).unwrap();
            assert!((v - base).abs() <= 1e-10, "radius {r}: {v} vs {base}");
        }
    }

    #[test]
    fn contour_route_matches_direct_quadrature_raw_convention() {
        // raw factor (mass 1) for S = 5 - 4x: q = 2 - z; the closed form
        // with q is orthonormal for the raw weight rho/S, and the contour
        // identity G_raw = -2 log q(0) - contour must match the direct
        // quadrature of log(w0_raw) p_1^2 w_raw.
        let q = fejer_riesz(&[5.0, -4.0], 1.0).unwrap();
        assert!((q.q0() - 2.0).abs() < 1e-12);
        let g_quad = integrate_adaptive(
            |t: f64| {
                let x = t.cos();
                let s = 5.0 - 4.0 * x;
                let p = bernstein_pn(&q, 1, x).unwrap();
                (1.0 / s).ln() * p * p * (1.0 / s) / PI
            },
            0.0,
            PI,
            &[],
            1e-11,
            4096,
        )
        .unwrap()
        .value;
        let b = BlaschkeProduct::new(&q, 1);
        let contour =
            contour_integral_circle(|z| q.log_q(z) * b.eval(1.0 / z).unwrap(), 1.5, 64, 1e-13)
                .unwrap();
        assert!(contour.im.abs() < 1e-12);
        let g_contour = -2.0 * q.q0().ln() - contour.re;
        assert!(
            (g_quad - g_contour).abs() < 1e-9,
            "quad {g_quad} vs contour {g_contour}"
        );
    }

    #[test]
    fn entropy_probe_spreads() {
        let cheb = fejer_riesz(&[1.0], 1.0).unwrap();
        assert!(constant_entropy_probe(&cheb, 2, 10).unwrap().max_spread <= 1e-12);

        let f1 = factor_5_minus_4x();
        let spread = constant_entropy_probe(&f1, 2, 10).unwrap().max_spread;
        assert!(spread > 1e-6, "spread {spread}");

        let f2 = factor_25_minus_16x2();
        let spread = constant_entropy_probe(&f2, 3, 10).unwrap().max_spread;
        assert!(spread > 1e-8, "spread {spread}");
    }
}
