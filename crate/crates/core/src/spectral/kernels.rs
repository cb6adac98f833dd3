use super::{ModeSpec, KERNEL_TOL};
use crate::error::Result;
use crate::quadrature::{integrate_oscillatory, integrate_panels, integrate_semi_infinite, QuadResult, Tolerance};
use crate::relkin::{lorentz, p_of_v, v_of_p};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `sin(w) / w`.
fn sinc(w: f64) -> f64 {
    if w.abs() < 0.5 {
        let w2 = w * w;
        let mut term = 1.0f64;
        let mut sum = 1.0;
        let mut n = 1.0;
        while term.abs() > 1e-18 {
            term *= -w2 / ((2.0 * n) * (2.0 * n + 1.0));
            sum += term;
            n += 1.0;
        }
        sum
    } else {
        w.sin() / w
    }
}

/// `cos(w) / w - sin(w) / w^2`, the derivative of `sinc`.
fn dsinc(w: f64) -> f64 {
    if w.abs() < 0.5 {
        // sum_{n>=1} (-1)^n 2n w^{2n-1} / (2n+1)!
        let w2 = w * w;
        let mut fact = 6.0; // (2n+1)!
        let mut pow = w; // w^{2n-1}
        let mut sum = 0.0;
        let mut n = 1.0;
        loop {
            let term = 2.0 * n * pow / fact;
            sum += if (n as i64) % 2 == 1 { -term } else { term };
            if term.abs() < 1e-18 * sum.abs().max(1e-300) {
                break;
            }
            n += 1.0;
            pow *= w2;
            fact *= (2.0 * n) * (2.0 * n + 1.0);
        }
        sum
    } else {
        w.cos() / w - w.sin() / (w * w)
    }
}

/// `int_0^{v_max} weight(p(v)) gamma^3 kern(w v) dv` with panels sized to the
/// oscillation frequency `w`.
fn speed_integral(weight: impl Fn(f64) -> f64, kern: fn(f64) -> f64, w: f64, v_max: f64, tol: Tolerance) -> Result<QuadResult<f64>> {
    let f = |v: f64| {
        let g2 = 1.0 / ((1.0 - v) * (1.0 + v));
        let g = g2.sqrt();
        let p = v * g;
        if !p.is_finite() {
            return 0.0;
        }
        weight(p) * g2 * g * kern(w * v)
    };
    let panels = 1 + (w.abs() * v_max / PI).ceil() as usize;
    integrate_panels(f, 0.0, v_max, panels, tol)
}

fn v_max_of(mode: &ModeSpec) -> Result<f64> {
    Ok(match mode.equilibrium.support() {
        Some(s) => v_of_p(s)?.value(),
        None => 1.0,
    })
}

/// Free-streaming kernel `alpha(t) = 4 pi int p^2 h0(p) sinc(2 pi kappa v t) dp`.
pub fn alpha_direct(mode: &ModeSpec, t: f64) -> Result<QuadResult<f64>> {
    let w = 2.0 * PI * mode.kappa * t;
    let prof = mode.profile;
    let r = speed_integral(|p| p * p * prof.value(p), sinc, w, 1.0, KERNEL_TOL)?;
    Ok(QuadResult { value: 4.0 * PI * r.value, abs_error: 4.0 * PI * r.abs_error, evaluations: r.evaluations })
}

/// Response kernel
/// `beta(t) = (8 pi sigma / kappa) int p^2 (-f0'(p)) [cos W / W - sin W / W^2] dp`,
/// with `W = 2 pi kappa v t`.
pub fn beta_direct(mode: &ModeSpec, t: f64) -> Result<QuadResult<f64>> {
    let w = 2.0 * PI * mode.kappa * t;
    let eq = mode.equilibrium;
    let r = speed_integral(|p| p * p * eq.neg_derivative(p), dsinc, w, v_max_of(mode)?, KERNEL_TOL)?;
    let c = 8.0 * PI * mode.sigma() / mode.kappa;
    Ok(QuadResult { value: c * r.value, abs_error: c.abs() * r.abs_error, evaluations: r.evaluations })
}

/// Fourier transform of `alpha` in time, supported on `|y| < kappa`.
pub fn alpha_hat(mode: &ModeSpec, y: f64) -> Result<f64> {
    let u = y.abs() / mode.kappa;
    if u >= 1.0 {
        return Ok(0.0);
    }
    let prof = mode.profile;
    let lower = p_of_v(u)?;
    let r = integrate_semi_infinite(|p| p * lorentz(p) * prof.value(p), lower, prof.momentum_scale(), KERNEL_TOL)?;
    Ok(2.0 * PI / mode.kappa * r.value)
}

/// `int_{P(u)}^inf (1 + p^2) (-f0') dp`.
pub(crate) fn tail_weight(mode: &ModeSpec, u: f64) -> Result<f64> {
    if u >= 1.0 {
        return Ok(0.0);
    }
    let eq = mode.equilibrium;
    let lower = p_of_v(u)?;
    Ok(super::momentum_integral(&eq, |p| (1.0 + p * p) * eq.neg_derivative(p), lower, KERNEL_TOL)?.value)
}

/// Fourier transform of `beta` in time; purely imaginary and odd in `y`.
pub fn beta_hat(mode: &ModeSpec, y: f64) -> Result<Complex64> {
    Ok(Complex64::new(0.0, beta_hat_im(mode, y)?))
}

pub(crate) fn beta_hat_im(mode: &ModeSpec, y: f64) -> Result<f64> {
    let u = y.abs() / mode.kappa;
    if u >= 1.0 {
        return Ok(0.0);
    }
    let k = mode.kappa;
    Ok(4.0 * PI * mode.sigma() / (k * k * k) * y * tail_weight(mode, u)?)
}

/// `alpha(t)` from its transform, `2 int_0^kappa alpha_hat(y) cos(2 pi y t) dy`.
pub fn alpha_via_inverse(mode: &ModeSpec, t: f64, tol: Tolerance) -> Result<QuadResult<f64>> {
    let f = |y: f64| alpha_hat(mode, y).unwrap_or(f64::NAN);
    let r = integrate_oscillatory(f, 2.0 * PI * t, 0.0, mode.kappa, tol)?;
    Ok(QuadResult { value: 2.0 * r.value.re, abs_error: 2.0 * r.abs_error, evaluations: r.evaluations })
}

/// `beta(t)` from its transform, `-2 int_0^kappa Im beta_hat(y) sin(2 pi y t) dy`.
pub fn beta_via_inverse(mode: &ModeSpec, t: f64, tol: Tolerance) -> Result<QuadResult<f64>> {
    let f = |y: f64| beta_hat_im(mode, y).unwrap_or(f64::NAN);
    let r = integrate_oscillatory(f, 2.0 * PI * t, 0.0, mode.kappa, tol)?;
    Ok(QuadResult { value: -2.0 * r.value.im, abs_error: 2.0 * r.abs_error, evaluations: r.evaluations })
}
