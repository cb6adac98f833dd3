//! `L[beta](s)` on the closed right half-plane, `s = x + 2 pi i y`.

use super::kernels::{beta_hat_im, tail_weight};
use super::{momentum_integral, ModeSpec, KERNEL_TOL};
use crate::error::{domain, Result};
use crate::quadrature::{integrate_adaptive, Tolerance};
use crate::relkin::{f_cap_complex, f_cap_gap, lorentz, p_of_v, v_of_p};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Below this offset the principal-value integrand uses its Taylor limit.
const PV_TAYLOR: f64 = 1e-4;

/// Splits the momentum integral at `P(u)` when the point lies inside the
/// support, so that the logarithmic singularity sits on an endpoint.
fn split_integral<T: crate::quadrature::Scalar>(
    mode: &ModeSpec,
    f: impl Fn(f64) -> T + Copy,
    u: f64,
) -> Result<T> {
    let eq = mode.equilibrium;
    if u > 0.0 && u < 1.0 {
        let ps = p_of_v(u)?;
        let inner_end = eq.support().map_or(ps, |s| s.min(ps));
        let inner = integrate_adaptive(f, &[0.0, 0.5 * inner_end, inner_end], KERNEL_TOL)?.value;
        let outer = momentum_integral(&eq, f, ps, KERNEL_TOL)?.value;
        Ok(inner.add(outer))
    } else {
        Ok(momentum_integral(&eq, f, 0.0, KERNEL_TOL)?.value)
    }
}

fn odd_sign(y: f64) -> f64 {
    if y > 0.0 {
        1.0
    } else if y < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `L[beta](2 pi i y)` for `|y| >= kappa`, where it is real.
fn real_branch(mode: &ModeSpec, u: f64) -> Result<f64> {
    let eq = mode.equilibrium;
    let f = |p: f64| {
        let v = match v_of_p(p) {
            Ok(v) => v,
            Err(_) => return f64::NAN,
        };
        let g = lorentz(p);
        f_cap_gap(u, v.value(), (u - 1.0) + v.gap()) * g * g * eq.neg_derivative(p)
    };
    let r = momentum_integral(&eq, f, 0.0, KERNEL_TOL)?;
    Ok(4.0 * mode.sigma() / (mode.kappa * mode.kappa) * r.value)
}

/// `int_0^inf v^n (1 + p^2) (-f0'(p)) dp`, the coefficients of the large-`y`
/// expansion of `L[beta]`.
pub fn decay_moment(mode: &ModeSpec, n: i32) -> Result<f64> {
    let eq = mode.equilibrium;
    let f = |p: f64| {
        let g = lorentz(p);
        (p / g).powi(n) * g * g * eq.neg_derivative(p)
    };
    Ok(momentum_integral(&eq, f, 0.0, KERNEL_TOL)?.value)
}

/// `L[beta](x + 2 pi i y)` for `x > 0`.
pub fn laplace_beta_halfplane(mode: &ModeSpec, x: f64, y: f64) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(domain(format!("half-plane evaluation needs x > 0, got x = {x}, y = {y}")));
    }
    let k = mode.kappa;
    let z = Complex64::new(y / k, -x / (2.0 * PI * k));
    let eq = mode.equilibrium;
    let f = move |p: f64| {
        let g = lorentz(p);
        f_cap_complex(z, p / g).unwrap_or(Complex64::new(f64::NAN, 0.0)) * (g * g * eq.neg_derivative(p))
    };
    let r = split_integral(mode, f, y.abs() / k)?;
    Ok(r * (4.0 * mode.sigma() / (k * k)))
}

/// `L[beta](2 pi i y)` as the boundary value of the half-plane formula,
/// `Re = (4 sigma / kappa^2) int [u artanh|v/u| - v] (1 + p^2)(-f0') dp`,
/// `Im = (2 pi sigma / kappa^2) u int_{P(u)}^inf (1 + p^2)(-f0') dp`.
pub fn laplace_beta_boundary(mode: &ModeSpec, y: f64) -> Result<Complex64> {
    if !y.is_finite() {
        return Err(domain("frequency must be finite"));
    }
    let k = mode.kappa;
    let u = y.abs() / k;
    if u >= 1.0 {
        return Ok(Complex64::new(real_branch(mode, u)?, 0.0));
    }
    let eq = mode.equilibrium;
    let f = move |p: f64| {
        let g = lorentz(p);
        let v = p / g;
        let kern = if u == 0.0 {
            -v
        } else if v < u {
            f_cap_gap(u, v, u - v)
        } else if v > u {
            u * (u / v).atanh() - v
        } else {
            0.0
        };
        kern * g * g * eq.neg_derivative(p)
    };
    let re = 4.0 * mode.sigma() / (k * k) * split_integral(mode, f, u)?;
    let im = 2.0 * PI * mode.sigma() / (k * k) * u * tail_weight(mode, u)?;
    Ok(Complex64::new(re, im * odd_sign(y)))
}

/// `L[beta](2 pi i y)` from the transform of `beta`: for `|y| < kappa` the
/// real part is the principal-value convolution of `beta_hat` with `1/tau`.
pub fn laplace_beta_imag(mode: &ModeSpec, y: f64) -> Result<Complex64> {
    if !y.is_finite() {
        return Err(domain("frequency must be finite"));
    }
    let k = mode.kappa;
    let ya = y.abs();
    if ya >= k {
        return Ok(Complex64::new(real_branch(mode, ya / k)?, 0.0));
    }
    let b = |s: f64| beta_hat_im(mode, s).unwrap_or(f64::NAN);
    // b'(y) via the derivative of the lower limit of the tail integral.
    let u = ya / k;
    let ps = p_of_v(u)?;
    let g = lorentz(ps);
    let amp = 4.0 * PI * mode.sigma() / (k * k * k);
    let db = amp * (tail_weight(mode, u)? - u * g.powi(5) * mode.equilibrium.neg_derivative(ps));
    let pv = |tau: f64| (b(ya - tau) - b(ya + tau)) / tau;
    let mut pts = vec![PV_TAYLOR];
    if k - ya > PV_TAYLOR {
        pts.push(k - ya);
    }
    pts.push(ya + k);
    let tol = Tolerance::new(1e-15, 1e-12);
    let tail = integrate_adaptive(pv, &pts, tol)?.value;
    let re = (tail - 2.0 * db * PV_TAYLOR) / (2.0 * PI);
    let im = 0.5 * b(ya);
    Ok(Complex64::new(re, im * odd_sign(y)))
}

/// `L[beta](x + 2 pi i y)` on the closed half-plane; `x = 0` uses the
/// boundary formula.
pub fn laplace_beta(mode: &ModeSpec, x: f64, y: f64) -> Result<Complex64> {
    if x == 0.0 {
        laplace_beta_boundary(mode, y)
    } else {
        laplace_beta_halfplane(mode, x, y)
    }
}

/// `L[beta](s)` at real `s = x >= 0`.
pub fn laplace_beta_real(mode: &ModeSpec, x: f64) -> Result<f64> {
    Ok(laplace_beta(mode, x, 0.0)?.re)
}
