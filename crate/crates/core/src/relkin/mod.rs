//! Relativistic kinematics and the special functions the kernels need.
//!
//! Speeds are carried together with their gap to light speed, `1 - v`, which
//! stays accurate where `v` itself has rounded to 1.

mod bessel;

pub use bessel::{k0, k0_scaled, k1, k1_scaled, k2, k2_scaled};

use crate::error::{domain, Result};
use num_complex::Complex64;

/// A speed in units of c with its complementary gap `1 - v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Velocity {
    value: f64,
    gap: f64,
}

impl Velocity {
    pub fn value(self) -> f64 {
        self.value
    }

    /// `1 - v`, accurate to relative rounding even when `v` rounds to 1.
    pub fn gap(self) -> f64 {
        self.gap
    }
}

/// Lorentz factor `sqrt(1 + p^2)`.
pub fn lorentz(p: f64) -> f64 {
    1f64.hypot(p)
}

/// Speed of a particle with momentum magnitude `p` (units m c).
pub fn v_of_p(p: f64) -> Result<Velocity> {
    if !(p >= 0.0) || !p.is_finite() {
        return Err(domain(format!("momentum magnitude must be finite and >= 0, got {p}")));
    }
    let g = lorentz(p);
    Ok(Velocity {
        value: p / g,
        gap: 1.0 / (g * (g + p)),
    })
}

/// Momentum magnitude of a particle with speed `v` in `[0, 1)`.
pub fn p_of_v(v: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&v) {
        return Err(domain(format!("speed must lie in [0, 1), got {v}")));
    }
    Ok(v / ((1.0 - v) * (1.0 + v)).sqrt())
}

/// `x artanh(v / x) - v` for `x > v >= 0`.
pub fn f_cap(x: f64, v: f64) -> Result<f64> {
    if !(v >= 0.0) || !(x > v) || !x.is_finite() {
        return Err(domain(format!("need x > v >= 0, got x = {x}, v = {v}")));
    }
    Ok(f_cap_gap(x, v, x - v))
}

/// `x artanh(v / x) - v` given an accurate value of `x - v`.
pub(crate) fn f_cap_gap(x: f64, v: f64, x_minus_v: f64) -> f64 {
    let r = v / x;
    if r < 0.5 {
        let r2 = r * r;
        let mut term = r2;
        let mut sum = 0.0f64;
        let mut k = 1.0;
        while term > 1e-18 * sum.max(r2) {
            sum += term / (2.0 * k + 1.0);
            term *= r2;
            k += 1.0;
        }
        v * sum
    } else {
        // artanh(r) = ln((1 + r) / (1 - r)) / 2 with 1 - r = (x - v) / x.
        0.5 * x * ((x + v) / x_minus_v).ln() - v
    }
}

/// Principal branch of `artanh` with cuts on `(-inf, -1]` and `[1, inf)`.
pub fn arctanh_complex(z: Complex64) -> Result<Complex64> {
    let (x, y) = (z.re, z.im);
    if y == 0.0 && x.abs() >= 1.0 {
        return Err(domain(format!("artanh evaluated on its branch cut at {x}")));
    }
    let ax = x.abs();
    let re = 0.25 * (4.0 * ax / ((1.0 - ax) * (1.0 - ax) + y * y)).ln_1p();
    let im = 0.5 * (2.0 * y).atan2((1.0 - x) * (1.0 + x) - y * y);
    Ok(Complex64::new(re.copysign(x), im))
}

/// `z artanh(v / z) - v` for complex `z` off the cut.
pub fn f_cap_complex(z: Complex64, v: f64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(domain("z must be nonzero"));
    }
    let w = Complex64::new(v, 0.0) / z;
    if w.norm() < 0.5 {
        let w2 = w * w;
        let mut term = w2;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut k = 1.0;
        while term.norm() > 1e-18 * sum.norm().max(w2.norm()) {
            sum += term / (2.0 * k + 1.0);
            term *= w2;
            k += 1.0;
        }
        Ok(sum * v)
    } else {
        Ok(z * arctanh_complex(w)? - v)
    }
}
