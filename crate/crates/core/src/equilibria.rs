//! Radial equilibria `f0(|p|)` normalized to unit mass, and perturbation
//! profiles.

use crate::error::{domain, Result};
use crate::relkin::{k2_scaled, lorentz};
use std::f64::consts::PI;

/// Temperatures below this are accepted but flagged.
pub const LOW_THETA: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Equilibrium {
    /// Maxwell-Juttner, `exp(-sqrt(1 + p^2) / theta)` up to normalization.
    Juttner { theta: f64, norm: f64 },
    /// `c (1 - (p / P)^2)^4` on `[0, P]`.
    Compact { support: f64, norm: f64 },
}

impl Equilibrium {
    pub fn juttner(theta: f64) -> Result<Self> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(domain(format!("temperature must be positive, got {theta}")));
        }
        // exp(1/theta) has been absorbed into the scaled Bessel function.
        let norm = 4.0 * PI * theta * k2_scaled(1.0 / theta)?;
        Ok(Equilibrium::Juttner { theta, norm })
    }

    pub fn compact(support: f64) -> Result<Self> {
        if !(support > 0.0) || !support.is_finite() {
            return Err(domain(format!("support radius must be positive, got {support}")));
        }
        // 4 pi c P^3 int_0^1 u^2 (1 - u^2)^4 du = 1 and the integral is 128/3465.
        let norm = 3465.0 / (512.0 * PI * support.powi(3));
        Ok(Equilibrium::Compact { support, norm })
    }

    pub fn theta(&self) -> Option<f64> {
        match *self {
            Equilibrium::Juttner { theta, .. } => Some(theta),
            Equilibrium::Compact { .. } => None,
        }
    }

    pub fn low_temperature(&self) -> bool {
        matches!(*self, Equilibrium::Juttner { theta, .. } if theta < LOW_THETA)
    }

    /// Upper end of the momentum support, if bounded.
    pub fn support(&self) -> Option<f64> {
        match *self {
            Equilibrium::Juttner { .. } => None,
            Equilibrium::Compact { support, .. } => Some(support),
        }
    }

    /// Characteristic momentum, used to scale semi-infinite quadrature maps.
    pub fn momentum_scale(&self) -> f64 {
        match *self {
            Equilibrium::Juttner { theta, .. } => (theta * (2.0 + theta)).sqrt(),
            Equilibrium::Compact { support, .. } => 0.5 * support,
        }
    }

    pub fn value(&self, p: f64) -> f64 {
        match *self {
            Equilibrium::Juttner { theta, norm } => {
                let g = lorentz(p);
                (-(p * p) / (theta * (1.0 + g))).exp() / norm
            }
            Equilibrium::Compact { support, norm } => {
                if p >= support {
                    0.0
                } else {
                    let u = p / support;
                    norm * (1.0 - u * u).powi(4)
                }
            }
        }
    }

    /// `-f0'(p)`, nonnegative for both families.
    pub fn neg_derivative(&self, p: f64) -> f64 {
        match *self {
            Equilibrium::Juttner { theta, .. } => p / (theta * lorentz(p)) * self.value(p),
            Equilibrium::Compact { support, norm } => {
                if p >= support {
                    0.0
                } else {
                    let u = p / support;
                    8.0 * norm * p / (support * support) * (1.0 - u * u).powi(3)
                }
            }
        }
    }

    pub fn derivative(&self, p: f64) -> f64 {
        -self.neg_derivative(p)
    }
}

/// Radial perturbation profile `amp exp(-p^2 / width^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    pub width: f64,
    pub amplitude: f64,
}

impl Profile {
    pub fn gaussian(width: f64, amplitude: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() || !amplitude.is_finite() {
            return Err(domain(format!("bad profile width {width} or amplitude {amplitude}")));
        }
        Ok(Profile { width, amplitude })
    }

    pub fn value(&self, p: f64) -> f64 {
        let u = p / self.width;
        self.amplitude * (-u * u).exp()
    }

    pub fn momentum_scale(&self) -> f64 {
        self.width
    }
}

impl Default for Profile {
    fn default() -> Self {
        Profile { width: 1.0, amplitude: 1.0 }
    }
}
