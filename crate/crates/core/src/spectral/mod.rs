//! Kernels of the linearized mode equation `rho = alpha + beta * rho`, their
//! transforms, and the stability thresholds.
//!
//! A mode is labelled by `kappa` (`|k| / L` on the torus, `|xi|` in free
//! space) and the interaction sign (`+1` plasma, `-1` gravitational).

mod dispersion;
mod kernels;
mod laplace;
mod threshold;

pub use dispersion::{brent, find_y0, sup_re_laplace_beta};
pub use kernels::{alpha_direct, alpha_hat, alpha_via_inverse, beta_direct, beta_hat, beta_via_inverse};
pub use laplace::{
    decay_moment, laplace_beta, laplace_beta_boundary, laplace_beta_halfplane, laplace_beta_imag,
    laplace_beta_real,
};
pub use threshold::{
    threshold, threshold_astro, threshold_astro_by_parts, threshold_plasma, threshold_plasma_by_parts,
    ThresholdReport,
};

use crate::equilibria::{Equilibrium, Profile};
use crate::error::{domain, Result};
use crate::quadrature::{integrate_finite, integrate_semi_infinite, QuadResult, Scalar, Tolerance};

/// Default accuracy for kernel and transform integrals.
pub const KERNEL_TOL: Tolerance = Tolerance::new(1e-16, 1e-13);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interaction {
    Plasma,
    Gravitational,
}

impl Interaction {
    pub fn from_sign(sigma: i32) -> Result<Self> {
        match sigma {
            1 => Ok(Interaction::Plasma),
            -1 => Ok(Interaction::Gravitational),
            s => Err(domain(format!("interaction sign must be +1 or -1, got {s}"))),
        }
    }

    pub fn sigma(self) -> f64 {
        match self {
            Interaction::Plasma => 1.0,
            Interaction::Gravitational => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec {
    pub kappa: f64,
    pub interaction: Interaction,
    pub equilibrium: Equilibrium,
    pub profile: Profile,
}

impl ModeSpec {
    pub fn new(kappa: f64, interaction: Interaction, equilibrium: Equilibrium, profile: Profile) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(domain(format!("kappa must be positive, got {kappa}")));
        }
        Ok(ModeSpec { kappa, interaction, equilibrium, profile })
    }

    /// Mode `k` on the torus of side `length`.
    pub fn torus(k: [i64; 3], length: f64, interaction: Interaction, equilibrium: Equilibrium, profile: Profile) -> Result<Self> {
        if k == [0, 0, 0] {
            return Err(domain("the zero mode carries no dynamics"));
        }
        if !(length > 0.0) {
            return Err(domain(format!("torus side must be positive, got {length}")));
        }
        let norm = (k.iter().map(|&c| (c * c) as f64).sum::<f64>()).sqrt();
        Self::new(norm / length, interaction, equilibrium, profile)
    }

    pub fn sigma(&self) -> f64 {
        self.interaction.sigma()
    }
}

/// `int_lower^{support} f(p) dp` over the equilibrium's momentum range.
pub(crate) fn momentum_integral<T: Scalar>(
    eq: &Equilibrium,
    f: impl Fn(f64) -> T,
    lower: f64,
    tol: Tolerance,
) -> Result<QuadResult<T>> {
    match eq.support() {
        Some(s) if lower >= s => Ok(QuadResult { value: T::zero(), abs_error: 0.0, evaluations: 0 }),
        Some(s) => integrate_finite(f, lower, s, tol),
        None => integrate_semi_infinite(f, lower, eq.momentum_scale(), tol),
    }
}
