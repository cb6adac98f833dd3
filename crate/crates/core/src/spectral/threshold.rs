//! Critical wavenumbers: a plasma mode is stable when `kappa^2` exceeds
//! `threshold_plasma`, a gravitational one when it exceeds `threshold_astro`.

use super::{momentum_integral, Interaction};
use crate::equilibria::Equilibrium;
use crate::error::Result;
use crate::quadrature::Tolerance;
use crate::relkin::{f_cap_gap, lorentz, v_of_p};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub interaction: Interaction,
    /// Critical `kappa^2`.
    pub value: f64,
    pub abs_error: f64,
    pub low_temperature: bool,
}

impl ThresholdReport {
    pub fn kappa_crit(&self) -> f64 {
        self.value.sqrt()
    }
}

fn report(eq: &Equilibrium, interaction: Interaction, r: crate::quadrature::QuadResult<f64>) -> ThresholdReport {
    ThresholdReport {
        interaction,
        value: 4.0 * r.value,
        abs_error: 4.0 * r.abs_error,
        low_temperature: eq.low_temperature(),
    }
}

/// `4 int p [2 artanh v(p) - v(p)] f0(p) dp`.
pub fn threshold_plasma(eq: &Equilibrium, tol: Tolerance) -> Result<ThresholdReport> {
    let f = |p: f64| p * (2.0 * p.asinh() - p / lorentz(p)) * eq.value(p);
    Ok(report(eq, Interaction::Plasma, momentum_integral(eq, f, 0.0, tol)?))
}

/// `4 int [artanh v - v] (1 + p^2) (-f0') dp`, equal to [`threshold_plasma`]
/// after integration by parts.
pub fn threshold_plasma_by_parts(eq: &Equilibrium, tol: Tolerance) -> Result<ThresholdReport> {
    let f = |p: f64| {
        let v = v_of_p(p).map(|v| (v.value(), v.gap())).unwrap_or((f64::NAN, f64::NAN));
        f_cap_gap(1.0, v.0, v.1) * (1.0 + p * p) * eq.neg_derivative(p)
    };
    Ok(report(eq, Interaction::Plasma, momentum_integral(eq, f, 0.0, tol)?))
}

/// `4 int [sqrt(1 + p^2) + p^2 / sqrt(1 + p^2)] f0(p) dp`.
pub fn threshold_astro(eq: &Equilibrium, tol: Tolerance) -> Result<ThresholdReport> {
    let f = |p: f64| {
        let g = lorentz(p);
        (g + p * p / g) * eq.value(p)
    };
    Ok(report(eq, Interaction::Gravitational, momentum_integral(eq, f, 0.0, tol)?))
}

/// `4 int v (1 + p^2) (-f0') dp`, the by-parts form of [`threshold_astro`].
pub fn threshold_astro_by_parts(eq: &Equilibrium, tol: Tolerance) -> Result<ThresholdReport> {
    let f = |p: f64| p * lorentz(p) * eq.neg_derivative(p);
    Ok(report(eq, Interaction::Gravitational, momentum_integral(eq, f, 0.0, tol)?))
}

pub fn threshold(eq: &Equilibrium, interaction: Interaction, tol: Tolerance) -> Result<ThresholdReport> {
    match interaction {
        Interaction::Plasma => threshold_plasma(eq, tol),
        Interaction::Gravitational => threshold_astro(eq, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const TOL: Tolerance = Tolerance::new(0.0, 1e-12);

    #[test]
    fn cold_limits() {
        // f0 -> Gaussian of variance theta: the plasma threshold tends to
        // 4 int p^2 f0 = 1/pi and the gravitational one to 1 / (pi theta).
        let theta = 1e-4;
        let eq = Equilibrium::juttner(theta).unwrap();
        let p = threshold_plasma(&eq, TOL).unwrap();
        assert!(p.low_temperature);
        assert_relative_eq!(p.value * PI, 1.0, max_relative = 1e-3);
        let a = threshold_astro(&eq, TOL).unwrap().value;
        assert_relative_eq!(a * PI * theta, 1.0, max_relative = 1e-3);
    }

    #[test]
    fn hot_limit_of_astro_threshold() {
        // Ultra-relativistic: f0 ~ e^{-p/theta} / (8 pi theta^3), so the
        // threshold tends to 8 int p f0 = 1 / (pi theta).
        let theta = 200.0;
        let eq = Equilibrium::juttner(theta).unwrap();
        let a = threshold_astro(&eq, TOL).unwrap().value;
        assert_relative_eq!(a * PI * theta, 1.0, max_relative = 1e-2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn by_parts_identities(theta in 0.01f64..10.0, support in 0.1f64..5.0) {
            for eq in [Equilibrium::juttner(theta).unwrap(), Equilibrium::compact(support).unwrap()] {
                let a = threshold_plasma(&eq, TOL).unwrap().value;
                let b = threshold_plasma_by_parts(&eq, TOL).unwrap().value;
                prop_assert!((a - b).abs() <= 1e-9 * a);
                let a = threshold_astro(&eq, TOL).unwrap().value;
                let b = threshold_astro_by_parts(&eq, TOL).unwrap().value;
                prop_assert!((a - b).abs() <= 1e-9 * a);
                prop_assert!(a > 0.0 && b > 0.0);
            }
        }
    }
}
