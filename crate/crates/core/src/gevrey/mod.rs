//! Derivative recurrences and bounds for the large-frequency factors of the
//! transformed kernels, and finite-order Gevrey decay certificates.
//!
//! `f(w) = artanh(Kv/(L w))` and `g(w) = (L w/K) f(w) - v` are differentiated
//! through exact rational coefficient tables rather than numerically.

mod bounds;
mod certificate;
mod coeffs;
mod derivs;
mod partitions;
mod verify;

pub use bounds::{
    c_sum_bounds, d_sum_bounds, g_l1_bound, g_l1_closed_forms, g_l1_norm, g_l1_quadrature, leibniz_product_check,
    sup_bounds_check, InversePower, LeibnizReport, SumRow, SupReport, SupRow, GL1,
};
pub use certificate::{gevrey_decay_check, gevrey_decay_check_fn, CertificateRow, DecayCertificate};
pub use coeffs::{c_coeffs, c_table_sequence, d_coeffs, d_table_sequence, CoeffTable, Family};
pub use derivs::{f_derivative, g_derivative};
pub use partitions::{partition_bound, partition_counts, PartitionBound};
pub use verify::{appendix_battery, chained_difference_error, richardson_first_difference, Battery, Check, Margin};

use crate::error::{domain, Result};

/// Largest derivative order the closed forms are evaluated at.
pub const MAX_ORDER: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GevreyParams {
    pub k: f64,
    pub l: f64,
    pub v: f64,
    /// Integer shift in the derivative bounds `delta^(m0+m) (m0+m)!`.
    pub m0: usize,
    radius: f64,
}

impl GevreyParams {
    pub fn new(k: f64, l: f64, v: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) || !(l > 0.0 && l.is_finite()) {
            return Err(domain(format!("K and L must be positive, got K = {k}, L = {l}")));
        }
        if !(0.0..1.0).contains(&v) {
            return Err(domain(format!("v must lie in [0, 1), got {v}")));
        }
        Ok(Self {
            k,
            l,
            v,
            m0: 1,
            radius: 2f64.sqrt() * k / l,
        })
    }

    pub fn with_m0(mut self, m0: usize) -> Self {
        self.m0 = m0;
        self
    }

    /// `R = sqrt(2) K / L`.
    pub fn radius(&self) -> f64 {
        self.radius
    }
}
