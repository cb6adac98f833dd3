//! Numerical integration: adaptive Gauss-Kronrod on finite and mapped
//! semi-infinite intervals, and Filon-type rules for `f(x) e^{i w x}`.

mod filon;
mod gk;

pub use filon::{integrate_oscillatory, FilonSamples};
pub use gk::{integrate_adaptive, Scalar};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    pub fn target(&self, value_norm: f64) -> f64 {
        self.abs.max(self.rel * value_norm)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-9, rel: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_error: f64,
    pub evaluations: usize,
}

/// `int_a^b f`, split into `panels` equal pieces before adaptive refinement.
pub fn integrate_finite<T: Scalar, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<QuadResult<T>> {
    integrate_adaptive(f, &[a, b], tol)
}

/// `int_a^b f` with the initial partition `a = x_0 < ... < x_n = b` of `n`
/// equal panels.
pub fn integrate_panels<T: Scalar, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    tol: Tolerance,
) -> Result<QuadResult<T>> {
    let n = panels.max(1);
    let pts: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    integrate_adaptive(f, &pts, tol)
}

/// `int_a^inf f` through `x = a + scale u / (1 - u)`.
pub fn integrate_semi_infinite<T: Scalar, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    scale: f64,
    tol: Tolerance,
) -> Result<QuadResult<T>> {
    if !(scale > 0.0) || !a.is_finite() {
        return Err(domain(format!("semi-infinite map needs finite a and scale > 0, got {a}, {scale}")));
    }
    let g = |u: f64| {
        let w = 1.0 - u;
        let x = a + scale * u / w;
        if !x.is_finite() {
            return T::zero();
        }
        let y = f(x);
        y.scale(scale / (w * w))
    };
    integrate_adaptive(g, &[0.0, 1.0], tol)
}
