//! Composite cubic Filon rule for `int_a^b f(x) e^{i w x} dx`.
//!
//! Each panel interpolates `f` at four equispaced nodes and integrates the
//! cubic against the exponential exactly. Equispaced nodes nest under
//! bisection, so refinement reuses every previous sample and the coarse
//! result comes for free as an error estimate.

use super::{QuadResult, Tolerance};
use crate::error::{domain, Error, Result};
use num_complex::Complex64;

const MAX_PANELS: usize = 1 << 20;

// Lagrange basis on t = -1, -1/3, 1/3, 1 as monomial coefficients.
const LAGRANGE: [[f64; 4]; 4] = [
    [-1.0 / 16.0, 1.0 / 16.0, 9.0 / 16.0, -9.0 / 16.0],
    [9.0 / 16.0, -27.0 / 16.0, -9.0 / 16.0, 27.0 / 16.0],
    [9.0 / 16.0, 27.0 / 16.0, -9.0 / 16.0, -27.0 / 16.0],
    [-1.0 / 16.0, -1.0 / 16.0, 9.0 / 16.0, 9.0 / 16.0],
];

/// `int_{-1}^{1} t^k e^{i theta t} dt` for `k = 0..3`.
fn moments(theta: f64) -> [Complex64; 4] {
    let mut mu = [Complex64::new(0.0, 0.0); 4];
    if theta.abs() < 2.0 {
        for (k, m) in mu.iter_mut().enumerate() {
            let mut term = Complex64::new(1.0, 0.0); // (i theta)^n / n!
            let mut n = 0usize;
            loop {
                if (k + n) % 2 == 0 {
                    *m += term * (2.0 / (k + n + 1) as f64);
                }
                n += 1;
                term *= Complex64::new(0.0, theta / n as f64);
                if term.norm() < 1e-18 {
                    break;
                }
            }
        }
    } else {
        let e = Complex64::new(0.0, theta).exp();
        let em = e.conj();
        let it = Complex64::new(0.0, theta);
        mu[0] = Complex64::new(2.0 * theta.sin() / theta, 0.0);
        for k in 1..4 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            mu[k] = (e - em * sign) / it - mu[k - 1] * (k as f64) / it;
        }
    }
    mu
}

fn weights(theta: f64) -> [Complex64; 4] {
    let mu = moments(theta);
    let mut w = [Complex64::new(0.0, 0.0); 4];
    for j in 0..4 {
        for k in 0..4 {
            w[j] += mu[k] * LAGRANGE[j][k];
        }
    }
    w
}

/// Envelope samples on `3 N + 1` equispaced points of `[a, b]`.
#[derive(Debug, Clone)]
pub struct FilonSamples {
    a: f64,
    b: f64,
    values: Vec<Complex64>,
}

impl FilonSamples {
    pub fn from_values(a: f64, b: f64, values: Vec<Complex64>) -> Result<Self> {
        if values.len() < 4 || (values.len() - 1) % 3 != 0 || !(b > a) {
            return Err(domain(format!(
                "Filon samples need 3N+1 points on a nonempty interval, got {} on [{a}, {b}]",
                values.len()
            )));
        }
        Ok(FilonSamples { a, b, values })
    }

    /// Abscissae for `panels` panels on `[a, b]`.
    pub fn nodes(a: f64, b: f64, panels: usize) -> Vec<f64> {
        let n = 3 * panels;
        (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
    }

    pub fn sample<T: Into<Complex64>>(f: impl Fn(f64) -> T, a: f64, b: f64, panels: usize) -> Result<Self> {
        let values = Self::nodes(a, b, panels.max(1)).into_iter().map(|x| f(x).into()).collect();
        Self::from_values(a, b, values)
    }

    pub fn panels(&self) -> usize {
        (self.values.len() - 1) / 3
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Abscissae that a bisection of every panel adds.
    pub fn refinement_nodes(&self) -> Vec<f64> {
        let n = self.values.len() - 1;
        let d = (self.b - self.a) / n as f64;
        (0..n).map(|i| self.a + (i as f64 + 0.5) * d).collect()
    }

    /// Interleave values at [`Self::refinement_nodes`].
    pub fn refine_with(&mut self, new_values: Vec<Complex64>) -> Result<()> {
        if new_values.len() != self.values.len() - 1 {
            return Err(domain("refinement needs one value per interval"));
        }
        let mut merged = Vec::with_capacity(2 * self.values.len() - 1);
        for (old, new) in self.values.iter().zip(new_values.iter()) {
            merged.push(*old);
            merged.push(*new);
        }
        merged.push(*self.values.last().expect("nonempty"));
        self.values = merged;
        Ok(())
    }

    fn sum_with_stride(&self, omega: f64, stride: usize) -> Complex64 {
        let n = (self.values.len() - 1) / stride;
        let d = (self.b - self.a) / n as f64;
        let h = 1.5 * d;
        let w = weights(omega * h);
        let mut acc = Complex64::new(0.0, 0.0);
        // Panel phases advance by a fixed rotation, resynchronized periodically.
        let step = Complex64::new(0.0, omega * 3.0 * d).exp();
        let mut phase = Complex64::new(0.0, 0.0);
        for k in 0..n / 3 {
            if k % 32 == 0 {
                let c = self.a + (3 * k) as f64 * d + h;
                phase = Complex64::new(0.0, omega * c).exp();
            }
            let base = 3 * k * stride;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, wj) in w.iter().enumerate() {
                s += self.values[base + j * stride] * wj;
            }
            acc += s * phase;
            phase *= step;
        }
        acc * h
    }

    pub fn integrate(&self, omega: f64) -> Complex64 {
        self.sum_with_stride(omega, 1)
    }

    /// Fine result with the half-resolution discrepancy as error estimate.
    pub fn estimate(&self, omega: f64) -> QuadResult<Complex64> {
        let fine = self.integrate(omega);
        let err = if self.panels() % 2 == 0 {
            (fine - self.sum_with_stride(omega, 2)).norm()
        } else {
            f64::INFINITY
        };
        QuadResult { value: fine, abs_error: err, evaluations: self.values.len() }
    }
}

/// `int_a^b f(x) e^{i omega x} dx` with panel doubling until the error
/// estimate meets `tol`.
pub fn integrate_oscillatory<T: Into<Complex64>>(
    f: impl Fn(f64) -> T,
    omega: f64,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<QuadResult<Complex64>> {
    if !(b > a) || !omega.is_finite() {
        return Err(domain(format!("oscillatory quadrature needs a < b and finite omega, got [{a}, {b}], {omega}")));
    }
    let mut s = FilonSamples::sample(&f, a, b, 8)?;
    loop {
        let r = s.estimate(omega);
        if r.abs_error <= tol.target(r.value.norm()) {
            return Ok(r);
        }
        if s.panels() >= MAX_PANELS {
            return Err(Error::Quadrature { value: r.value.norm(), estimate: r.abs_error });
        }
        let extra = s.refinement_nodes().into_iter().map(|x| f(x).into()).collect();
        s.refine_with(extra)?;
    }
}
