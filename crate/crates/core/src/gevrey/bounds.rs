use num_traits::ToPrimitive;

use super::coeffs::{c_table_sequence, d_table_sequence};
use super::derivs::{f_derivative, g_derivative};
use super::GevreyParams;
use crate::error::{domain, Result};
use crate::quadrature::{integrate_semi_infinite, Tolerance};

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupRow {
    pub m: usize,
    /// `|f^(m)(R)|`, the sup over `|w| >= R`.
    pub sup: f64,
    /// `(6L/K)^m m!`.
    pub bound: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupReport {
    pub rows: Vec<SupRow>,
}

impl SupReport {
    pub fn max_margin(&self) -> f64 {
        self.rows.iter().map(|r| r.margin).fold(0.0, f64::max)
    }

    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.margin <= 1.0)
    }
}

/// Compares `|f^(m)(R)|` with `(6L/K)^m m!` for `m <= m_max`.
pub fn sup_bounds_check(params: &GevreyParams, m_max: usize) -> Result<SupReport> {
    let base = 6.0 * params.l / params.k;
    let rows = (0..=m_max)
        .map(|m| {
            let sup = f_derivative(params, m, params.radius())?.abs();
            let bound = base.powi(m as i32) * factorial(m);
            Ok(SupRow { m, sup, bound, margin: sup / bound })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SupReport { rows })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumRow {
    pub m: usize,
    pub sum: f64,
    pub bound: f64,
}

/// `sum C^m` against `sqrt(18)^m` for `m = 2 ..= m_max`.
pub fn c_sum_bounds(m_max: usize) -> Vec<SumRow> {
    c_table_sequence(m_max)
        .iter()
        .skip(1)
        .map(|t| SumRow {
            m: t.order(),
            sum: t.sum().to_f64().unwrap_or(f64::INFINITY),
            bound: 18f64.sqrt().powi(t.order() as i32),
        })
        .collect()
}

/// `sum D^m` against `(2 sqrt 21)^(m-2)` for `m = 2 ..= m_max`.
pub fn d_sum_bounds(m_max: usize) -> Vec<SumRow> {
    d_table_sequence(m_max)
        .iter()
        .map(|t| SumRow {
            m: t.order(),
            sum: t.sum().to_f64().unwrap_or(f64::INFINITY),
            bound: (2.0 * 21f64.sqrt()).powi(t.order() as i32 - 2),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GL1 {
    pub g: f64,
    pub g1: f64,
    pub g2: f64,
}

impl GL1 {
    /// Stated caps `K/L`, `1/2`, `4L/K`.
    pub fn caps(params: &GevreyParams) -> GL1 {
        GL1 {
            g: params.k / params.l,
            g1: 0.5,
            g2: 4.0 * params.l / params.k,
        }
    }

    pub fn within(&self, caps: &GL1) -> bool {
        self.g <= caps.g && self.g1 <= caps.g1 && self.g2 <= caps.g2
    }
}

/// Closed-form `L^1(|w| > R)` norms of `g`, `g'` and `g''`.
pub fn g_l1_closed_forms(params: &GevreyParams) -> GL1 {
    let (k, l, v) = (params.k, params.l, params.v);
    let s2 = 2f64.sqrt();
    let q = 2.0 - v * v;
    // ln((s2 + v)/(s2 - v)) = 2 artanh(v/s2)
    let at = (v / s2).atanh();
    GL1 {
        g: k / (2.0 * l) * (2.0 * s2 * v - q * 2.0 * at),
        g1: 2.0 * s2 * at - 2.0 * v,
        g2: 2.0 * l / k * (s2 * v - q * at) / q,
    }
}

/// `||g^(m)||_{L^1(|w| > R)}`; for `m >= 3` this is `2 |g^(m-1)(R)|`.
pub fn g_l1_norm(params: &GevreyParams, m: usize) -> Result<f64> {
    let c = g_l1_closed_forms(params);
    Ok(match m {
        0 => c.g,
        1 => c.g1,
        2 => c.g2,
        _ => 2.0 * g_derivative(params, m - 1, params.radius())?.abs(),
    })
}

/// `2 int_R^inf |g^(m)|` by quadrature.
pub fn g_l1_quadrature(params: &GevreyParams, m: usize, tol: Tolerance) -> Result<f64> {
    let r = params.radius();
    let q = integrate_semi_infinite(|w| g_derivative(params, m, w).map(f64::abs).unwrap_or(f64::NAN), r, r, tol)?;
    Ok(2.0 * q.value)
}

/// Stated upper bounds for `||g^(m)||_{L^1}` at `m >= 3`.
pub fn g_l1_bound(params: &GevreyParams, m: usize) -> Result<f64> {
    if m < 3 {
        return Err(domain("higher-order L1 bounds start at m = 3"));
    }
    let ratio = params.l / params.k;
    Ok(if m % 2 == 1 {
        let n = (m - 1) / 2;
        2.0 * (6.0 * 2f64.sqrt() * ratio).powi(2 * n as i32) * factorial(2 * n - 2)
    } else {
        let n = (m - 2) / 2;
        2.0 * (2.0 * 13f64.sqrt() * ratio).powi(2 * n as i32 + 1) * factorial(2 * n)
    })
}

/// A function on `|x| > 1` with known derivative norms: `x^(-a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversePower(pub f64);

impl InversePower {
    /// `d^m/dx^m x^(-a) = (-1)^m (a)_m x^(-a-m)` for `x > 0`.
    fn derivative(self, m: usize, x: f64) -> f64 {
        let rising = (0..m).fold(1.0, |acc, j| acc * (self.0 + j as f64));
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        sign * rising * x.powf(-self.0 - m as f64)
    }

    fn sup_norm(self, m: usize) -> f64 {
        self.derivative(m, 1.0).abs()
    }

    /// Needs `a + m > 1`.
    fn l1_norm(self, m: usize) -> f64 {
        2.0 * self.sup_norm(m) / (self.0 + m as f64 - 1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeibnizReport {
    pub m0: usize,
    pub delta: f64,
    pub epsilon: f64,
    /// `(m, ||(phi psi)^(m)||_1, bound)` rows.
    pub rows: Vec<(usize, f64, f64)>,
}

impl LeibnizReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|&(_, norm, bound)| norm <= bound)
    }
}

fn minimal_rate(norm: impl Fn(usize) -> f64, m0: usize, m_max: usize) -> f64 {
    (0..=m_max)
        .map(|m| (norm(m) / factorial(m0 + m)).powf(1.0 / (m0 + m) as f64))
        .fold(0.0, f64::max)
}

/// Finite-order check of the product rule estimate on `|x| > 1`.
///
/// `phi = x^(-a)` carries the `L^1` bounds and `psi = x^(-b)` the `L^inf`
/// bounds. The smallest `delta`, `epsilon` satisfying the hypotheses up to
/// `m_max` are found, and the product's `L^1` norms, integrated from the
/// Leibniz expansion, are compared with `(m0!)^2 (2c)^m0 (2c)^(m0+m) (m0+m)!`.
pub fn leibniz_product_check(phi: InversePower, psi: InversePower, m0: usize, m_max: usize) -> Result<LeibnizReport> {
    if m0 < 1 {
        return Err(domain("the product estimate needs m0 >= 1"));
    }
    if !(phi.0 > 1.0) || !(psi.0 >= 0.0) {
        return Err(domain("need phi = x^-a with a > 1 and psi = x^-b with b >= 0"));
    }
    let delta = minimal_rate(|m| phi.l1_norm(m), m0, m_max);
    let epsilon = minimal_rate(|m| psi.sup_norm(m), m0, m_max);
    let two_c = 2.0 * delta.max(epsilon);
    let lead = factorial(m0).powi(2) * two_c.powi(m0 as i32);
    let tol = Tolerance::new(0.0, 1e-11);
    let rows = (0..=m_max)
        .map(|m| {
            let product = |x: f64| {
                let mut binom = 1.0;
                let mut total = 0.0;
                for i in 0..=m {
                    total += binom * psi.derivative(i, x) * phi.derivative(m - i, x);
                    binom = binom * (m - i) as f64 / (i + 1) as f64;
                }
                total.abs()
            };
            let norm = 2.0 * integrate_semi_infinite(product, 1.0, 1.0, tol)?.value;
            let bound = lead * two_c.powi((m0 + m) as i32) * factorial(m0 + m);
            Ok((m, norm, bound))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LeibnizReport { m0, delta, epsilon, rows })
}
