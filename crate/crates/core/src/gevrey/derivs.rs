use std::sync::OnceLock;

use super::coeffs::{c_table_sequence, d_table_sequence};
use super::{GevreyParams, MAX_ORDER};
use crate::error::{domain, Result};
use crate::relkin::f_cap;

struct Rows {
    c: Vec<Vec<f64>>,
    d: Vec<Vec<f64>>,
}

fn rows() -> &'static Rows {
    static ROWS: OnceLock<Rows> = OnceLock::new();
    ROWS.get_or_init(|| Rows {
        c: c_table_sequence(MAX_ORDER).iter().map(|t| t.row_f64()).collect(),
        d: d_table_sequence(MAX_ORDER).iter().map(|t| t.row_f64()).collect(),
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `sum_i row[i] X^i Y^(n-i)` divided by `X^n`, with `r2 = Y/X`.
fn row_poly(row: &[f64], r2: f64) -> f64 {
    row.iter().fold(0.0, |acc, &c| acc * r2 + c)
}

fn check(params: &GevreyParams, m: usize, omega: f64) -> Result<f64> {
    if m > MAX_ORDER {
        return Err(domain(format!("derivative order {m} exceeds {MAX_ORDER}")));
    }
    let a = params.k * params.v / params.l;
    if !omega.is_finite() || !(omega.abs() > a) {
        return Err(domain(format!("need |omega| > Kv/L = {a}, got {omega}")));
    }
    Ok(a / omega)
}

/// `d^m/dw^m artanh(Kv/(L w))` for `|w| > Kv/L`.
pub fn f_derivative(params: &GevreyParams, m: usize, omega: f64) -> Result<f64> {
    let r = check(params, m, omega)?;
    if m == 0 {
        return Ok(r.atanh());
    }
    let r2 = r * r;
    let q = (1.0 - r) * (1.0 + r);
    let row = &rows().c[m - 1];
    let poly = row_poly(row, r2);
    let w = omega.powi(-(m as i32));
    Ok(if m % 2 == 1 {
        -factorial(m - 1) * r * w * poly / q.powi(m as i32)
    } else {
        factorial(m) * r * w * poly / q.powi(m as i32)
    })
}

/// `d^m/dw^m [(L w/K) artanh(Kv/(L w)) - v]` for `|w| > Kv/L`.
pub fn g_derivative(params: &GevreyParams, m: usize, omega: f64) -> Result<f64> {
    let r = check(params, m, omega)?;
    let v = params.v;
    match m {
        0 => {
            if v == 0.0 {
                return Ok(0.0);
            }
            f_cap(v / r.abs(), v)
        }
        1 => Ok(omega.signum() * params.l / params.k * g1_reduced(r.abs())),
        _ => {
            let r2 = r * r;
            let q = (1.0 - r) * (1.0 + r);
            let row = &rows().d[m - 2];
            let poly = row_poly(row, r2);
            let w = omega.powi(-(m as i32));
            let n = m / 2;
            Ok(if m % 2 == 0 {
                2.0 * factorial(2 * n - 2) * v * r2 * w * poly / q.powi(m as i32)
            } else {
                -2.0 * factorial(2 * n) * v * r2 * w * poly / q.powi(m as i32)
            })
        }
    }
}

/// `artanh(r) - r/(1 - r^2)` for `0 <= r < 1`.
fn g1_reduced(r: f64) -> f64 {
    if r < 0.5 {
        let r2 = r * r;
        let mut term = r * r2;
        let mut sum = 0.0;
        for k in 1..200 {
            let k = k as f64;
            sum -= 2.0 * k / (2.0 * k + 1.0) * term;
            term *= r2;
            if term < 1e-17 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        r.atanh() - r / ((1.0 - r) * (1.0 + r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(k: f64, l: f64, v: f64) -> GevreyParams {
        GevreyParams::new(k, l, v).unwrap()
    }

    #[test]
    fn first_derivative_hand_algebra() {
        let p = params(1.3, 0.7, 0.6);
        let a = p.k * p.v / p.l;
        for &w in &[1.2 * a, 2.0, 5.0, -3.0] {
            let exact = -a / (w * w - a * a);
            assert_relative_eq!(f_derivative(&p, 1, w).unwrap(), exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn g_second_derivative_hand_algebra() {
        let p = params(0.9, 1.4, 0.75);
        let (k, l, v) = (p.k, p.l, p.v);
        for &w in &[p.radius(), 2.0, 10.0] {
            let den = l * l * w * w - k * k * v * v;
            let exact = 2.0 * k * k * v.powi(3) * l * l / (den * den);
            assert_relative_eq!(g_derivative(&p, 2, w).unwrap(), exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn g_first_derivative_displayed_form() {
        let p = params(1.0, 1.0, 0.9);
        for &w in &[p.radius(), 1.7, 3.0] {
            let (k, l, v) = (p.k, p.l, p.v);
            let shown = l / k * (k * v / (l * w)).atanh() - v * l * l * w / (l * l * w * w - k * k * v * v);
            assert_relative_eq!(g_derivative(&p, 1, w).unwrap(), shown, max_relative = 1e-12);
        }
    }

    #[test]
    fn vanishing_speed_gives_zero() {
        let p = params(1.0, 2.0, 0.0);
        for m in 0..=12 {
            assert_eq!(f_derivative(&p, m, 1.5).unwrap(), 0.0);
            assert_eq!(g_derivative(&p, m, 1.5).unwrap(), 0.0);
        }
    }

    #[test]
    fn parity_in_omega() {
        let p = params(1.0, 1.0, 0.5);
        for m in 0..=9 {
            let s = if m % 2 == 0 { -1.0 } else { 1.0 };
            assert_relative_eq!(
                f_derivative(&p, m, -2.0).unwrap(),
                s * f_derivative(&p, m, 2.0).unwrap(),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                g_derivative(&p, m, -2.0).unwrap(),
                -s * g_derivative(&p, m, 2.0).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn rejects_points_inside_singular_set() {
        let p = params(1.0, 1.0, 0.5);
        assert!(f_derivative(&p, 2, 0.4).is_err());
        assert!(g_derivative(&p, 0, -0.5).is_err());
        assert!(f_derivative(&p, MAX_ORDER + 1, 2.0).is_err());
    }

    #[test]
    fn large_omega_limit_of_g() {
        let p = params(1.2, 0.8, 0.7);
        let limit = p.k * p.k * p.v.powi(3) / (3.0 * p.l * p.l);
        let w = 1e4;
        assert_relative_eq!(g_derivative(&p, 0, w).unwrap() * w * w, limit, max_relative = 1e-7);
        let w = 1e4;
        assert_relative_eq!(
            g_derivative(&p, 1, w).unwrap() * w.powi(3),
            -2.0 * limit,
            max_relative = 1e-7
        );
    }
}
