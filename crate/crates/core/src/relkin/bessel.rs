//! Modified Bessel functions of the second kind of orders 0, 1 and 2.
//!
//! Power series on `(0, 2]`, Steed's continued fraction above.

use crate::error::{domain, Result};
use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EPS: f64 = 1e-16;

fn check(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("Bessel K needs x > 0, got {x}")))
    }
}

/// `(K0(x), K1(x))` from the series, valid for small `x`.
fn series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let lg = (0.5 * x).ln();
    // I0, I1 and the harmonic-weighted sums share the same term recursion.
    let mut t0 = 1.0; // q^k / (k!)^2
    let mut t1 = 1.0; // q^k / (k! (k+1)!)
    let mut i0 = 1.0;
    let mut i1 = 1.0;
    let mut h = 0.0; // H_k
    let mut s0 = 0.0;
    let mut s1 = -EULER_GAMMA + (1.0 - EULER_GAMMA); // psi(1) + psi(2)
    let mut k = 0.0;
    loop {
        k += 1.0;
        t0 *= q / (k * k);
        t1 *= q / (k * (k + 1.0));
        h += 1.0 / k;
        i0 += t0;
        i1 += t1;
        s0 += h * t0;
        // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
        s1 += (2.0 * h + 1.0 / (k + 1.0) - 2.0 * EULER_GAMMA) * t1;
        if t0 < EPS * i0 && t1 < EPS * i1 {
            break;
        }
    }
    let i1 = 0.5 * x * i1;
    let k0 = -(lg + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / x + lg * i1 - 0.25 * x * s1;
    (k0, k1)
}

/// `(e^x K0(x), e^x K1(x))` from the continued fraction, valid for `x > 2`.
fn steed_scaled(x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut i = 2.0;
    while i < 10_000.0 {
        a -= 2.0 * (i - 1.0);
        c = -a * c / i;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
        i += 1.0;
    }
    let h = a1 * h;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

fn pair_scaled(x: f64) -> (f64, f64) {
    if x <= 2.0 {
        let (k0, k1) = series(x);
        let e = x.exp();
        (k0 * e, k1 * e)
    } else {
        steed_scaled(x)
    }
}

fn pair(x: f64) -> (f64, f64) {
    if x <= 2.0 {
        series(x)
    } else {
        let (k0, k1) = steed_scaled(x);
        let e = (-x).exp();
        (k0 * e, k1 * e)
    }
}

pub fn k0(x: f64) -> Result<f64> {
    check(x)?;
    Ok(pair(x).0)
}

pub fn k1(x: f64) -> Result<f64> {
    check(x)?;
    Ok(pair(x).1)
}

pub fn k2(x: f64) -> Result<f64> {
    check(x)?;
    let (k0, k1) = pair(x);
    Ok(k0 + 2.0 * k1 / x)
}

/// `e^x K0(x)`.
pub fn k0_scaled(x: f64) -> Result<f64> {
    check(x)?;
    Ok(pair_scaled(x).0)
}

/// `e^x K1(x)`.
pub fn k1_scaled(x: f64) -> Result<f64> {
    check(x)?;
    Ok(pair_scaled(x).1)
}

/// `e^x K2(x)`.
pub fn k2_scaled(x: f64) -> Result<f64> {
    check(x)?;
    let (k0, k1) = pair_scaled(x);
    Ok(k0 + 2.0 * k1 / x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Reference values from 30-digit evaluations.
    const TABLE: &[(f64, f64, f64, f64)] = &[
        (1e-3, 7.0236888005623813, 999.99623815608557, 1999999.5000009717),
        (0.5, 0.92441907122766586, 1.6564411200033009, 7.5501835512408694),
        (1.0, 0.42102443824070833, 0.60190723019723457, 1.6248388986351775),
        (2.0, 0.11389387274953344, 0.13986588181652243, 0.25375975456605586),
        (2.5, 0.062347553200366186, 0.073890816347747064, 0.12146020627856384),
        (10.0, 1.7780062316167652e-5, 1.8648773453825585e-5, 2.1509817006932769e-5),
        (50.0, 3.4101677497894955e-23, 3.4441022267175556e-23, 3.5479318388581977e-23),
    ];

    #[test]
    fn reference_values() {
        for &(x, r0, r1, r2) in TABLE {
            assert_relative_eq!(k0(x).unwrap(), r0, max_relative = 1e-13);
            assert_relative_eq!(k1(x).unwrap(), r1, max_relative = 1e-13);
            assert_relative_eq!(k2(x).unwrap(), r2, max_relative = 1e-13);
        }
    }

    #[test]
    fn k2_of_one_from_integral_representation() {
        // K_2(x) = int_0^inf exp(-x cosh u) cosh(2u) du, midpoint rule on a
        // rapidly decaying integrand.
        let n = 20_000;
        let h = 12.0 / n as f64;
        let s: f64 = (0..n)
            .map(|i| {
                let u = (i as f64 + 0.5) * h;
                (-u.cosh()).exp() * (2.0 * u).cosh()
            })
            .sum();
        assert_relative_eq!(k2(1.0).unwrap(), s * h, max_relative = 1e-10);
    }

    #[test]
    fn scaled_forms_are_consistent() {
        for &x in &[1e-3f64, 0.7, 1.99, 2.01, 5.0, 123.0, 700.0] {
            let e = (-x).exp();
            assert_relative_eq!(k2_scaled(x).unwrap() * e, k2(x).unwrap(), max_relative = 1e-12);
            assert_relative_eq!(k0_scaled(x).unwrap() * e, k0(x).unwrap(), max_relative = 1e-12);
        }
        // Large-argument asymptote of the scaled K2.
        let x = 1e4;
        let asym = (PI / (2.0 * x)).sqrt() * (1.0 + 15.0 / (8.0 * x) + 105.0 / (128.0 * x * x));
        assert_relative_eq!(k2_scaled(x).unwrap(), asym, max_relative = 1e-9);
    }

    #[test]
    fn continuity_at_switch() {
        let (a0, a1) = series(2.0);
        let (b0, b1) = steed_scaled(2.0);
        let e = (-2.0f64).exp();
        assert_relative_eq!(a0, b0 * e, max_relative = 1e-13);
        assert_relative_eq!(a1, b1 * e, max_relative = 1e-13);
    }

    #[test]
    fn recurrence_and_monotonicity() {
        let mut prev = f64::INFINITY;
        for i in 1..200 {
            let x = i as f64 * 0.05;
            let k2v = k2(x).unwrap();
            assert!(k2v < prev);
            prev = k2v;
            assert!(k0(x).unwrap() < k1(x).unwrap());
        }
        assert!(k0(0.0).is_err());
        assert!(k2(-1.0).is_err());
    }
}
