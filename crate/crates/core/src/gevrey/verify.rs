//! The appendix battery as one runnable report.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::*;
use crate::error::Result;
use crate::quadrature::Tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Margin {
    pub kind: &'static str,
    pub m: usize,
    pub v: f64,
    pub value: f64,
    pub bound: f64,
}

impl Margin {
    pub fn ratio(&self) -> f64 {
        self.value / self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Battery {
    pub checks: Vec<Check>,
    pub margins: Vec<Margin>,
}

impl Battery {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check { name, passed, detail });
    }
}

/// Romberg-extrapolated central first difference.
pub fn richardson_first_difference(h: impl Fn(f64) -> f64, x: f64, step: f64) -> f64 {
    const LEVELS: usize = 6;
    let mut table = [[0.0; LEVELS]; LEVELS];
    for i in 0..LEVELS {
        let s = step / 2f64.powi(i as i32);
        table[i][0] = (h(x + s) - h(x - s)) / (2.0 * s);
        for j in 1..=i {
            let r = 4f64.powi(j as i32);
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (r - 1.0);
        }
    }
    table[LEVELS - 1][LEVELS - 1]
}

/// Largest relative gap between order `m` and the differenced order `m - 1`,
/// over `m = 1..=m_max` and both families.
pub fn chained_difference_error(params: &GevreyParams, omega: f64, m_max: usize) -> Result<f64> {
    let step = 0.5 * (omega - params.k * params.v / params.l);
    let mut worst = 0.0f64;
    for m in 1..=m_max {
        let fm = |x: f64| f_derivative(params, m - 1, x).unwrap_or(f64::NAN);
        let gm = |x: f64| g_derivative(params, m - 1, x).unwrap_or(f64::NAN);
        let f = f_derivative(params, m, omega)?;
        let g = g_derivative(params, m, omega)?;
        worst = worst.max((richardson_first_difference(fm, omega, step) / f - 1.0).abs());
        worst = worst.max((richardson_first_difference(gm, omega, step) / g - 1.0).abs());
    }
    Ok(worst)
}

const SPEEDS: [f64; 3] = [0.1, 0.5, 0.9];

fn unit(v: f64) -> GevreyParams {
    GevreyParams::new(1.0, 1.0, v).expect("valid parameters")
}

fn tables(b: &mut Battery) {
    let c = c_table_sequence(MAX_ORDER);
    let d = d_table_sequence(MAX_ORDER);
    let shaped = c.iter().chain(d.iter()).all(|t| {
        t.entries().iter().all(|(&(i, j), x)| i + j == t.row_sum() && *x >= BigRational::zero())
    });
    let same = c == c_table_sequence(MAX_ORDER) && d == d_table_sequence(MAX_ORDER);
    b.push("coefficient tables", shaped && same, format!("m <= {MAX_ORDER}, nonnegative, row-shaped, reproducible"));

    let one = |n: i64| BigRational::from_integer(BigInt::from(n));
    let c3 = &c[2];
    let hand = c3.get(1, 0) == one(3) && c3.get(0, 1) == one(1) && d[1].get(0, 0) == one(2);
    b.push("third-order coefficients", hand, "C^3 = {3, 1}, D^3 = 2".into());
}

fn derivatives(b: &mut Battery) -> Result<()> {
    let p = GevreyParams::new(1.3, 0.7, 0.6)?;
    let a = p.k * p.v / p.l;
    let w = 2.0 * p.radius();
    let f1 = (f_derivative(&p, 1, w)? / (-a / (w * w - a * a)) - 1.0).abs();
    let den = p.l * p.l * w * w - p.k * p.k * p.v * p.v;
    let g2_exact = 2.0 * p.k * p.k * p.v.powi(3) * p.l * p.l / (den * den);
    let g2 = (g_derivative(&p, 2, w)? / g2_exact - 1.0).abs();
    b.push("low-order hand algebra", f1.max(g2) < 1e-12, format!("rel err {:.1e}", f1.max(g2)));

    let mut worst = 0.0f64;
    for v in SPEEDS {
        let p = unit(v);
        worst = worst.max(chained_difference_error(&p, 2.0 * p.radius(), 8)?);
    }
    b.push("finite differences m <= 8", worst < 1e-6, format!("max rel err {worst:.1e} at w = 2R"));

    let mut monotone = true;
    for v in [0.1, 0.5, 0.95] {
        let p = GevreyParams::new(0.7, 1.3, v)?;
        let grid: Vec<f64> = (0..100).map(|i| p.radius() * (1.0 + 9.0 * i as f64 / 99.0)).collect();
        for m in 0..=12 {
            for w in grid.windows(2) {
                monotone &= f_derivative(&p, m, w[1])?.abs() < f_derivative(&p, m, w[0])?.abs();
                monotone &= g_derivative(&p, m, w[1])?.abs() < g_derivative(&p, m, w[0])?.abs();
            }
        }
    }
    b.push("monotone on [R, 10R]", monotone, "m <= 12, 100 points".into());
    Ok(())
}

fn sup_bounds(b: &mut Battery, m_max: usize) -> Result<()> {
    let mut worst = 0.0f64;
    for v in SPEEDS {
        let rep = sup_bounds_check(&unit(v), m_max)?;
        for r in &rep.rows {
            b.margins.push(Margin { kind: "sup_f", m: r.m, v, value: r.sup, bound: r.bound });
        }
        worst = worst.max(rep.max_margin());
    }
    b.push("sup |f^(m)| <= (6L/K)^m m!", worst <= 1.0, format!("m <= {m_max}, max margin {worst:.3e}"));

    let c = c_sum_bounds(25);
    let d = d_sum_bounds(MAX_ORDER);
    for r in &c {
        b.margins.push(Margin { kind: "sum_c", m: r.m, v: f64::NAN, value: r.sum, bound: r.bound });
    }
    for r in &d {
        b.margins.push(Margin { kind: "sum_d", m: r.m, v: f64::NAN, value: r.sum, bound: r.bound });
    }
    let ok_c = c.iter().all(|r| r.sum <= r.bound);
    let ok_d = d.iter().all(|r| r.sum <= r.bound);
    b.push("sum C^m <= 18^(m/2)", ok_c, "m <= 25".into());
    b.push("sum D^m <= (2 sqrt 21)^(m-2)", ok_d, format!("m <= {MAX_ORDER}"));
    Ok(())
}

fn l1_norms(b: &mut Battery, m_max: usize) -> Result<()> {
    let p = unit(0.5);
    let c = g_l1_closed_forms(&p);
    let tol = Tolerance::new(1e-14, 1e-12);
    let err = [
        (g_l1_quadrature(&p, 0, tol)? - c.g).abs(),
        (g_l1_quadrature(&p, 1, tol)? - c.g1).abs(),
        (g_l1_quadrature(&p, 2, tol)? - c.g2).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    b.push("L1 closed forms vs quadrature", err < 1e-8, format!("v = 0.5, max abs err {err:.1e}"));

    let mut capped = true;
    for i in 0..40 {
        let p = unit(i as f64 / 40.0);
        let c = g_l1_closed_forms(&p);
        let caps = GL1::caps(&p);
        capped &= c.within(&caps);
        for (m, value, bound) in [(0, c.g, caps.g), (1, c.g1, caps.g1), (2, c.g2, caps.g2)] {
            b.margins.push(Margin { kind: "l1_g", m, v: p.v, value, bound });
        }
    }
    b.push("L1 closed forms below caps", capped, "K/L, 1/2, 4L/K on v grid".into());

    let mut higher = true;
    for v in SPEEDS {
        let p = unit(v);
        for m in 3..=m_max {
            let value = g_l1_norm(&p, m)?;
            let bound = g_l1_bound(&p, m)?;
            higher &= value <= bound;
            b.margins.push(Margin { kind: "l1_g", m, v, value, bound });
        }
    }
    b.push("higher L1 norms below bounds", higher, format!("3 <= m <= {m_max}"));
    Ok(())
}

fn partitions(b: &mut Battery) -> Result<()> {
    let exact = partition_bound(1)?.count == 1 && partition_bound(5)?.count == 7;
    b.push("p(1) = 1, p(5) = 7", exact, String::new());
    let r: Vec<f64> = [50, 100, 200].iter().map(|&m| partition_bound(m).map(|x| x.ratio())).collect::<Result<_>>()?;
    let rising = r[0] < r[1] && r[1] < r[2] && r[2] < 1.0;
    b.push("p(m)/asymptote rising to 1", rising, format!("{:.4} {:.4} {:.4}", r[0], r[1], r[2]));
    Ok(())
}

fn products_and_certificates(b: &mut Battery, n_max: usize) -> Result<()> {
    let mut ok = true;
    for (a, c) in [(2.0, 1.0), (3.0, 0.5)] {
        ok &= leibniz_product_check(InversePower(a), InversePower(c), 1, 6)?.holds();
    }
    b.push("product rule estimate", ok, "x^-2 x^-1 and x^-3 x^-1/2, m0 = 1, m <= 6".into());

    let good = gevrey_decay_check_fn(|x| (-x.sqrt()).exp(), 1e4, 4000, 2.0, n_max, 10.0)?;
    let bad = gevrey_decay_check_fn(|x| 1.0 / (1.0 + x * x), 1e4, 4000, 2.0, n_max.max(4), 10.0)?;
    b.push(
        "decay certificate controls",
        good.passed() && !bad.passed(),
        format!("exp(-sqrt xi): C = {:.3}; 1/(1+xi^2) fails at N = {:?}", good.c(), bad.first_failure()),
    );
    Ok(())
}

/// Runs every appendix check; `m_max` bounds the sup and `L^1` orders and
/// `n_max` the certificate order.
pub fn appendix_battery(m_max: usize, n_max: usize) -> Result<Battery> {
    let m_max = m_max.clamp(3, MAX_ORDER);
    let mut b = Battery::default();
    tables(&mut b);
    derivatives(&mut b)?;
    sup_bounds(&mut b, m_max)?;
    l1_norms(&mut b, m_max)?;
    partitions(&mut b)?;
    products_and_certificates(&mut b, n_max.max(1))?;
    Ok(b)
}
