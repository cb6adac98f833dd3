//! The mode equation `rho = alpha + beta * rho` on a uniform grid, and its
//! resolvent kernel.

use crate::error::{domain, Error, Result};
use crate::par::{self, Execution};
use crate::quadrature::FilonSamples;
use crate::spectral::{
    alpha_direct, beta_direct, decay_moment, laplace_beta_boundary, threshold, Interaction, ModeSpec, KERNEL_TOL,
};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Trajectories are abandoned once `|rho|` exceeds this.
pub const GROWTH_CAP: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub dt: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn new(dt: f64, t_max: f64) -> Result<Self> {
        if !(dt > 0.0) || !(t_max > 0.0) || !dt.is_finite() || !t_max.is_finite() {
            return Err(domain(format!("need dt > 0 and t_max > 0, got {dt}, {t_max}")));
        }
        let steps = (t_max / dt).round() as usize;
        if steps == 0 {
            return Err(domain("t_max shorter than one step"));
        }
        Ok(TimeGrid { dt, steps })
    }

    pub fn t(&self, j: usize) -> f64 {
        j as f64 * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|j| self.t(j)).collect()
    }

    pub fn t_max(&self) -> f64 {
        self.t(self.steps)
    }
}

/// `alpha` and `beta` sampled on a grid.
#[derive(Debug, Clone)]
pub struct KernelTable {
    pub grid: TimeGrid,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub max_abs_error: f64,
}

impl KernelTable {
    pub fn build(mode: &ModeSpec, grid: TimeGrid, exec: Execution) -> Result<Self> {
        let rows = par::map_range(exec, grid.steps + 1, |j| {
            let t = grid.t(j);
            let a = alpha_direct(mode, t)?;
            let b = beta_direct(mode, t)?;
            Ok((a.value, b.value, a.abs_error.max(b.abs_error)))
        });
        let mut alpha = Vec::with_capacity(rows.len());
        let mut beta = Vec::with_capacity(rows.len());
        let mut max_abs_error = 0.0f64;
        for r in rows {
            let (a, b, e) = r?;
            alpha.push(a);
            beta.push(b);
            max_abs_error = max_abs_error.max(e);
        }
        Ok(KernelTable { grid, alpha, beta, max_abs_error })
    }
}

#[derive(Debug, Clone)]
pub struct VolterraSolution {
    pub values: Vec<Complex64>,
    /// Set when the solve stopped at [`GROWTH_CAP`].
    pub growth: bool,
}

/// Product-trapezoid solve of `u_n = f_n + dt [k_n u_0 / 2 + sum_{j=1}^{n-1}
/// k_{n-j} u_j + k_0 u_n / 2]`; explicit when `k_0 = 0`.
pub fn solve_volterra(forcing: &[Complex64], kernel: &[f64], dt: f64) -> Result<VolterraSolution> {
    if forcing.is_empty() || forcing.len() != kernel.len() {
        return Err(domain("forcing and kernel need equal nonzero length"));
    }
    let diag = 1.0 - 0.5 * dt * kernel[0];
    if diag == 0.0 {
        return Err(domain("trapezoid step is singular for this kernel and dt"));
    }
    let mut u: Vec<Complex64> = Vec::with_capacity(forcing.len());
    u.push(forcing[0] / diag);
    for n in 1..forcing.len() {
        let mut acc = u[0] * (0.5 * kernel[n]);
        for j in 1..n {
            acc += u[j] * kernel[n - j];
        }
        let un = (forcing[n] + acc * dt) / diag;
        if !(un.norm() <= GROWTH_CAP) {
            return Ok(VolterraSolution { values: u, growth: true });
        }
        u.push(un);
    }
    Ok(VolterraSolution { values: u, growth: false })
}

/// Trapezoid approximation of `(a * b)(t_n) = int_0^{t_n} a(t_n - s) b(s) ds`.
pub fn convolve_trapezoid(a: &[f64], b: &[Complex64], dt: f64) -> Vec<Complex64> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|m| {
            if m == 0 {
                return Complex64::new(0.0, 0.0);
            }
            let mut acc = b[0] * (0.5 * a[m]) + b[m] * (0.5 * a[0]);
            for j in 1..m {
                acc += b[j] * a[m - j];
            }
            acc * dt
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ModeTrajectory {
    pub grid: TimeGrid,
    pub rho: Vec<Complex64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub growth: bool,
}

impl ModeTrajectory {
    pub fn steps_completed(&self) -> usize {
        self.rho.len() - 1
    }
}

pub fn solve_mode(mode: &ModeSpec, grid: TimeGrid, exec: Execution) -> Result<ModeTrajectory> {
    let table = KernelTable::build(mode, grid, exec)?;
    solve_table(table)
}

pub fn solve_table(table: KernelTable) -> Result<ModeTrajectory> {
    let forcing: Vec<Complex64> = table.alpha.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let sol = solve_volterra(&forcing, &table.beta, table.grid.dt)?;
    Ok(ModeTrajectory { grid: table.grid, rho: sol.values, alpha: table.alpha, beta: table.beta, growth: sol.growth })
}

/// Resolvent `r = beta + beta * r` by the same trapezoid scheme.
pub fn resolvent_volterra(beta: &[f64], dt: f64) -> Result<VolterraSolution> {
    let forcing: Vec<Complex64> = beta.iter().map(|&b| Complex64::new(b, 0.0)).collect();
    solve_volterra(&forcing, beta, dt)
}

/// Generalized exponential integral `E_n(z) = int_1^inf e^{-z t} t^{-n} dt`
/// for `n >= 1` and `Re z >= 0`, `z != 0`.
pub fn expint_n(n: u32, z: Complex64) -> Result<Complex64> {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    if n == 0 || z.re < 0.0 || z.norm() == 0.0 {
        return Err(domain(format!("E_n needs n >= 1 and Re z >= 0, z != 0; got n = {n}, z = {z}")));
    }
    let nm1 = (n - 1) as f64;
    if z.norm() > 1.0 {
        // Modified Lentz evaluation of the continued fraction.
        let tiny = 1e-300;
        let mut b = z + (n as f64);
        let mut c = Complex64::new(1.0 / tiny, 0.0);
        let mut d = b.inv();
        let mut h = d;
        for i in 1..100_000 {
            let an = -(i as f64) * (nm1 + i as f64);
            b += 2.0;
            d = (d * an + b).inv();
            c = b + c.inv() * an;
            let del = c * d;
            h *= del;
            if (del - 1.0).norm() < 1e-16 {
                return Ok(h * (-z).exp());
            }
        }
        Err(Error::NoConvergence("expint continued fraction"))
    } else {
        let mut ans = if n > 1 { Complex64::new(1.0 / nm1, 0.0) } else { -z.ln() - EULER_GAMMA };
        let mut fact = Complex64::new(1.0, 0.0);
        for i in 1..1000 {
            fact *= -z / (i as f64);
            let del = if (i as f64) != nm1 {
                -fact / (i as f64 - nm1)
            } else {
                let psi = -EULER_GAMMA + (1..n).map(|k| 1.0 / k as f64).sum::<f64>();
                fact * (-z.ln() + psi)
            };
            ans += del;
            if del.norm() < ans.norm() * 1e-17 {
                return Ok(ans);
            }
        }
        Err(Error::NoConvergence("expint series"))
    }
}

/// `int_Y^inf e^{i w y} y^{-n} dy` for `w >= 0`, `n >= 2`.
fn power_tail(n: u32, w: f64, y: f64) -> Result<Complex64> {
    if w == 0.0 {
        return Ok(Complex64::new(y.powi(1 - n as i32) / (n as f64 - 1.0), 0.0));
    }
    Ok(expint_n(n, Complex64::new(0.0, -w * y))? * y.powi(1 - n as i32))
}

/// `I(t)`, the kernel whose Laplace transform is `L[beta] / (1 - L[beta])`.
#[derive(Debug, Clone)]
pub struct ResolventKernel {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
    /// Envelope samples spent on the frequency integral.
    pub samples: usize,
}

struct Segment {
    samples: FilonSamples,
}

fn transfer(mode: &ModeSpec, y: f64) -> Result<Complex64> {
    let l = laplace_beta_boundary(mode, y)?;
    Ok(l / (Complex64::new(1.0, 0.0) - l))
}

fn sample_segment(mode: &ModeSpec, a: f64, b: f64, probes: &[f64], tol: f64, exec: Execution) -> Result<Segment> {
    let nodes = FilonSamples::nodes(a, b, 16);
    let vals = par::map(exec, &nodes, |&y| transfer(mode, y));
    let mut s = FilonSamples::from_values(a, b, vals.into_iter().collect::<Result<Vec<_>>>()?)?;
    loop {
        let err = probes.iter().map(|&w| s.estimate(w).abs_error).fold(0.0, f64::max);
        if err <= tol {
            return Ok(Segment { samples: s });
        }
        if s.panels() >= 1 << 16 {
            return Err(Error::Quadrature { value: s.integrate(0.0).norm(), estimate: err });
        }
        let nodes = s.refinement_nodes();
        let vals = par::map(exec, &nodes, |&y| transfer(mode, y));
        s.refine_with(vals.into_iter().collect::<Result<Vec<_>>>()?)?;
    }
}

/// Frequency-domain evaluation of `I(t) = 2 Re int_0^inf G(y) e^{2 pi i y t} dy`
/// with `G = L[beta] / (1 - L[beta])` on the imaginary axis.
///
/// `[0, kappa]` and geometric blocks up to `64 kappa` use sampled Filon
/// panels shared by every `t`; beyond that `G` is replaced by its expansion
/// in `y^{-2}` and integrated exactly.
pub fn resolvent_kernel(mode: &ModeSpec, grid: TimeGrid, exec: Execution) -> Result<ResolventKernel> {
    let thr = threshold(&mode.equilibrium, mode.interaction, KERNEL_TOL)?.value;
    let kappa_sq = mode.kappa * mode.kappa;
    if kappa_sq <= thr {
        return Err(Error::NotSupercritical { kappa_sq, threshold: thr });
    }
    let k = mode.kappa;
    let w_max = 2.0 * PI * grid.t_max();
    let probes = [0.0, 0.25 * w_max, w_max];
    let g0 = transfer(mode, 0.0)?.norm();
    let tol = 1e-9 * g0.max(1e-3) * k;
    let mut segments = vec![sample_segment(mode, 0.0, k, &probes, tol, exec)?];
    let mut a = k;
    while a < 64.0 * k {
        segments.push(sample_segment(mode, a, 2.0 * a, &probes, tol, exec)?);
        a *= 2.0;
    }
    let y_tail = a;
    // L = a2 / y^2 + a4 / y^4 + a6 / y^6 and G = L + L^2 + L^3 + ...
    let s = mode.sigma();
    let a2 = 4.0 * s * decay_moment(mode, 3)? / 3.0;
    let a4 = 4.0 * s * k * k * decay_moment(mode, 5)? / 5.0;
    let a6 = 4.0 * s * k.powi(4) * decay_moment(mode, 7)? / 7.0;
    let c = [(2u32, a2), (4, a4 + a2 * a2), (6, a6 + 2.0 * a2 * a4 + a2 * a2 * a2)];
    let samples = segments.iter().map(|s| s.samples.values().len()).sum();
    let values = par::map_range(exec, grid.steps + 1, |j| {
        let w = 2.0 * PI * grid.t(j);
        let mut acc = Complex64::new(0.0, 0.0);
        for seg in &segments {
            acc += seg.samples.integrate(w);
        }
        for &(n, cn) in &c {
            acc += power_tail(n, w, y_tail)? * cn;
        }
        Ok(2.0 * acc.re)
    });
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ResolventKernel { grid, values, samples })
}

/// `true` when the mode lies beyond the stability threshold of its
/// interaction.
pub fn supercritical(mode: &ModeSpec) -> Result<bool> {
    let thr = threshold(&mode.equilibrium, mode.interaction, KERNEL_TOL)?.value;
    Ok(mode.kappa * mode.kappa > thr)
}

/// The interaction is plasma-like and the mode sits below threshold.
pub fn has_neutral_oscillation(mode: &ModeSpec) -> Result<bool> {
    Ok(mode.interaction == Interaction::Plasma && !supercritical(mode)?)
}
