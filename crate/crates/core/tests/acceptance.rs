//! Acceptance battery. Runs without the libtest harness so every criterion
//! prints its own line; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use relvp::decay::{bootstrap_s, envelope, exp_test, fit_stretched, Envelope, FitWindow, Verdict};
use relvp::equilibria::{Equilibrium, Profile};
use relvp::gevrey::{appendix_battery, chained_difference_error, GevreyParams};
use relvp::par::{self, Execution};
use relvp::quadrature::Tolerance;
use relvp::spectral::{
    alpha_direct, alpha_via_inverse, beta_direct, beta_via_inverse, find_y0, laplace_beta, sup_re_laplace_beta,
    threshold_astro, threshold_astro_by_parts, threshold_plasma, threshold_plasma_by_parts, Interaction, ModeSpec,
    KERNEL_TOL,
};
use relvp::volterra::{convolve_trapezoid, resolvent_kernel, solve_mode, solve_volterra, TimeGrid};

type Outcome = relvp::Result<(bool, String)>;

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

fn plasma_crit(theta: f64) -> relvp::Result<f64> {
    Ok(threshold_plasma(&Equilibrium::juttner(theta)?, KERNEL_TOL)?.kappa_crit())
}

fn plasma_mode(theta: f64, kappa: f64) -> relvp::Result<ModeSpec> {
    ModeSpec::new(kappa, Interaction::Plasma, Equilibrium::juttner(theta)?, Profile::default())
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

fn threshold_peak() -> Outcome {
    let start = Instant::now();
    let thetas = log_grid(0.01, 10.0, 200);
    let vals = par::map(Execution::default(), &thetas, |&t| plasma_crit(t));
    let elapsed = start.elapsed().as_secs_f64();
    let mut best = (0.0, 0.0);
    for (t, v) in thetas.iter().zip(vals) {
        let v = v?;
        if v > best.1 {
            best = (*t, v);
        }
    }
    let ok = (best.1 - 0.575).abs() <= 0.01 && (best.0 - 0.2).abs() <= 0.05 && elapsed < 10.0;
    Ok((ok, format!("max {:.5} at theta {:.4}, 200 points in {elapsed:.2} s", best.1, best.0)))
}

fn critical_torus() -> Outcome {
    // golden section on ln theta around the grid maximum
    let f = |u: f64| plasma_crit(u.exp());
    let (mut a, mut b) = (0.1f64.ln(), 0.4f64.ln());
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > 1e-8 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    let sup = fc.max(fd);
    let lc = 1.0 / sup;
    Ok(((1.6..=1.8).contains(&lc), format!("sup {sup:.6} at theta {:.5}, L_c = {lc:.4}", (0.5 * (a + b)).exp())))
}

fn astro_asymptote() -> Outcome {
    let thetas = log_grid(1e-4, 1e-2, 21);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &t in &thetas {
        let y = threshold_astro(&Equilibrium::juttner(t)?, KERNEL_TOL)?.kappa_crit();
        let x = t.powf(-0.5);
        sxy += x * y;
        sxx += x * x;
    }
    let c = sxy / sxx;
    let dev = (c / 0.564 - 1.0).abs();
    Ok((dev <= 0.01, format!("C = {c:.5} ({:.2}% from 0.564; 1/sqrt(pi) = {:.5})", 100.0 * dev, std::f64::consts::PI.sqrt().recip())))
}

fn identity_pairs() -> Outcome {
    let mut eqs: Vec<Equilibrium> =
        [0.05, 0.2, 1.0, 5.0].iter().map(|&t| Equilibrium::juttner(t)).collect::<relvp::Result<_>>()?;
    eqs.push(Equilibrium::compact(1.0)?);
    let mut worst = 0.0f64;
    for eq in &eqs {
        worst = worst.max(rel(threshold_plasma(eq, KERNEL_TOL)?.value, threshold_plasma_by_parts(eq, KERNEL_TOL)?.value));
        worst = worst.max(rel(threshold_astro(eq, KERNEL_TOL)?.value, threshold_astro_by_parts(eq, KERNEL_TOL)?.value));
    }
    Ok((worst < 1e-8, format!("max rel gap {worst:.2e} over 4 Juttner temperatures and compact P = 1")))
}

fn kernel_paths() -> Outcome {
    let tol = Tolerance::new(1e-13, 1e-10);
    let mut worst = 0.0f64;
    for theta in [0.2, 1.0] {
        for kappa in [0.5, 1.0, 2.0] {
            let m = plasma_mode(theta, kappa)?;
            for t in [0.0, 1.0, 5.0, 20.0] {
                worst = worst.max(rel(alpha_direct(&m, t)?.value, alpha_via_inverse(&m, t, tol)?.value));
                worst = worst.max(rel(beta_direct(&m, t)?.value, beta_via_inverse(&m, t, tol)?.value));
            }
        }
    }
    Ok((worst < 1e-6, format!("max rel gap {worst:.2e} over 24 (theta, kappa, t) points")))
}

fn volterra_solver() -> Outcome {
    let lambda = 0.5;
    let mut errs = Vec::new();
    for dt in [0.02, 0.01] {
        let n = (2.0 / dt) as usize + 1;
        let u = solve_volterra(&vec![Complex64::new(1.0, 0.0); n], &vec![lambda; n], dt)?.values;
        let exact = (2.0 * lambda).exp();
        errs.push((u[n - 1].re - exact).abs() / exact);
    }
    let order = (errs[0] / errs[1]).log2();

    let kc = plasma_crit(0.2)?;
    let m = plasma_mode(0.2, 1.2 * kc)?;
    let grid = TimeGrid::new(0.0025, 50.0)?;
    let traj = solve_mode(&m, grid, Execution::default())?;
    let res = resolvent_kernel(&m, grid, Execution::default())?;
    let alpha: Vec<Complex64> = traj.alpha.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let conv = convolve_trapezoid(&res.values, &alpha, grid.dt);
    let scale = traj.rho.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let gap = traj
        .rho
        .iter()
        .zip(&traj.alpha)
        .zip(&conv)
        .map(|((r, a), c)| (r - (a + c)).norm())
        .fold(0.0, f64::max)
        / scale;
    let ok = (order - 2.0).abs() <= 0.2 && gap < 1e-4;
    Ok((ok, format!("constant-kernel order {order:.3}; direct vs resolvent rel gap {gap:.2e} to t = 50")))
}

fn trajectory_envelope(theta: f64, factor: f64) -> relvp::Result<(f64, f64, Envelope)> {
    let kappa = factor * plasma_crit(theta)?;
    let traj = solve_mode(&plasma_mode(theta, kappa)?, TimeGrid::new(0.05, 300.0)?, Execution::default())?;
    let t = traj.grid.times();
    let r: Vec<f64> = traj.rho.iter().map(|z| z.norm()).collect();
    Ok((kappa, r[0], envelope(&t[..r.len()], &r)?))
}

/// `-ln(r(t) / r(0)) / t` at the envelope point nearest `target`.
fn lambda_near(env: &Envelope, r0: f64, target: f64) -> f64 {
    let i = (0..env.len())
        .min_by(|&a, &b| (env.t[a] - target).abs().total_cmp(&(env.t[b] - target).abs()))
        .unwrap_or(0);
    -(env.r[i] / r0).ln() / env.t[i]
}

fn no_exponential_decay() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for theta in [0.2, 1.0] {
        for factor in [1.2, 1.5] {
            let (kappa, r0, env) = trajectory_envelope(theta, factor)?;
            let verdict = exp_test(&env.window(&FitWindow::for_mode(kappa)))?.verdict;
            let drop = lambda_near(&env, r0, 20.0) / lambda_near(&env, r0, 300.0);
            ok &= verdict == Verdict::SubExponential && drop >= 5.0;
            parts.push(format!("theta {theta} {factor}kc: {} lambda ratio {drop:.2}", verdict.as_str()));
        }
    }
    Ok((ok, parts.join("; ")))
}

fn gevrey_exponent() -> Outcome {
    let (_, _, env) = trajectory_envelope(0.2, 1.2)?;
    let env = env.window(&FitWindow { t_min: 10.0, t_max: 300.0, ..FitWindow::default() });
    let s = fit_stretched(&env)?.s;
    let (lo, hi) = bootstrap_s(&env, 200, 1, 0.95)?;
    let ok = (2.5..=3.5).contains(&s) && lo <= 3.0 && 3.0 <= hi;
    Ok((ok, format!("s = {s:.4}, 95% CI [{lo:.4}, {hi:.4}]")))
}

fn dispersion_certificates() -> Outcome {
    let kc = plasma_crit(0.2)?;
    let above = plasma_mode(0.2, 1.05 * kc)?;
    let (sup, at) = sup_re_laplace_beta(&above, 50.0 * above.kappa, 4000)?;

    let below = plasma_mode(0.2, 0.8 * kc)?;
    let (y0_ok, y0_detail) = match find_y0(&below)? {
        Some(y0) => {
            let miss = (laplace_beta(&below, 0.0, y0)? - 1.0).norm();
            (y0 >= below.kappa && miss < 1e-8, format!("y0 = {y0:.6} (kappa {:.6}), |L - 1| = {miss:.1e}", below.kappa))
        }
        None => (false, "no y0 found below threshold".to_string()),
    };

    let edge = plasma_mode(0.2, kc)?;
    let (edge_ok, edge_detail) = match find_y0(&edge)? {
        Some(y0) => ((y0 - kc).abs() <= 1e-4, format!("y0 - kappa_c = {:.1e}", y0 - kc)),
        None => (false, "no y0 at kappa_c".to_string()),
    };
    let ok = sup < 1.0 && y0_ok && edge_ok;
    Ok((ok, format!("sup Re L = {sup:.6} at y = {at:.4}; {y0_detail}; {edge_detail}")))
}

fn appendix_suite() -> Outcome {
    let bad = common::table_mismatches();
    let battery = appendix_battery(16, 6)?;
    let mut fd = 0.0f64;
    for v in [0.1, 0.5, 0.9] {
        let p = GevreyParams::new(1.0, 1.0, v)?;
        fd = fd.max(chained_difference_error(&p, 2.0 * p.radius(), 8)?);
    }
    let failed: Vec<&str> = battery.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    let ok = bad.is_empty() && battery.passed() && fd < 1e-6;
    Ok((
        ok,
        format!(
            "{} table mismatches; {}/{} battery checks pass {failed:?}; FD rel err {fd:.1e}",
            bad.len(),
            battery.checks.len() - failed.len(),
            battery.checks.len()
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("threshold peak", threshold_peak),
        ("critical torus size", critical_torus),
        ("astro asymptote", astro_asymptote),
        ("threshold identities", identity_pairs),
        ("kernel cross-paths", kernel_paths),
        ("volterra solver", volterra_solver),
        ("no exponential decay", no_exponential_decay),
        ("gevrey exponent", gevrey_exponent),
        ("dispersion certificates", dispersion_certificates),
        ("appendix suite", appendix_suite),
    ];
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        passed += ok as usize;
        let status = if ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {name} ({:.1} s): {detail}", i + 1, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {passed}/{} criteria pass", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
