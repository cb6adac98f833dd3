use std::path::Path;

use relvp::decay::{bootstrap_s, envelope, exp_test, fit_stretched, Envelope, FitWindow};
use relvp::equilibria::Profile;
use relvp::gevrey::appendix_battery;
use relvp::par::{self, Execution};
use relvp::quadrature::Tolerance;
use relvp::spectral::{find_y0, laplace_beta, threshold_astro, threshold_plasma, ModeSpec};
use relvp::volterra::{solve_mode, supercritical, TimeGrid};

use crate::output::{num, Sink};
use crate::settings::Settings;
use crate::CliError;

fn grid(lo: f64, hi: f64, n: usize, log: bool) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| {
            let f = i as f64 / (n - 1) as f64;
            if log {
                lo * (hi / lo).powf(f)
            } else {
                lo + (hi - lo) * f
            }
        })
        .collect()
}

fn range(cfg: &Settings, lo: &str, hi: &str, n: &str) -> Result<(f64, f64, usize), CliError> {
    let (a, b): (f64, f64) = (cfg.get(lo)?, cfg.get(hi)?);
    let n: usize = cfg.get(n)?;
    if n == 0 || !(a <= b) || (a == b && n > 1) {
        return Err(CliError::Usage(format!("empty range: {lo} = {a}, {hi} = {b}, {n} points")));
    }
    Ok((a, b, n))
}

fn mode(cfg: &Settings, kappa: f64) -> Result<ModeSpec, CliError> {
    ModeSpec::new(kappa, cfg.interaction()?, cfg.equilibrium()?, Profile::default())
        .map_err(|e| CliError::Usage(e.to_string()))
}

pub fn threshold(cfg: &Settings, out: Option<&Path>) -> Result<(), CliError> {
    let (lo, hi, n) = range(cfg, "theta-min", "theta-max", "points")?;
    if !(lo > 0.0) {
        return Err(CliError::Usage("theta-min must be positive".into()));
    }
    let tol = Tolerance::new(1e-16, cfg.positive("tol")?);
    let thetas = grid(lo, hi, n, true);
    let rows = par::map(Execution::default(), &thetas, |&th| -> relvp::Result<String> {
        let eq = relvp::equilibria::Equilibrium::juttner(th)?;
        let p = threshold_plasma(&eq, tol)?.kappa_crit();
        let a = threshold_astro(&eq, tol)?.kappa_crit();
        Ok(format!("{},{},{}", num(th), num(p), num(a)))
    });
    let mut sink = Sink::open(out)?;
    sink.header("threshold", cfg)?;
    sink.line("theta,kappa_crit_plasma,kappa_crit_astro")?;
    for r in rows {
        sink.line(&r?)?;
    }
    sink.finish()
}

pub fn evolve(cfg: &Settings, out: Option<&Path>) -> Result<(), CliError> {
    let m = mode(cfg, cfg.positive("kappa")?)?;
    let g = TimeGrid::new(cfg.positive("dt")?, cfg.positive("t-max")?).map_err(|e| CliError::Usage(e.to_string()))?;
    let traj = solve_mode(&m, g, Execution::default())?;
    let mut sink = Sink::open(out)?;
    sink.header("evolve", cfg)?;
    if traj.growth {
        sink.line(&format!("# growth=true steps_completed={}", traj.steps_completed()))?;
    }
    sink.line("t,re_rho,im_rho,abs_rho,alpha,beta")?;
    for j in 0..traj.rho.len() {
        let r = traj.rho[j];
        sink.line(&format!(
            "{},{},{},{},{},{}",
            num(g.t(j)),
            num(r.re),
            num(r.im),
            num(r.norm()),
            num(traj.alpha[j]),
            num(traj.beta[j])
        ))?;
    }
    sink.finish()
}

pub fn dispersion(mut cfg: Settings, out: Option<&Path>) -> Result<(), CliError> {
    let kappa = cfg.positive("kappa")?;
    let m = mode(&cfg, kappa)?;
    if cfg.raw("y-min").is_none() {
        cfg.insert("y-min", 0.0);
    }
    if cfg.raw("y-max").is_none() {
        cfg.insert("y-max", 3.0 * kappa);
    }
    let (x0, x1, nx) = range(&cfg, "x-min", "x-max", "x-points")?;
    let (y0, y1, ny) = range(&cfg, "y-min", "y-max", "y-points")?;
    if x0 < 0.0 {
        return Err(CliError::Usage("x must be >= 0 (closed right half-plane)".into()));
    }
    let xs = grid(x0, x1, nx, false);
    let ys = grid(y0, y1, ny, false);
    let rows = par::map_range(Execution::default(), nx * ny, |k| -> relvp::Result<String> {
        let (x, y) = (xs[k / ny], ys[k % ny]);
        let l = laplace_beta(&m, x, y)?;
        Ok(format!("{},{},{},{},{}", num(x), num(y), num(l.re), num(l.im), num((l - 1.0).norm())))
    });
    let mut sink = Sink::open(out)?;
    sink.header("dispersion", &cfg)?;
    sink.line("x,y,re_Lbeta,im_Lbeta,dist_to_one")?;
    for r in rows {
        sink.line(&r?)?;
    }
    sink.finish()
}

fn read_trajectory(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let bad = |msg: String| CliError::Usage(format!("{}: {msg}", path.display()));
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header: Vec<&str> = lines.next().ok_or_else(|| bad("no header row".into()))?.split(',').map(str::trim).collect();
    let col = |name: &str| header.iter().position(|h| *h == name).ok_or_else(|| bad(format!("missing column {name}")));
    let (ti, ri) = (col("t")?, col("abs_rho")?);
    let (mut t, mut r) = (Vec::new(), Vec::new());
    for (n, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        let parse = |i: usize| -> Result<f64, CliError> {
            cells
                .get(i)
                .and_then(|c| c.trim().parse().ok())
                .ok_or_else(|| bad(format!("row {}: bad number", n + 1)))
        };
        t.push(parse(ti)?);
        r.push(parse(ri)?);
    }
    Ok((t, r))
}

fn fit_window(cfg: &Settings) -> Result<FitWindow, CliError> {
    let mut w = match cfg.opt::<f64>("kappa")? {
        Some(k) if k > 0.0 => FitWindow::for_mode(k),
        Some(k) => return Err(CliError::Usage(format!("kappa must be positive, got {k}"))),
        None => FitWindow::default(),
    };
    if let Some(a) = cfg.opt("t-min")? {
        w.t_min = a;
    }
    if let Some(b) = cfg.opt("t-max")? {
        w.t_max = b;
    }
    Ok(w)
}

pub fn fit(cfg: &Settings, out: Option<&Path>) -> Result<(), CliError> {
    let path: String = cfg.get("input")?;
    let (t, r) = read_trajectory(Path::new(&path))?;
    let level: f64 = cfg.get("level")?;
    if !(level > 0.0 && level < 1.0) {
        return Err(CliError::Usage(format!("level must lie in (0, 1), got {level}")));
    }
    let env: Envelope = envelope(&t, &r)?.window(&fit_window(cfg)?);
    let f = fit_stretched(&env)?;
    let (lo, hi) = bootstrap_s(&env, cfg.count("reps")?, cfg.get("seed")?, level)?;
    let verdict = exp_test(&env)?.verdict;
    let mut sink = Sink::open(out)?;
    sink.header("fit", cfg)?;
    sink.line(&format!(
        "c={} eps={} s={} s_ci_lo={} s_ci_hi={} verdict={}",
        num(f.c),
        num(f.eps),
        num(f.s),
        num(lo),
        num(hi),
        verdict.as_str()
    ))?;
    sink.finish()
}

pub fn appendix_verify(cfg: &Settings, out: Option<&Path>) -> Result<(), CliError> {
    let b = appendix_battery(cfg.count("m-max")?, cfg.count("n-max")?)?;
    let mut sink = Sink::open(out)?;
    sink.header("appendix-verify", cfg)?;
    for c in &b.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        sink.line(&format!("{status}  {:<32} {}", c.name, c.detail))?;
    }
    sink.finish()?;
    if let Some(p) = cfg.raw("margins") {
        let mut csv = Sink::open(Some(Path::new(p)))?;
        csv.header("appendix-verify", cfg)?;
        csv.line("kind,m,v,value,bound,margin")?;
        for m in &b.margins {
            let v = if m.v.is_nan() { String::new() } else { num(m.v) };
            csv.line(&format!("{},{},{},{},{},{}", m.kind, m.m, v, num(m.value), num(m.bound), num(m.ratio())))?;
        }
        csv.finish()?;
    }
    if b.passed() {
        Ok(())
    } else {
        Err(CliError::Compute("appendix checks failed".into()))
    }
}

struct SweepRow {
    supercritical: Option<bool>,
    y0: Option<f64>,
    fit: Option<(f64, f64, f64, &'static str)>,
    growth: bool,
    error: Option<String>,
}

fn sweep_row(m: &ModeSpec, g: TimeGrid) -> SweepRow {
    let mut row = SweepRow { supercritical: None, y0: None, fit: None, growth: false, error: None };
    let run = |row: &mut SweepRow| -> relvp::Result<()> {
        row.supercritical = Some(supercritical(m)?);
        row.y0 = find_y0(m)?;
        let traj = solve_mode(m, g, Execution::default())?;
        row.growth = traj.growth;
        if traj.growth {
            return Ok(());
        }
        let n = traj.rho.len();
        let t: Vec<f64> = (0..n).map(|j| g.t(j)).collect();
        let r: Vec<f64> = traj.rho[..n].iter().map(|z| z.norm()).collect();
        let env = envelope(&t, &r)?.window(&FitWindow::for_mode(m.kappa));
        let f = fit_stretched(&env)?;
        row.fit = Some((f.c, f.eps, f.s, exp_test(&env)?.verdict.as_str()));
        Ok(())
    };
    if let Err(e) = run(&mut row) {
        row.error = Some(e.to_string().replace(',', ";"));
    }
    row
}

pub fn sweep(cfg: &Settings, out: Option<&Path>) -> Result<(), CliError> {
    let (lo, hi, n) = range(cfg, "kappa-min", "kappa-max", "kappa-points")?;
    if !(lo > 0.0) {
        return Err(CliError::Usage("kappa-min must be positive".into()));
    }
    let g = TimeGrid::new(cfg.positive("dt")?, cfg.positive("t-max")?).map_err(|e| CliError::Usage(e.to_string()))?;
    let kappas = grid(lo, hi, n, false);
    let modes = kappas.iter().map(|&k| mode(cfg, k)).collect::<Result<Vec<_>, _>>()?;
    let rows = par::map(Execution::default(), &modes, |m| sweep_row(m, g));
    let mut sink = Sink::open(out)?;
    sink.header("sweep", cfg)?;
    sink.line("kappa,supercritical_flag,y0,fit_c,fit_eps,fit_s,verdict,growth,error")?;
    let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
    for (k, r) in kappas.iter().zip(rows) {
        let flag = r.supercritical.map(|b| (b as u8).to_string()).unwrap_or_default();
        let (c, e, s, v) = match r.fit {
            Some((c, e, s, v)) => (num(c), num(e), num(s), v.to_string()),
            None => Default::default(),
        };
        sink.line(&format!(
            "{},{flag},{},{c},{e},{s},{v},{},{}",
            num(*k),
            opt(r.y0),
            r.growth as u8,
            r.error.unwrap_or_default()
        ))?;
    }
    sink.finish()
}
