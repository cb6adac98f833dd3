//! Decay diagnostics for computed `|rho(t)|`: peak envelopes, stretched
//! exponential fits `c exp(-eps t^{1/s})`, an exponential-versus-slower
//! verdict, and rational-decay constants.

use crate::error::{domain, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Samples closer than this multiple of machine epsilon to the largest
/// magnitude are rounding noise.
pub const NOISE_FLOOR_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    /// Strict local maxima.
    Peaks,
    /// Fewer than three maxima: endpoints plus whatever maxima exist.
    TooFewPeaks,
    /// Caller-supplied points.
    Given,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub t: Vec<f64>,
    pub r: Vec<f64>,
    pub kind: EnvelopeKind,
}

impl Envelope {
    pub fn from_points(t: Vec<f64>, r: Vec<f64>) -> Result<Self> {
        if t.len() != r.len() {
            return Err(domain("envelope abscissae and values differ in length"));
        }
        Ok(Envelope { t, r, kind: EnvelopeKind::Given })
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Points with `t_min <= t <= t_max` and `r` above the noise floor.
    pub fn window(&self, w: &FitWindow) -> Envelope {
        let max = self.r.iter().cloned().fold(0.0, f64::max);
        let floor = w.noise_rel * max;
        let (t, r) = self
            .t
            .iter()
            .zip(&self.r)
            .filter(|(&t, &r)| t >= w.t_min && t <= w.t_max && r > floor)
            .map(|(&t, &r)| (t, r))
            .unzip();
        Envelope { t, r, kind: self.kind }
    }
}

/// Local maxima of `|rho|`.
pub fn envelope(t: &[f64], r: &[f64]) -> Result<Envelope> {
    if t.len() != r.len() || t.is_empty() {
        return Err(domain("need equal nonzero numbers of times and magnitudes"));
    }
    let mut et = vec![];
    let mut er = vec![];
    for i in 1..r.len().saturating_sub(1) {
        if r[i] > r[i - 1] && r[i] > r[i + 1] {
            et.push(t[i]);
            er.push(r[i]);
        }
    }
    if et.len() >= 3 {
        return Ok(Envelope { t: et, r: er, kind: EnvelopeKind::Peaks });
    }
    let n = r.len() - 1;
    let mut pts: Vec<(f64, f64)> = vec![(t[0], r[0])];
    pts.extend(et.into_iter().zip(er));
    if n > 0 {
        pts.push((t[n], r[n]));
    }
    let (t, r) = pts.into_iter().unzip();
    Ok(Envelope { t, r, kind: EnvelopeKind::TooFewPeaks })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitWindow {
    pub t_min: f64,
    pub t_max: f64,
    pub noise_rel: f64,
}

impl FitWindow {
    /// Excludes the transient `t < 10 / kappa` and rounding-level peaks.
    pub fn for_mode(kappa: f64) -> Self {
        FitWindow { t_min: 10.0 / kappa, t_max: f64::INFINITY, noise_rel: NOISE_FLOOR_FACTOR * f64::EPSILON }
    }
}

impl Default for FitWindow {
    fn default() -> Self {
        FitWindow { t_min: 0.0, t_max: f64::INFINITY, noise_rel: NOISE_FLOOR_FACTOR * f64::EPSILON }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub c: f64,
    pub eps: f64,
    pub s: f64,
    /// Root-mean-square residual of `ln r`.
    pub rms: f64,
    pub points: usize,
}

impl DecayFit {
    /// Slower than exponential.
    pub fn accepted(&self) -> bool {
        self.s > 1.0
    }
}

const Q_MIN: f64 = 0.02;
const Q_MAX: f64 = 3.0;

struct Projected {
    a: f64,
    eps: f64,
    ss: f64,
    grad: f64,
}

/// Least squares of `y = a - eps t^q` at fixed `q`, with the derivative of
/// the residual sum in `q` at the optimal `(a, eps)`.
fn project(t: &[f64], y: &[f64], q: f64) -> Projected {
    let n = t.len() as f64;
    let x: Vec<f64> = t.iter().map(|&ti| ti.powf(q)).collect();
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let eps = -slope;
    let a = my - slope * mx;
    let mut ss = 0.0;
    let mut grad = 0.0;
    for ((&ti, xi), yi) in t.iter().zip(&x).zip(y) {
        let res = a - eps * xi - yi;
        ss += res * res;
        grad += 2.0 * res * (-eps * xi * ti.ln());
    }
    Projected { a, eps, ss, grad }
}

/// Fits `ln r = ln c - eps t^{1/s}` by variable projection in `q = 1/s`.
pub fn fit_stretched(env: &Envelope) -> Result<DecayFit> {
    let pts: Vec<(f64, f64)> = env.t.iter().zip(&env.r).filter(|(&t, &r)| t > 0.0 && r > 0.0).map(|(&t, &r)| (t, r)).collect();
    if pts.len() < 3 {
        return Err(domain(format!("stretched fit needs at least 3 positive points, got {}", pts.len())));
    }
    let t: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let y: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    if y[y.len() - 1] >= y[0] {
        return Err(Error::NoDecay);
    }
    let grid: Vec<f64> = (0..=80).map(|i| Q_MIN * (Q_MAX / Q_MIN).powf(i as f64 / 80.0)).collect();
    let ss: Vec<f64> = grid.iter().map(|&q| project(&t, &y, q).ss).collect();
    let mut ib = 0;
    for i in 1..ss.len() {
        if ss[i] < ss[ib] {
            ib = i;
        }
    }
    let lo = grid[ib.saturating_sub(1)];
    let hi = grid[(ib + 1).min(grid.len() - 1)];
    let g = |q: f64| Ok(project(&t, &y, q).grad);
    let q = match crate::spectral::brent(g, lo, hi, 1e-15) {
        Ok(q) => q,
        // Derivative keeps one sign on the bracket: optimum on the grid edge.
        Err(_) => grid[ib],
    };
    let p = project(&t, &y, q);
    if !(p.eps > 0.0) {
        return Err(Error::NoDecay);
    }
    Ok(DecayFit { c: p.a.exp(), eps: p.eps, s: 1.0 / q, rms: (p.ss / t.len() as f64).sqrt(), points: t.len() })
}

/// Percentile bootstrap interval for `s` over resampled envelope points.
pub fn bootstrap_s(env: &Envelope, reps: usize, seed: u64, level: f64) -> Result<(f64, f64)> {
    let n = env.len();
    if n < 3 {
        return Err(domain("bootstrap needs at least 3 points"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Vec::with_capacity(reps);
    for _ in 0..reps {
        let mut idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        idx.sort_unstable();
        let e = Envelope {
            t: idx.iter().map(|&i| env.t[i]).collect(),
            r: idx.iter().map(|&i| env.r[i]).collect(),
            kind: env.kind,
        };
        if let Ok(f) = fit_stretched(&e) {
            s.push(f.s);
        }
    }
    if s.len() < reps / 2 || s.is_empty() {
        return Err(Error::NoConvergence("bootstrap: too many failed refits"));
    }
    s.sort_by(|a, b| a.partial_cmp(b).expect("finite exponents"));
    let a = 0.5 * (1.0 - level);
    Ok((percentile(&s, a), percentile(&s, 1.0 - a)))
}

fn percentile(sorted: &[f64], p: f64) -> f64 {
    let x = p * (sorted.len() - 1) as f64;
    let i = x.floor() as usize;
    let f = x - i as f64;
    if i + 1 < sorted.len() {
        sorted[i] * (1.0 - f) + sorted[i + 1] * f
    } else {
        sorted[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Exponential,
    SubExponential,
    None,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Exponential => "exponential",
            Verdict::SubExponential => "sub-exponential",
            Verdict::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTest {
    pub verdict: Verdict,
    /// Log-log slope of `lambda(t) = -ln r / t`.
    pub lambda_exponent: f64,
    pub rms_exponential: f64,
    pub rms_stretched: f64,
    pub s: f64,
    /// The two models fit within one residual of each other.
    pub ambiguous: bool,
}

/// `(t, -ln r / t)` on the envelope.
pub fn lambda_curve(env: &Envelope) -> Vec<(f64, f64)> {
    env.t.iter().zip(&env.r).filter(|(&t, &r)| t > 0.0 && r > 0.0).map(|(&t, &r)| (t, -r.ln() / t)).collect()
}

fn line_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let icpt = my - slope * mx;
    let rms = (x.iter().zip(y).map(|(a, b)| (icpt + slope * a - b).powi(2)).sum::<f64>() / n).sqrt();
    (icpt, slope, rms)
}

/// Distinguishes exponential decay (plateauing `lambda`) from slower decay
/// (`lambda -> 0`).
pub fn exp_test(env: &Envelope) -> Result<ExpTest> {
    let none = |s| ExpTest {
        verdict: Verdict::None,
        lambda_exponent: f64::NAN,
        rms_exponential: f64::NAN,
        rms_stretched: f64::NAN,
        s,
        ambiguous: false,
    };
    let pts: Vec<(f64, f64)> = env.t.iter().zip(&env.r).filter(|(&t, &r)| t > 0.0 && r > 0.0).map(|(&t, &r)| (t, r)).collect();
    if pts.len() < 3 {
        return Ok(none(f64::NAN));
    }
    let t: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let y: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let (_, slope, rms_e) = line_fit(&t, &y);
    if !(slope < 0.0) || y[0] - y[y.len() - 1] < 0.01 {
        return Ok(none(f64::NAN));
    }
    let fit = match fit_stretched(env) {
        Ok(f) => f,
        Err(Error::NoDecay) => return Ok(none(f64::NAN)),
        Err(e) => return Err(e),
    };
    let lam: Vec<(f64, f64)> = lambda_curve(env).into_iter().filter(|p| p.1 > 0.0).collect();
    let eta = if lam.len() >= 2 {
        let lx: Vec<f64> = lam.iter().map(|p| p.0.ln()).collect();
        let ly: Vec<f64> = lam.iter().map(|p| p.1.ln()).collect();
        line_fit(&lx, &ly).1
    } else {
        f64::NAN
    };
    let ambiguous = (rms_e - fit.rms).abs() <= fit.rms;
    let verdict = if fit.s <= 1.25 {
        Verdict::Exponential
    } else if ambiguous {
        if eta < -0.1 {
            Verdict::SubExponential
        } else {
            Verdict::Exponential
        }
    } else if eta < 0.0 {
        Verdict::SubExponential
    } else {
        Verdict::Exponential
    };
    Ok(ExpTest { verdict, lambda_exponent: eta, rms_exponential: rms_e, rms_stretched: fit.rms, s: fit.s, ambiguous })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalBound {
    pub m: u32,
    /// `max |f| (1 + kappa t)^m` over the samples.
    pub d_m: f64,
    pub t_at_max: f64,
    /// The maximum sits in the first half of the time range.
    pub bounded: bool,
}

/// Constant `d_m` in `|f(t)| <= d_m / (1 + kappa t)^m`.
pub fn rational_bound_check(t: &[f64], f_abs: &[f64], m: u32, kappa: f64) -> Result<RationalBound> {
    if t.len() != f_abs.len() || t.len() < 2 {
        return Err(domain("need at least two samples"));
    }
    let mut best = (f64::NEG_INFINITY, t[0]);
    for (&ti, &fi) in t.iter().zip(f_abs) {
        let v = fi * (1.0 + kappa * ti).powi(m as i32);
        if v > best.0 {
            best = (v, ti);
        }
    }
    let mid = t[0] + 0.5 * (t[t.len() - 1] - t[0]);
    Ok(RationalBound { m, d_m: best.0, t_at_max: best.1, bounded: best.0.is_finite() && best.1 <= mid })
}

/// Draws used by the bootstrap, exposed for reproducibility checks.
pub fn bootstrap_indices(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}
