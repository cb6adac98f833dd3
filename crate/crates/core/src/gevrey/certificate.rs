use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateRow {
    pub n: usize,
    /// `max |xi|^(N/s) |phi(xi)|` over the grid.
    pub peak: f64,
    pub xi_at_peak: f64,
    /// Smallest `C` with `peak <= C (C N)^N`.
    pub c: f64,
    /// False when the peak sits on the last grid point, so the sup was not resolved.
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayCertificate {
    pub s: f64,
    pub budget: f64,
    pub rows: Vec<CertificateRow>,
}

impl DecayCertificate {
    /// Smallest constant that works for every `N` checked.
    pub fn c(&self) -> f64 {
        self.rows.iter().map(|r| r.c).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.interior) && self.c() <= self.budget
    }

    /// First `N` whose row breaks the certificate.
    pub fn first_failure(&self) -> Option<usize> {
        self.rows.iter().find(|r| !r.interior || r.c > self.budget).map(|r| r.n)
    }
}

/// Finite check of `|xi|^(N/s) |phi(xi)| <= C (C N)^N` for `N = 1..=n_max`.
///
/// Only samples with `|xi| > 1` enter. Rows whose maximum falls on the
/// largest `|xi|` are marked unresolved, and the certificate then fails.
pub fn gevrey_decay_check(xi: &[f64], values: &[f64], s: f64, n_max: usize, budget: f64) -> Result<DecayCertificate> {
    if !(s > 1.0) {
        return Err(domain(format!("Gevrey index must exceed 1, got {s}")));
    }
    if xi.len() != values.len() {
        return Err(domain("abscissae and values differ in length"));
    }
    let mut pts: Vec<(f64, f64)> = xi
        .iter()
        .zip(values)
        .filter(|(x, _)| x.abs() > 1.0)
        .map(|(x, y)| (x.abs(), y.abs()))
        .collect();
    if pts.len() < 3 {
        return Err(domain("need at least three samples with |xi| > 1"));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let last = pts.len() - 1;
    let rows = (1..=n_max)
        .map(|n| {
            let e = n as f64 / s;
            let (idx, peak) = pts
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| (i, (e * x.ln()).exp() * y))
                .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
            let nf = n as f64;
            let c = ((peak.ln() - nf * nf.ln()) / (nf + 1.0)).exp();
            CertificateRow {
                n,
                peak,
                xi_at_peak: pts[idx].0,
                c,
                interior: idx < last,
            }
        })
        .collect();
    Ok(DecayCertificate { s, budget, rows })
}

/// Samples `phi` on a logarithmic grid over `(1, xi_max]` and runs the check.
pub fn gevrey_decay_check_fn(
    phi: impl Fn(f64) -> f64,
    xi_max: f64,
    points: usize,
    s: f64,
    n_max: usize,
    budget: f64,
) -> Result<DecayCertificate> {
    if !(xi_max > 1.0) || points < 3 {
        return Err(domain("need xi_max > 1 and at least three points"));
    }
    let step = xi_max.ln() / points as f64;
    let xi: Vec<f64> = (1..=points).map(|i| (step * i as f64).exp()).collect();
    let values: Vec<f64> = xi.iter().map(|&x| phi(x)).collect();
    gevrey_decay_check(&xi, &values, s, n_max, budget)
}
