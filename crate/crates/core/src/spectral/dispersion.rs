//! Real roots of `L[beta](2 pi i y) = 1` on `|y| >= kappa`.

use super::{laplace_beta_imag, Interaction, ModeSpec};
use crate::error::{Error, Result};

/// `|h(kappa)|` below this counts as the critical mode itself.
const CRITICAL_BAND: f64 = 1e-9;

/// Brent's method on a bracketing interval.
pub fn brent(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, xtol: f64) -> Result<f64> {
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket { lo: a, hi: b });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
    }
    Err(Error::NoConvergence("brent"))
}

/// The frequency `y0 >= kappa` of the neutral oscillation of a subcritical
/// plasma mode, or `None` when the mode is supercritical or gravitational.
pub fn find_y0(mode: &ModeSpec) -> Result<Option<f64>> {
    if mode.interaction == Interaction::Gravitational {
        return Ok(None);
    }
    let k = mode.kappa;
    let h = |y: f64| Ok(laplace_beta_imag(mode, y)?.re - 1.0);
    let h0 = h(k)?;
    if h0 < -CRITICAL_BAND {
        return Ok(None);
    }
    if h0 <= CRITICAL_BAND {
        return Ok(Some(k));
    }
    let mut hi = 2.0 * k;
    while h(hi)? > 0.0 {
        hi *= 2.0;
        if hi > 1e8 * k {
            return Err(Error::NoConvergence("find_y0 bracket"));
        }
    }
    brent(h, k, hi, 1e-13 * hi).map(Some)
}

/// Largest `Re L[beta](2 pi i y)` over `kappa <= |y| <= y_max` sampled on
/// `n` points; for plasma modes the maximum sits at `|y| = kappa`.
pub fn sup_re_laplace_beta(mode: &ModeSpec, y_max: f64, n: usize) -> Result<(f64, f64)> {
    let k = mode.kappa;
    let mut best = (f64::NEG_INFINITY, k);
    for i in 0..n.max(2) {
        let y = k + (y_max - k) * i as f64 / (n.max(2) - 1) as f64;
        let r = laplace_beta_imag(mode, y)?.re;
        if r > best.0 {
            best = (r, y);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::{Equilibrium, Profile};
    use crate::spectral::{laplace_beta_imag, threshold_plasma, KERNEL_TOL};
    use proptest::prelude::*;

    fn plasma_supercritical(mode: &ModeSpec) -> Result<bool> {
        let thr = threshold_plasma(&mode.equilibrium, KERNEL_TOL)?.value;
        Ok(mode.kappa * mode.kappa > thr)
    }

    fn mode(theta: f64, kappa: f64) -> ModeSpec {
        ModeSpec::new(kappa, Interaction::Plasma, Equilibrium::juttner(theta).unwrap(), Profile::default()).unwrap()
    }

    #[test]
    fn brent_finds_cubic_root() {
        let r = brent(|x| Ok(x * x * x - 2.0), 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
        assert!(brent(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn subcritical_root_and_supercritical_none() {
        let eq = Equilibrium::juttner(0.2).unwrap();
        let kc = threshold_plasma(&eq, KERNEL_TOL).unwrap().kappa_crit();
        let sub = mode(0.2, 0.8 * kc);
        let y0 = find_y0(&sub).unwrap().expect("subcritical mode oscillates");
        assert!(y0 > sub.kappa);
        assert!((laplace_beta_imag(&sub, y0).unwrap().re - 1.0).abs() < 1e-10);
        assert!(find_y0(&mode(0.2, 1.05 * kc)).unwrap().is_none());
        let crit = find_y0(&mode(0.2, kc)).unwrap().unwrap();
        assert!((crit - kc).abs() < 1e-4);
        assert!(!plasma_supercritical(&sub).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn plasma_transform_decreases_beyond_kappa(f in 1.0f64..4.0) {
            let m = mode(0.5, 0.9);
            let a = laplace_beta_imag(&m, f * m.kappa).unwrap().re;
            let b = laplace_beta_imag(&m, (f + 0.1) * m.kappa).unwrap().re;
            prop_assert!(b < a);
        }
    }
}
