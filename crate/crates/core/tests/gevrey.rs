use approx::assert_relative_eq;
use proptest::prelude::*;
use relvp::equilibria::{Equilibrium, Profile};
use relvp::gevrey::{f_derivative, g_derivative, gevrey_decay_check, GevreyParams};
use relvp::par::Execution;
use relvp::spectral::{threshold_plasma, Interaction, ModeSpec, KERNEL_TOL};
use relvp::volterra::{solve_mode, TimeGrid};

mod common;
use common::GOLDEN;

#[test]
fn tables_match_golden_data() {
    let bad = common::table_mismatches();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(GOLDEN.len(), 55);
}

// 50-digit values of f^(m), g^(m) for m = 0..=10.
const REF_A: (f64, f64, f64, f64) = (1.3, 0.8, 0.6, 2.0);
const REF_A_F: [f64; 11] = [
    0.21540279020197255, -0.04832863471606927, 0.022020784749557908, -0.015276306323138428, 0.014332662271472753,
    -0.017035962884714756, 0.024603125091067959, -0.0419289305120982, 0.082513474426767912, -0.18438970085523138,
    0.46166808936528628,
];
const REF_A_G: [f64; 11] = [
    0.0092510945532720518, -0.0041384581316668308, 0.0028027883202231069, -0.0025541627095741752,
    0.0029356751738114362, -0.0040844802224573267, 0.0066861295559995564, -0.012610231672031654,
    0.026963999012314926, -0.064535126905288372, 0.17108869517371528,
];
const REF_B: (f64, f64, f64, f64) = (1.0, 1.0, 0.9, 1.0);
const REF_B_F: [f64; 11] = [
    0.75209326238293472, -0.75630252100840341, 1.7976021554068013, -7.2740910501620331, 42.804282663877794,
    -333.60175123135786, 3245.1727369331603, -37869.205903219129, 515525.01616273277, -8020440.3218645886,
    140377544.08841348,
];
const REF_B_G: [f64; 11] = [
    0.16362049183137297, -0.31748002008411202, 1.0295883059105997, -4.894311750855493, 31.438032870259398,
    -257.76270770341268, 2587.7567894261443, -30838.935426099643, 426108.82237419268, -6702890.333920338,
    118319423.48381555,
];

#[test]
fn closed_forms_match_high_precision_values() {
    for (spec, fs, gs) in [(REF_A, REF_A_F, REF_A_G), (REF_B, REF_B_F, REF_B_G)] {
        let p = GevreyParams::new(spec.0, spec.1, spec.2).unwrap();
        let w = spec.3 * p.radius();
        for m in 0..=10 {
            assert_relative_eq!(f_derivative(&p, m, w).unwrap(), fs[m], max_relative = 1e-13);
            assert_relative_eq!(g_derivative(&p, m, w).unwrap(), gs[m], max_relative = 1e-13);
        }
    }
}

/// Romberg-extrapolated central difference of `h` at `x`, order `order`.
fn richardson(h: impl Fn(f64) -> f64, x: f64, order: usize, step: f64) -> f64 {
    const LEVELS: usize = 6;
    let stencil = |s: f64| -> f64 {
        // central difference of the given order via binomial weights
        let mut total = 0.0;
        let mut binom = 1.0;
        for k in 0..=order {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            total += sign * binom * h(x + (order as f64 / 2.0 - k as f64) * s);
            binom = binom * (order - k) as f64 / (k + 1) as f64;
        }
        total / s.powi(order as i32)
    };
    let mut table = vec![vec![0.0; LEVELS]; LEVELS];
    for i in 0..LEVELS {
        table[i][0] = stencil(step / 2f64.powi(i as i32));
        for j in 1..=i {
            let r = 4f64.powi(j as i32);
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (r - 1.0);
        }
    }
    table[LEVELS - 1][LEVELS - 1]
}

fn fd_step(p: &GevreyParams, w: f64, order: usize) -> f64 {
    0.5 * (w - p.k * p.v / p.l) / order as f64
}

/// Direct differences of `f` and `g` for low orders.
fn check_direct(p: &GevreyParams, w: f64) {
    let f0 = |x: f64| f_derivative(p, 0, x).unwrap();
    let g0 = |x: f64| g_derivative(p, 0, x).unwrap();
    for m in 1..=3 {
        let h = fd_step(p, w, m);
        assert_relative_eq!(richardson(f0, w, m, h), f_derivative(p, m, w).unwrap(), max_relative = 1e-6);
        assert_relative_eq!(richardson(g0, w, m, h), g_derivative(p, m, w).unwrap(), max_relative = 1e-6);
    }
}

/// First differences of the closed form of order `m - 1` against order `m`.
///
/// Starting from the elementary `f` and `g`, this validates every order up to
/// 8 without the round-off of a single eighth-order stencil.
fn check_chained(p: &GevreyParams, w: f64) {
    let h = fd_step(p, w, 1);
    for m in 1..=8 {
        let fm = |x: f64| f_derivative(p, m - 1, x).unwrap();
        let gm = |x: f64| g_derivative(p, m - 1, x).unwrap();
        assert_relative_eq!(richardson(fm, w, 1, h), f_derivative(p, m, w).unwrap(), max_relative = 1e-6);
        assert_relative_eq!(richardson(gm, w, 1, h), g_derivative(p, m, w).unwrap(), max_relative = 1e-6);
    }
}

#[test]
fn finite_differences_at_twice_radius() {
    for &v in &[0.1, 0.5, 0.9] {
        let p = GevreyParams::new(1.0, 1.0, v).unwrap();
        check_direct(&p, 2.0 * p.radius());
        check_chained(&p, 2.0 * p.radius());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn finite_differences_random_tuples(
        k in 0.2f64..3.0,
        l in 0.2f64..3.0,
        v in 0.02f64..0.98,
        scale in 1.0f64..6.0,
    ) {
        let p = GevreyParams::new(k, l, v).unwrap();
        let w = scale * p.radius();
        check_direct(&p, w);
        check_chained(&p, w);
    }
}

#[test]
fn magnitudes_decrease_beyond_radius() {
    for &v in &[0.1, 0.5, 0.95] {
        let p = GevreyParams::new(0.7, 1.3, v).unwrap();
        let r = p.radius();
        let grid: Vec<f64> = (0..100).map(|i| r * (1.0 + 9.0 * i as f64 / 99.0)).collect();
        for m in 0..=12 {
            for pair in grid.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                assert!(f_derivative(&p, m, b).unwrap().abs() < f_derivative(&p, m, a).unwrap().abs());
                assert!(g_derivative(&p, m, b).unwrap().abs() < g_derivative(&p, m, a).unwrap().abs());
            }
        }
    }
}

#[test]
fn g_decays_like_inverse_square() {
    let p = GevreyParams::new(2.0, 0.5, 0.8).unwrap();
    let limit = p.k * p.k * p.v.powi(3) / (3.0 * p.l * p.l);
    let mut last = f64::INFINITY;
    for &w in &[1e2, 1e3, 1e4, 1e5] {
        let err = (g_derivative(&p, 0, w).unwrap() * w * w / limit - 1.0).abs();
        assert!(err < last);
        last = err;
    }
    assert!(last < 1e-8);
}

#[test]
fn convolution_part_of_supercritical_mode_is_certified() {
    let eq = Equilibrium::juttner(0.2).unwrap();
    let kc = threshold_plasma(&eq, KERNEL_TOL).unwrap().kappa_crit();
    let mode = ModeSpec::new(1.2 * kc, Interaction::Plasma, eq, Profile::default()).unwrap();
    let grid = TimeGrid::new(0.05, 300.0).unwrap();
    let traj = solve_mode(&mode, grid, Execution::default()).unwrap();
    // rho - alpha is the memory convolution
    let conv: Vec<f64> = traj.rho.iter().zip(&traj.alpha).map(|(r, a)| (r.re - a).hypot(r.im)).collect();
    let cert = gevrey_decay_check(&grid.times(), &conv, 3.0, 6, 10.0).unwrap();
    assert!(cert.passed(), "{:?}", cert.rows);
}
