use relvp::gevrey::Family;

/// Coefficients from symbolic differentiation, `(family, m, i, j, num, den)`.
pub const GOLDEN: &[(Family, usize, usize, usize, i64, i64)] = &[
    (Family::C, 1, 0, 0, 1, 1),
    (Family::C, 2, 0, 0, 1, 1),
    (Family::C, 3, 0, 1, 1, 1),
    (Family::C, 3, 1, 0, 3, 1),
    (Family::C, 4, 0, 1, 1, 1),
    (Family::C, 4, 1, 0, 1, 1),
    (Family::C, 5, 0, 2, 1, 1),
    (Family::C, 5, 1, 1, 10, 1),
    (Family::C, 5, 2, 0, 5, 1),
    (Family::C, 6, 0, 2, 1, 1),
    (Family::C, 6, 1, 1, 10, 3),
    (Family::C, 6, 2, 0, 1, 1),
    (Family::C, 7, 0, 3, 1, 1),
    (Family::C, 7, 1, 2, 21, 1),
    (Family::C, 7, 2, 1, 35, 1),
    (Family::C, 7, 3, 0, 7, 1),
    (Family::C, 8, 0, 3, 1, 1),
    (Family::C, 8, 1, 2, 7, 1),
    (Family::C, 8, 2, 1, 7, 1),
    (Family::C, 8, 3, 0, 1, 1),
    (Family::C, 9, 0, 4, 1, 1),
    (Family::C, 9, 1, 3, 36, 1),
    (Family::C, 9, 2, 2, 126, 1),
    (Family::C, 9, 3, 1, 84, 1),
    (Family::C, 9, 4, 0, 9, 1),
    (Family::C, 10, 0, 4, 1, 1),
    (Family::C, 10, 1, 3, 12, 1),
    (Family::C, 10, 2, 2, 126, 5),
    (Family::C, 10, 3, 1, 12, 1),
    (Family::C, 10, 4, 0, 1, 1),
    (Family::D, 2, 0, 0, 1, 1),
    (Family::D, 3, 0, 0, 2, 1),
    (Family::D, 4, 0, 1, 2, 1),
    (Family::D, 4, 1, 0, 10, 1),
    (Family::D, 5, 0, 1, 3, 1),
    (Family::D, 5, 1, 0, 5, 1),
    (Family::D, 6, 0, 2, 3, 1),
    (Family::D, 6, 1, 1, 42, 1),
    (Family::D, 6, 2, 0, 35, 1),
    (Family::D, 7, 0, 2, 4, 1),
    (Family::D, 7, 1, 1, 56, 3),
    (Family::D, 7, 2, 0, 28, 3),
    (Family::D, 8, 0, 3, 4, 1),
    (Family::D, 8, 1, 2, 108, 1),
    (Family::D, 8, 2, 1, 252, 1),
    (Family::D, 8, 3, 0, 84, 1),
    (Family::D, 9, 0, 3, 5, 1),
    (Family::D, 9, 1, 2, 45, 1),
    (Family::D, 9, 2, 1, 63, 1),
    (Family::D, 9, 3, 0, 15, 1),
    (Family::D, 10, 0, 4, 5, 1),
    (Family::D, 10, 1, 3, 220, 1),
    (Family::D, 10, 2, 2, 990, 1),
    (Family::D, 10, 3, 1, 924, 1),
    (Family::D, 10, 4, 0, 165, 1),
];

/// Every disagreement between the computed tables and [`GOLDEN`] for `m <= 10`.
pub fn table_mismatches() -> Vec<String> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;
    use relvp::gevrey::{c_coeffs, d_coeffs};

    let mut out = Vec::new();
    let tables = (1..=10).map(|m| c_coeffs(m).unwrap()).chain((2..=10).map(|m| d_coeffs(m).unwrap()));
    for t in tables {
        let expected: Vec<_> = GOLDEN.iter().filter(|g| g.0 == t.family() && g.1 == t.order()).collect();
        let nonzero = t.entries().values().filter(|x| !x.is_zero()).count();
        if nonzero != expected.len() {
            out.push(format!("{:?}^{}: {} nonzero entries, expected {}", t.family(), t.order(), nonzero, expected.len()));
        }
        for g in expected {
            let want = BigRational::new(BigInt::from(g.4), BigInt::from(g.5));
            if t.get(g.2, g.3) != want {
                out.push(format!("{:?}^{}_{},{} = {}, expected {}", t.family(), t.order(), g.2, g.3, t.get(g.2, g.3), want));
            }
        }
    }
    out
}
