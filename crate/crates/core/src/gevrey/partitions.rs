use std::f64::consts::PI;

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionBound {
    pub m: usize,
    pub count: u128,
    pub asymptote: f64,
}

impl PartitionBound {
    pub fn ratio(&self) -> f64 {
        self.count as f64 / self.asymptote
    }
}

/// Exact partition counts `p(0..=m)` by the coin-change recursion.
///
/// `u128` holds `p(m)` well past `m = 1000`.
pub fn partition_counts(m: usize) -> Vec<u128> {
    let mut p = vec![0u128; m + 1];
    p[0] = 1;
    for part in 1..=m {
        for total in part..=m {
            p[total] += p[total - part];
        }
    }
    p
}

/// `p(m)` with the Hardy–Ramanujan leading term `exp(pi sqrt(2m/3)) / (4 sqrt(3) m)`.
pub fn partition_bound(m: usize) -> Result<PartitionBound> {
    if m < 1 {
        return Err(domain("partition bound needs m >= 1"));
    }
    let count = partition_counts(m)[m];
    let mf = m as f64;
    let asymptote = (PI * (2.0 * mf / 3.0).sqrt()).exp() / (4.0 * 3f64.sqrt() * mf);
    Ok(PartitionBound { m, count, asymptote })
}
