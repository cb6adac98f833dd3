use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    C,
    D,
}

/// One order of the C or D coefficient family, keyed by `(i, j)`.
///
/// Only the row `i + j = row_sum()` is populated; absent keys read as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    family: Family,
    order: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl CoeffTable {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `i + j` of the populated row.
    pub fn row_sum(&self) -> usize {
        row_sum(self.family, self.order)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), BigRational> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn sum(&self) -> BigRational {
        self.entries.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Coefficients along the row ordered by `i`.
    pub fn row_f64(&self) -> Vec<f64> {
        let n = self.row_sum();
        (0..=n).map(|i| self.get(i, n - i).to_f64().unwrap_or(f64::NAN)).collect()
    }

    fn lookup(&self, i: isize, j: isize) -> BigRational {
        if i < 0 || j < 0 {
            BigRational::zero()
        } else {
            self.get(i as usize, j as usize)
        }
    }
}

fn row_sum(family: Family, m: usize) -> usize {
    match family {
        Family::C => (m - 1) / 2,
        Family::D => m / 2 - 1,
    }
}

fn int(n: isize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn seed(family: Family, order: usize) -> CoeffTable {
    let mut entries = BTreeMap::new();
    entries.insert((0, 0), int(1));
    CoeffTable { family, order, entries }
}

fn c_step(prev: &CoeffTable) -> CoeffTable {
    let m = prev.order + 1;
    let mut entries = BTreeMap::new();
    if m % 2 == 1 {
        let n = ((m - 1) / 2) as isize;
        for i in 0..=n {
            let c = int(4 * n - 2 * i + 1) * prev.lookup(i - 1, n - i)
                + int(2 * i + 1) * prev.lookup(i, n - 1 - i);
            entries.insert((i as usize, (n - i) as usize), c);
        }
    } else {
        let n = ((m - 2) / 2) as isize;
        let denom = int((n + 1) * (2 * n + 1));
        for i in 0..=n {
            let c = (int(2 * n - i + 1) * prev.lookup(i, n - i)
                + int(i + 1) * prev.lookup(i + 1, n - i - 1))
                / denom.clone();
            entries.insert((i as usize, (n - i) as usize), c);
        }
    }
    CoeffTable { family: Family::C, order: m, entries }
}

fn d_step(prev: &CoeffTable) -> CoeffTable {
    let m = prev.order + 1;
    let mut entries = BTreeMap::new();
    if m % 2 == 1 {
        let n = ((m - 1) / 2) as isize;
        let denom = int(2 * n * (2 * n - 1));
        for i in 0..n {
            let c = (int(4 * n - 2 * i) * prev.lookup(i, n - i - 1)
                + int(2 * i + 2) * prev.lookup(i + 1, n - i - 2))
                / denom.clone();
            entries.insert((i as usize, (n - i - 1) as usize), c);
        }
    } else {
        let n = ((m - 2) / 2) as isize;
        for i in 0..=n {
            let c = int(2 * i + 1) * prev.lookup(i, n - i - 1)
                + int(4 * n - 2 * i + 3) * prev.lookup(i - 1, n - i);
            entries.insert((i as usize, (n - i) as usize), c);
        }
    }
    CoeffTable { family: Family::D, order: m, entries }
}

/// Tables `C^1 ..= C^m_max`.
pub fn c_table_sequence(m_max: usize) -> Vec<CoeffTable> {
    let mut out = Vec::with_capacity(m_max);
    if m_max == 0 {
        return out;
    }
    out.push(seed(Family::C, 1));
    if m_max >= 2 {
        out.push(seed(Family::C, 2));
    }
    while out.len() < m_max {
        let next = c_step(out.last().unwrap());
        out.push(next);
    }
    out
}

/// Tables `D^2 ..= D^m_max`.
pub fn d_table_sequence(m_max: usize) -> Vec<CoeffTable> {
    let mut out = Vec::new();
    if m_max < 2 {
        return out;
    }
    out.push(seed(Family::D, 2));
    while out.len() + 1 < m_max {
        let next = d_step(out.last().unwrap());
        out.push(next);
    }
    out
}

/// Exact `C^m` coefficients for the derivatives of `artanh(Kv/(L w))`.
pub fn c_coeffs(m: usize) -> Result<CoeffTable> {
    if m < 1 {
        return Err(domain("C coefficients start at order 1"));
    }
    Ok(c_table_sequence(m).pop().unwrap())
}

/// Exact `D^m` coefficients for the derivatives of `(L w/K) artanh(Kv/(L w)) - v`.
pub fn d_coeffs(m: usize) -> Result<CoeffTable> {
    if m < 2 {
        return Err(domain("D coefficients start at order 2"));
    }
    Ok(d_table_sequence(m).pop().unwrap())
}
