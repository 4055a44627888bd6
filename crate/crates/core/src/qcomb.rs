//! q-integers, Gaussian binomial coefficients and Galois numbers.
//!
//! All values are [`BigUint`]. Gaussian binomials are built row by row from
//! the recurrence `[n, k] = q^(n-k) [n-1, k-1] + [n-1, k]`, which is
//! division free. The other form of q-Pascal's rule is left as an
//! independent check in [`verify_identities`].

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{arg, Result};
use crate::report::Report;

fn check_base(q: u64) -> Result<()> {
    if q < 2 {
        return arg(format!("q must be at least 2, got {q}"));
    }
    Ok(())
}

/// `[k]_q = 1 + q + ... + q^(k-1)`.
pub fn q_int(k: i64, q: u64) -> Result<BigUint> {
    check_base(q)?;
    if k < 0 {
        return arg(format!("q-integer of negative k = {k}"));
    }
    Ok(qint(k as u32, q))
}

pub(crate) fn qint(k: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let mut acc = BigUint::zero();
    let mut pow = BigUint::one();
    for _ in 0..k {
        acc += &pow;
        pow *= &q;
    }
    acc
}

/// Signed convenience for callers mixing q-integers into `Z[ω]` coefficients.
pub(crate) fn qint_signed(k: u32, q: u64) -> BigInt {
    BigInt::from(qint(k, q))
}

pub(crate) fn qpow(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

/// Gaussian binomial rows `[n, 0..=n]` for `n = 0..=n_max`.
///
/// Tables are per-instance; nothing is shared between callers.
#[derive(Debug, Clone)]
pub struct QBinomialTable {
    q: u64,
    rows: Vec<Vec<BigUint>>,
}

impl QBinomialTable {
    pub fn new(n_max: usize, q: u64) -> Result<Self> {
        check_base(q)?;
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let mut v = if k < n {
                    prev[k].clone()
                } else {
                    BigUint::zero()
                };
                if k >= 1 {
                    v += qpow(q, (n - k) as u32) * &prev[k - 1];
                }
                row.push(v);
            }
            rows.push(row);
        }
        Ok(QBinomialTable { q, rows })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Out-of-range `(n, k)` is zero. Panics if `n` exceeds the table.
    pub fn get(&self, n: i64, k: i64) -> BigUint {
        if n < 0 || k < 0 || k > n {
            return BigUint::zero();
        }
        self.rows[n as usize][k as usize].clone()
    }

    pub fn galois(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }
}

/// Gaussian binomial coefficient; zero when `n < 0`, `k < 0` or `k > n`.
pub fn q_binomial(n: i64, k: i64, q: u64) -> Result<BigUint> {
    check_base(q)?;
    if n < 0 || k < 0 || k > n {
        return Ok(BigUint::zero());
    }
    Ok(QBinomialTable::new(n as usize, q)?.get(n, k))
}

/// Total number of subspaces of `F_q^n`.
pub fn galois_number(n: i64, q: u64) -> Result<BigUint> {
    check_base(q)?;
    if n < 0 {
        return arg(format!("Galois number of negative n = {n}"));
    }
    Ok(QBinomialTable::new(n as usize, q)?.galois(n as usize))
}

/// Checks Goldman–Rota, the refined rank-by-rank recursion and q-Pascal's
/// rule for every `1 <= n <= n_max`.
pub fn verify_identities(n_max: i64, q: u64) -> Result<Report> {
    check_base(q)?;
    if n_max < 1 {
        return arg(format!("n_max must be at least 1, got {n_max}"));
    }
    let n_max = n_max as usize;
    let t = QBinomialTable::new(n_max + 1, q)?;
    let mut report = Report::new(format!("q-identities, q = {q}, n <= {n_max}"));

    let g0 = t.galois(0);
    let g1 = t.galois(1);
    report.record(
        "initial conditions G(0) = 1, G(1) = 2",
        (g0 != BigUint::one() || g1 != BigUint::from(2u32))
            .then(|| format!("G(0) = {g0}, G(1) = {g1}")),
    );

    let mut gr = None;
    for n in 1..=n_max {
        let lhs = t.galois(n + 1);
        let rhs = BigUint::from(2u32) * t.galois(n) + (qpow(q, n as u32) - 1u32) * t.galois(n - 1);
        if lhs != rhs {
            gr = Some(format!("n = {n}: G(n+1) = {lhs}, recursion gives {rhs}"));
            break;
        }
    }
    report.record("Goldman-Rota recurrence", gr);

    let mut refined = None;
    'outer: for n in 1..=n_max as i64 {
        for k in 1..=n + 1 {
            let lhs = t.get(n + 1, k);
            let rhs =
                t.get(n, k) + t.get(n, k - 1) + (qpow(q, n as u32) - 1u32) * t.get(n - 1, k - 1);
            if lhs != rhs {
                refined = Some(format!("n = {n}, k = {k}: {lhs} != {rhs}"));
                break 'outer;
            }
        }
    }
    report.record("rank-refined recursion", refined);

    let mut pascal = None;
    'outer: for n in 1..=n_max as i64 + 1 {
        for k in 1..=n {
            let lhs = t.get(n, k - 1);
            let rhs = t.get(n - 1, k - 2) + qpow(q, (k - 1) as u32) * t.get(n - 1, k - 1);
            if lhs != rhs {
                pascal = Some(format!("n = {n}, k = {k}: {lhs} != {rhs}"));
                break 'outer;
            }
        }
    }
    report.record("q-Pascal rule", pascal);

    Ok(report)
}
