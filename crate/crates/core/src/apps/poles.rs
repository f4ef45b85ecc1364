//! Poles of a meromorphic function from the q-columns of its qd table.

use super::QdSource;
use crate::bigreal::{round_to_f64, BigReal};
use crate::error::{Error, Result};
use crate::oracle::real_zeros;
use num_traits::{One, Zero};
use serde::Serialize;

pub const DEFAULT_CONV_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PoleMethod {
    Direct,
    Critical,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Pole {
    pub value: f64,
    /// Pole index, which is also the q-column it comes from.
    pub m: usize,
    /// Row the estimate was read from.
    pub n: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleReport {
    pub method: PoleMethod,
    pub poles: Vec<Pole>,
    pub diagnostics: Vec<String>,
}

impl PoleReport {
    pub fn pole(&self, m: usize) -> Option<&Pole> {
        self.poles.iter().find(|p| p.m == m)
    }
}

/// `1/q_m^(n)` at the deepest valid row of each requested column. The flag
/// is set when `|e_m^(n-1)| <= conv_tol |q_m^(n)|`.
pub fn poles_direct<T: QdSource + ?Sized>(table: &T, which: &[usize], conv_tol: f64) -> PoleReport {
    let mut poles = Vec::new();
    let mut diagnostics = Vec::new();
    for &m in which {
        let Some(n) = table.deepest_q(m) else {
            diagnostics.push(format!("column {m} is empty"));
            continue;
        };
        let q = table.q_f64(m, n).unwrap();
        let converged = n
            .checked_sub(1)
            .and_then(|k| table.e_f64(m, k))
            .is_some_and(|e| e.abs() <= conv_tol * q.abs());
        poles.push(Pole { value: 1.0 / q, m, n, converged });
    }
    PoleReport { method: PoleMethod::Direct, poles, diagnostics }
}

/// Ascending coefficients of the monic `p_j^(n)` built from q-columns
/// `m+1..=m+j`.
pub fn critical_polynomial<T: QdSource + ?Sized>(table: &T, m: usize, j: usize, n: usize) -> Result<Vec<BigReal>> {
    let missing = |col: usize, row: usize| {
        Error::NeedLargerDegree(format!("q_{col}^({row}) is not available at degree {}", table.degree()))
    };
    // level[i] is p_k^(n+i).
    let mut level: Vec<Vec<BigReal>> = vec![vec![BigReal::one()]; j + 1];
    for k in 0..j {
        let col = m + k + 1;
        let mut next = Vec::with_capacity(j - k);
        for i in 0..j - k {
            let row = n + i;
            let q = table.q_exact(col, row).ok_or_else(|| missing(col, row))?;
            let mut p = vec![BigReal::zero(); k + 2];
            for (d, c) in level[i + 1].iter().enumerate() {
                p[d + 1] += c;
            }
            for (d, c) in level[i].iter().enumerate() {
                p[d] -= &q * c;
            }
            next.push(p);
        }
        level = next;
    }
    Ok(level.swap_remove(0))
}

fn horner(c: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &a in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

fn polish(c: &[f64], mut x: f64) -> f64 {
    let mut best = horner(c, x).0.abs();
    for _ in 0..5 {
        let (p, dp) = horner(c, x);
        if p == 0.0 || dp == 0.0 {
            break;
        }
        let y = x - p / dp;
        let r = horner(c, y).0.abs();
        if !(r < best) {
            break;
        }
        best = r;
        x = y;
    }
    x
}

fn critical_zeros(coeffs: &[BigReal]) -> Result<Vec<f64>> {
    let c: Vec<f64> = coeffs.iter().map(round_to_f64).collect();
    let zeros = real_zeros(coeffs, 40)?;
    Ok(zeros.iter().map(|z| polish(&c, round_to_f64(z))).collect())
}

/// Default row `N - 2(m+j) - 1` used for the critical-index polynomial.
pub fn default_critical_row(degree: usize, m: usize, j: usize) -> Option<usize> {
    degree.checked_sub(2 * (m + j) + 1)
}

/// Poles `m+1..=m+j` as reciprocals of the zeros of `p_j^(n)`, for caller
/// supplied consecutive critical indices `m` and `m+j`. An estimate is
/// flagged converged when the zeros of `p_j^(n-1)` agree with it to
/// `conv_tol` relatively.
pub fn poles_critical<T: QdSource + ?Sized>(
    table: &T,
    m: usize,
    j: usize,
    n: Option<usize>,
    conv_tol: f64,
) -> Result<PoleReport> {
    if j == 0 {
        return Err(Error::InvalidSeries("j must be at least 1".into()));
    }
    let n = match n.or_else(|| default_critical_row(table.degree(), m, j)) {
        Some(n) => n,
        None => return Err(Error::NeedLargerDegree(format!("m = {m}, j = {j} at degree {}", table.degree()))),
    };
    let p = critical_polynomial(table, m, j, n)?;
    let mut diagnostics = Vec::new();
    let zeros = match critical_zeros(&p) {
        Ok(z) => z,
        Err(Error::NonRealZeros) => {
            diagnostics.push(format!("p_{j}^({n}) has non-real zeros"));
            return Ok(PoleReport { method: PoleMethod::Critical, poles: Vec::new(), diagnostics });
        }
        Err(e) => return Err(e),
    };
    let previous = n
        .checked_sub(1)
        .and_then(|k| critical_polynomial(table, m, j, k).ok())
        .and_then(|p| critical_zeros(&p).ok());
    let mut values: Vec<f64> = zeros.iter().map(|z| 1.0 / z).collect();
    values.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let mut prev_values: Option<Vec<f64>> = previous.map(|z| {
        let mut v: Vec<f64> = z.iter().map(|z| 1.0 / z).collect();
        v.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        v
    });
    if prev_values.as_ref().is_some_and(|v| v.len() != values.len()) {
        prev_values = None;
    }
    let poles = values
        .iter()
        .enumerate()
        .map(|(i, &value)| Pole {
            value,
            m: m + i + 1,
            n,
            converged: prev_values
                .as_ref()
                .is_some_and(|v| ((v[i] - value) / value).abs() <= conv_tol),
        })
        .collect();
    Ok(PoleReport { method: PoleMethod::Critical, poles, diagnostics })
}
