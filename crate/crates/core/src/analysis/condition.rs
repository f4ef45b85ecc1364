//! Condition numbers of the qd cells.
//!
//! With `bar_q_1 = |q_1|` and `bar_e_0 = 0`,
//! `bar_e_m^(n) = bar_q_m^(n+1) + bar_q_m^(n) + bar_e_{m-1}^(n+1)` and
//! `bar_q_{m+1}^(n) = (bar_e_m^(n+1)/|e_m^(n+1)| + bar_q_m^(n+1)/|q_m^(n+1)|
//! + bar_e_m^(n)/|e_m^(n)|) |q_{m+1}^(n)|`; `cond = bar / |value|`.
//!
//! Cells whose exact value is zero have no condition number (`None`).

use crate::bigreal::{round_to_f64, BigReal};
use crate::oracle::ExactQdTable;
use crate::qdtable::{e_len, q_len};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct ConditionTable {
    pub bar_q: Vec<Vec<Option<BigReal>>>,
    pub bar_e: Vec<Vec<Option<BigReal>>>,
    pub cond_q: Vec<Vec<Option<BigReal>>>,
    pub cond_e: Vec<Vec<Option<BigReal>>>,
}

impl ConditionTable {
    pub fn cond_q(&self, m: usize, n: usize) -> Option<&BigReal> {
        self.cond_q.get(m.checked_sub(1)?)?.get(n)?.as_ref()
    }

    pub fn cond_e(&self, m: usize, n: usize) -> Option<&BigReal> {
        self.cond_e.get(m.checked_sub(1)?)?.get(n)?.as_ref()
    }
}

/// Exact condition numbers over the whole triangle.
pub fn condition_table(t: &ExactQdTable) -> ConditionTable {
    let d = t.degree;
    let cols = t.columns();
    let mut bar_q: Vec<Vec<Option<BigReal>>> = (1..=cols).map(|m| vec![None; q_len(d, m)]).collect();
    let mut bar_e: Vec<Vec<Option<BigReal>>> = (1..=cols).map(|m| vec![None; e_len(d, m)]).collect();
    let mut cond_q = bar_q.clone();
    let mut cond_e = bar_e.clone();
    let nonzero = |v: Option<&BigReal>| v.filter(|x| !x.is_zero()).map(|x| x.abs());

    if cols > 0 {
        for n in 0..q_len(d, 1) {
            if let Some(q) = nonzero(t.q(1, n)) {
                bar_q[0][n] = Some(q);
                cond_q[0][n] = Some(BigReal::from_integer(1.into()));
            }
        }
    }
    for m in 1..=cols {
        let i = m - 1;
        for n in 0..e_len(d, m) {
            let prev = if m == 1 {
                Some(BigReal::zero())
            } else {
                bar_e[i - 1][n + 1].clone()
            };
            let (Some(a), Some(b), Some(c)) = (&bar_q[i][n + 1], &bar_q[i][n], prev) else {
                continue;
            };
            let bar = a + b + c;
            if let Some(e) = nonzero(t.e(m, n)) {
                cond_e[i][n] = Some(&bar / e);
            }
            bar_e[i][n] = Some(bar);
        }
        if m == cols {
            break;
        }
        for n in 0..q_len(d, m + 1) {
            let (Some(ce1), Some(cq1), Some(ce0)) = (&cond_e[i][n + 1], &cond_q[i][n + 1], &cond_e[i][n])
            else {
                continue;
            };
            if let Some(q) = nonzero(t.q(m + 1, n)) {
                let cond = ce1 + cq1 + ce0;
                bar_q[i + 1][n] = Some(&cond * q);
                cond_q[i + 1][n] = Some(cond);
            }
        }
    }
    ConditionTable { bar_q, bar_e, cond_q, cond_e }
}

/// Condition numbers in binary64, from the correctly rounded exact table.
///
/// Each entry carries a few rounding errors relative to the exact recurrence;
/// this is meant for gating decisions on deep tables where the rational
/// recurrence is too expensive.
#[derive(Clone, Debug)]
pub struct ConditionTableF64 {
    pub cond_q: Vec<Vec<Option<f64>>>,
    pub cond_e: Vec<Vec<Option<f64>>>,
}

impl ConditionTableF64 {
    /// Largest q condition number over the table.
    pub fn max_cond_q(&self) -> f64 {
        self.cond_q.iter().flatten().flatten().fold(0.0, |a, &b| a.max(b))
    }
}

pub fn condition_table_f64(t: &ExactQdTable) -> ConditionTableF64 {
    let d = t.degree;
    let cols = t.columns();
    let q: Vec<Vec<Option<f64>>> = (1..=cols)
        .map(|m| (0..q_len(d, m)).map(|n| t.q(m, n).map(|x| round_to_f64(x).abs())).collect())
        .collect();
    let e: Vec<Vec<Option<f64>>> = (1..=cols)
        .map(|m| (0..e_len(d, m)).map(|n| t.e(m, n).map(|x| round_to_f64(x).abs())).collect())
        .collect();
    let mut bar_q: Vec<Vec<Option<f64>>> = q.iter().map(|c| vec![None; c.len()]).collect();
    let mut bar_e: Vec<Vec<Option<f64>>> = e.iter().map(|c| vec![None; c.len()]).collect();
    let mut cond_q = bar_q.clone();
    let mut cond_e = bar_e.clone();
    let nz = |v: Option<f64>| v.filter(|x| *x != 0.0);
    if cols > 0 {
        for n in 0..q[0].len() {
            if let Some(v) = nz(q[0][n]) {
                bar_q[0][n] = Some(v);
                cond_q[0][n] = Some(1.0);
            }
        }
    }
    for m in 1..=cols {
        let i = m - 1;
        for n in 0..e[i].len() {
            let prev = if m == 1 { Some(0.0) } else { bar_e[i - 1][n + 1] };
            let (Some(a), Some(b), Some(c)) = (bar_q[i][n + 1], bar_q[i][n], prev) else {
                continue;
            };
            let bar = a + b + c;
            bar_e[i][n] = Some(bar);
            cond_e[i][n] = nz(e[i][n]).map(|v| bar / v);
        }
        if m == cols {
            break;
        }
        for n in 0..q[i + 1].len() {
            let (Some(a), Some(b), Some(c)) = (cond_e[i][n + 1], cond_q[i][n + 1], cond_e[i][n]) else {
                continue;
            };
            if let Some(v) = nz(q[i + 1][n]) {
                let cond = a + b + c;
                bar_q[i + 1][n] = Some(cond * v);
                cond_q[i + 1][n] = Some(cond);
            }
        }
    }
    ConditionTableF64 { cond_q, cond_e }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_qd, gen_random_poly};
    use num_traits::One;

    #[test]
    fn two_pole_series_by_hand() {
        let c: Vec<BigReal> = (0..8).map(|n| BigReal::from_integer(((1i64 << n) + 1).into())).collect();
        let t = exact_qd(&c).unwrap();
        let k = condition_table(&t);
        assert!(k.cond_q[0].iter().all(|c| c.as_ref().unwrap().is_one()));
        assert_eq!(k.cond_e(1, 0).unwrap(), &BigReal::from_integer(19.into()));
        let f = condition_table_f64(&t);
        assert!((f.cond_e[0][0].unwrap() - 19.0).abs() < 1e-14);
    }

    #[test]
    fn q_conditions_grow_along_the_triangle() {
        let c = gen_random_poly(20, 11);
        let t = exact_qd(&c).unwrap();
        let k = condition_table(&t);
        for m in 1..t.columns() {
            for n in 0..q_len(20, m + 1) {
                if let (Some(a), Some(b)) = (k.cond_q(m + 1, n), k.cond_q(m, n + 1)) {
                    assert!(a >= b);
                }
            }
        }
        for c in k.cond_q.iter().chain(&k.cond_e).flatten().flatten() {
            assert!(*c >= BigReal::one());
        }
    }
}
