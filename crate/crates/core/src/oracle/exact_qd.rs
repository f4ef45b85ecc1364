use super::hankel::{positive_den, HankelTable};
use crate::bigreal::{round_to_f64, BigReal};
use crate::error::{Error, Result};
use crate::qdtable::{columns, e_len, q_len, Cell};
use num_traits::Zero;

/// The qd table in exact rational arithmetic, over the same triangle and
/// with the same masking rules as [`crate::qdtable::QdTable`].
///
/// Masked cells hold zero. Tables from [`exact_qd_hankel`] keep unreduced
/// fractions; comparisons are by value either way.
#[derive(Clone, Debug)]
pub struct ExactQdTable {
    pub degree: usize,
    pub q: Vec<Vec<BigReal>>,
    pub e: Vec<Vec<BigReal>>,
    pub q_state: Vec<Vec<Cell>>,
    pub e_state: Vec<Vec<Cell>>,
}

impl ExactQdTable {
    fn empty(degree: usize) -> Self {
        let cols = columns(degree);
        let q: Vec<Vec<BigReal>> = (1..=cols).map(|m| vec![BigReal::zero(); q_len(degree, m)]).collect();
        let e: Vec<Vec<BigReal>> = (1..=cols).map(|m| vec![BigReal::zero(); e_len(degree, m)]).collect();
        let q_state = q.iter().map(|c| vec![Cell::Valid; c.len()]).collect();
        let e_state = e.iter().map(|c| vec![Cell::Valid; c.len()]).collect();
        ExactQdTable { degree, q, e, q_state, e_state }
    }

    pub fn columns(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self, m: usize, n: usize) -> Option<&BigReal> {
        let i = m.checked_sub(1)?;
        self.q_state.get(i)?.get(n)?.is_valid().then(|| &self.q[i][n])
    }

    pub fn e(&self, m: usize, n: usize) -> Option<&BigReal> {
        let i = m.checked_sub(1)?;
        self.e_state.get(i)?.get(n)?.is_valid().then(|| &self.e[i][n])
    }

    pub fn q_f64(&self, m: usize, n: usize) -> Option<f64> {
        self.q(m, n).map(round_to_f64)
    }

    pub fn e_f64(&self, m: usize, n: usize) -> Option<f64> {
        self.e(m, n).map(round_to_f64)
    }

    /// Largest valid `n` in q-column `m`.
    pub fn deepest_q(&self, m: usize) -> Option<usize> {
        self.q_state.get(m.checked_sub(1)?)?.iter().rposition(|c| c.is_valid())
    }
}

fn check_q1_divisors(series: &[BigReal]) -> Result<()> {
    if series.is_empty() {
        return Err(Error::InvalidSeries("no coefficients".into()));
    }
    match series[..series.len() - 1].iter().position(|c| c.is_zero()) {
        Some(index) => Err(Error::Q1Breakdown { index }),
        None => Ok(()),
    }
}

/// The rhombus rules run without rounding.
pub fn exact_qd(series: &[BigReal]) -> Result<ExactQdTable> {
    check_q1_divisors(series)?;
    let degree = series.len() - 1;
    let mut t = ExactQdTable::empty(degree);
    let cols = t.columns();
    if cols == 0 {
        return Ok(t);
    }
    for n in 0..q_len(degree, 1) {
        t.q[0][n] = &series[n + 1] / &series[n];
    }
    let zero = BigReal::zero();
    for m in 1..=cols {
        let i = m - 1;
        for n in (0..e_len(degree, m)).rev() {
            let (e_prev, ok) = if m == 1 {
                (&zero, true)
            } else {
                (&t.e[i - 1][n + 1], t.e_state[i - 1][n + 1].is_valid())
            };
            if ok && t.q_state[i][n + 1].is_valid() && t.q_state[i][n].is_valid() {
                t.e[i][n] = &t.q[i][n + 1] - &t.q[i][n] + e_prev;
            } else {
                t.e_state[i][n] = Cell::Inherited;
            }
            if m < cols && n < q_len(degree, m + 1) {
                let ok = t.e_state[i][n + 1].is_valid()
                    && t.e_state[i][n].is_valid()
                    && t.q_state[i][n + 1].is_valid();
                if !ok {
                    t.q_state[i + 1][n] = Cell::Inherited;
                } else if t.e[i][n].is_zero() {
                    t.q_state[i + 1][n] = Cell::Breakdown;
                } else {
                    t.q[i + 1][n] = &t.e[i][n + 1] / &t.e[i][n] * &t.q[i][n + 1];
                }
            }
        }
    }
    Ok(t)
}

/// The table from the Hankel-determinant ratios
/// `q_m^(n) = H_m^(n+1) H_{m-1}^(n) / (H_m^(n) H_{m-1}^(n+1))` and
/// `e_m^(n) = H_{m+1}^(n) H_{m-1}^(n+1) / (H_m^(n) H_m^(n+1))`.
///
/// Fractions are left unreduced, which keeps deep tables cheap. A cell whose
/// denominator vanishes is marked [`Cell::Breakdown`]; there is no
/// propagation since each cell is defined on its own.
pub fn exact_qd_hankel(series: &[BigReal]) -> Result<ExactQdTable> {
    check_q1_divisors(series)?;
    let degree = series.len() - 1;
    let mut t = ExactQdTable::empty(degree);
    let h = HankelTable::new(series);
    let hs = |m: usize, n: usize| h.scaled(m, n).expect("Hankel index in range");
    for m in 1..=t.columns() {
        for n in 0..q_len(degree, m) {
            let den = hs(m, n) * hs(m - 1, n + 1);
            if den.is_zero() {
                t.q_state[m - 1][n] = Cell::Breakdown;
            } else {
                t.q[m - 1][n] = positive_den(hs(m, n + 1) * hs(m - 1, n), den);
            }
        }
        for n in 0..e_len(degree, m) {
            let den = hs(m, n) * hs(m, n + 1);
            if den.is_zero() {
                t.e_state[m - 1][n] = Cell::Breakdown;
            } else {
                let num = hs(m + 1, n) * hs(m - 1, n + 1);
                // L^(m+1) L^(m-1) / L^(2m): the scale cancels.
                t.e[m - 1][n] = positive_den(num, den);
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::gen_random_poly;

    fn r(p: i64, q: i64) -> BigReal {
        BigReal::new(p.into(), q.into())
    }

    #[test]
    fn geometric_series_has_zero_e_column() {
        let c = vec![r(1, 1); 8];
        let t = exact_qd(&c).unwrap();
        assert!(t.e[0].iter().all(|e| e.is_zero()));
        assert!(t.q_state[1].iter().all(|s| *s == Cell::Breakdown));
    }

    #[test]
    fn two_pole_series_by_hand() {
        let c: Vec<BigReal> = (0..8).map(|n| r((1i64 << n) + 1, 1)).collect();
        let t = exact_qd(&c).unwrap();
        assert_eq!(t.q(1, 0).unwrap(), &r(3, 2));
        assert_eq!(t.e(1, 0).unwrap(), &r(1, 6));
        // Rhombus rules hold exactly everywhere.
        for m in 1..=t.columns() {
            for n in 0..e_len(7, m) {
                let (Some(e), Some(q0), Some(q1)) = (t.e(m, n), t.q(m, n), t.q(m, n + 1)) else {
                    continue;
                };
                let ep = if m == 1 { BigReal::zero() } else { t.e(m - 1, n + 1).unwrap().clone() };
                assert_eq!(q0 + e, q1 + ep);
            }
        }
    }

    #[test]
    fn rhombus_and_hankel_tables_agree() {
        for seed in 0..4 {
            let c = gen_random_poly(8, seed);
            let a = exact_qd(&c).unwrap();
            let b = exact_qd_hankel(&c).unwrap();
            for m in 1..=a.columns() {
                for n in 0..q_len(8, m) {
                    assert_eq!(a.q(m, n), b.q(m, n), "q_{m}^({n})");
                }
                for n in 0..e_len(8, m) {
                    assert_eq!(a.e(m, n), b.e(m, n), "e_{m}^({n})");
                }
            }
        }
    }

    #[test]
    fn zero_leading_divisor_is_reported() {
        assert_eq!(
            exact_qd(&[r(1, 1), r(0, 1), r(2, 1)]).unwrap_err(),
            Error::Q1Breakdown { index: 1 }
        );
    }
}
