//! Regular C-fraction `a_0 + a_1 z/(1 + a_2 z/(1 + ...))` from the qd table.
//!
//! With `q_1^(n) = c_{n+1}/c_n` the coefficients sit in row one:
//! `a_{2k} = -q_k^(1)` and `a_{2k+1} = -e_k^(1)`.

use crate::bigreal::{rational_from_f64, BigReal};
use crate::oracle::ExactQdTable;
use crate::qdtable::QdTable;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CFraction {
    /// `a_0, a_1, ...` up to the first masked cell.
    pub coeffs: Vec<f64>,
    /// True if a masked cell cut the fraction short.
    pub truncated: bool,
}

fn collect<T>(
    degree: usize,
    c0: T,
    c1: T,
    q: impl Fn(usize) -> Option<T>,
    e: impl Fn(usize) -> Option<T>,
    neg: impl Fn(T) -> T,
) -> (Vec<T>, bool) {
    let mut a = vec![c0];
    if degree == 0 {
        return (a, false);
    }
    a.push(c1);
    for i in 2..=degree {
        let k = i / 2;
        let v = if i % 2 == 0 { q(k) } else { e(k) };
        match v {
            Some(v) => a.push(neg(v)),
            None => return (a, true),
        }
    }
    (a, false)
}

pub fn cfrac(table: &QdTable, c0: f64, c1: f64) -> CFraction {
    let (coeffs, truncated) =
        collect(table.degree, c0, c1, |k| table.q(k, 1), |k| table.e(k, 1), |v: f64| -v);
    CFraction { coeffs, truncated }
}

/// Coefficients from the exact table; the second value flags truncation.
pub fn cfrac_exact(table: &ExactQdTable, c0: &BigReal, c1: &BigReal) -> (Vec<BigReal>, bool) {
    collect(
        table.degree,
        c0.clone(),
        c1.clone(),
        |k| table.q(k, 1).cloned(),
        |k| table.e(k, 1).cloned(),
        |v: BigReal| -v,
    )
}

impl CFraction {
    pub fn exact_coeffs(&self) -> Vec<BigReal> {
        self.coeffs.iter().map(|&a| rational_from_f64(a)).collect()
    }
}

/// `a / b` as power series truncated after `z^order`.
fn series_div(a: &[BigReal], b: &[BigReal], order: usize) -> Vec<BigReal> {
    let mut out = vec![BigReal::zero(); order + 1];
    for i in 0..=order {
        let mut s = a.get(i).cloned().unwrap_or_else(BigReal::zero);
        for j in 1..=i.min(b.len() - 1) {
            s -= &b[j] * &out[i - j];
        }
        out[i] = s / &b[0];
    }
    out
}

/// Taylor coefficients `c_0..c_order` of the approximant built from all of
/// `coeffs`, in exact arithmetic.
pub fn cfrac_expand(coeffs: &[BigReal], order: usize) -> Vec<BigReal> {
    let zero = || vec![BigReal::zero(); order + 1];
    let mut out = zero();
    if coeffs.is_empty() {
        return out;
    }
    // Tail T_i = 1 + a_i z / T_{i+1}, with T past the last coefficient = 1.
    let mut tail = zero();
    tail[0] = BigReal::one();
    for a in coeffs[1..].iter().skip(1).rev() {
        let mut num = zero();
        if order >= 1 {
            num[1] = a.clone();
        }
        let mut t = series_div(&num, &tail, order);
        t[0] += BigReal::one();
        tail = t;
    }
    if coeffs.len() > 1 && order >= 1 {
        let mut num = zero();
        num[1] = coeffs[1].clone();
        out = series_div(&num, &tail, order);
    }
    out[0] += &coeffs[0];
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_qd, exp_series};
    use crate::qdtable::build_qd;
    use crate::series::SeriesInput;

    fn r(p: i64, q: i64) -> BigReal {
        BigReal::new(p.into(), q.into())
    }

    #[test]
    fn exp_fraction_coefficients() {
        let c = exp_series(8);
        let x = exact_qd(&c).unwrap();
        let (a, truncated) = cfrac_exact(&x, &c[0], &c[1]);
        assert!(!truncated);
        assert_eq!(a.len(), 9);
        assert_eq!(&a[..5], &[r(1, 1), r(1, 1), r(-1, 2), r(1, 6), r(-1, 6)]);
        assert_eq!(cfrac_expand(&a, 8), c);
    }

    #[test]
    fn constant_fraction_expands_to_constant() {
        assert_eq!(cfrac_expand(&[r(3, 1)], 3), vec![r(3, 1), r(0, 1), r(0, 1), r(0, 1)]);
    }

    #[test]
    fn injected_mismatch_is_detected() {
        let c = exp_series(6);
        let (mut a, _) = cfrac_exact(&exact_qd(&c).unwrap(), &c[0], &c[1]);
        a[4] += r(1, 1000);
        assert_ne!(cfrac_expand(&a, 6), c);
    }

    #[test]
    fn float_fraction_keeps_leading_inputs() {
        let s = SeriesInput::from_exact(exp_series(10)).unwrap();
        let t = build_qd(&s).unwrap();
        let cf = cfrac(&t, s.hi[0], s.hi[1]);
        assert_eq!(cf.coeffs[0].to_bits(), s.hi[0].to_bits());
        assert_eq!(cf.coeffs[1].to_bits(), s.hi[1].to_bits());
        assert_eq!(cf.coeffs.len(), 11);
    }
}
