//! Empirical stability factors of computed tables.
//!
//! For classical qd, `b_m^(n) = |e / e_hat|` with `e` exact and `e_hat`
//! computed; for the compensated table `d_m^(n) = |e / (e_hat - eps_e)|`.
//! `B_m = max_n max(b, 1)`, `B_0 = 1`, `Phi_m = B_0 B_1 ... B_m`, and
//! likewise `D`, `Psi`. The factor of `e_m^(n)` only enters the error of
//! `q_{m+1}^(n)`, so the maximum runs over the `n` where that cell exists.

use crate::bigreal::{rational_from_f64, round_to_f64, BigReal};
use crate::error::{Error, Result};
use crate::oracle::ExactQdTable;
use crate::qdtable::{e_len, q_len, QdTable};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct StabilityFactors {
    /// `b_m^(n)` (or `d_m^(n)`) per e-cell; `None` where undefined.
    pub cell: Vec<Vec<Option<BigReal>>>,
    /// `B_m` (or `D_m`) for `m = 0..=columns`.
    pub column: Vec<BigReal>,
    /// `Phi_m` (or `Psi_m`) for `m = 0..=columns`.
    pub product: Vec<BigReal>,
}

impl StabilityFactors {
    pub fn product_f64(&self) -> Vec<f64> {
        self.product.iter().map(round_to_f64).collect()
    }

    /// Largest product, i.e. the last one.
    pub fn max_product(&self) -> f64 {
        round_to_f64(self.product.last().unwrap())
    }
}

/// Factors of `computed` against the exact table.
///
/// With `compensated` set the corrected value `e_hat - eps_e` is used, which
/// requires a table with residual planes.
pub fn stability_factors(
    computed: &QdTable,
    exact: &ExactQdTable,
    compensated: bool,
) -> Result<StabilityFactors> {
    if computed.degree != exact.degree {
        return Err(Error::ShapeMismatch);
    }
    if compensated && computed.eps_e.is_none() {
        return Err(Error::ShapeMismatch);
    }
    let d = computed.degree;
    let cols = computed.columns();
    let mut cell = Vec::with_capacity(cols);
    let mut column = vec![BigReal::one()];
    for m in 1..=cols {
        let mut col = Vec::with_capacity(e_len(d, m));
        let mut big = BigReal::one();
        for n in 0..e_len(d, m) {
            let v = match (computed.e(m, n), exact.e(m, n)) {
                (Some(hat), Some(e)) if !e.is_zero() => {
                    let approx = if compensated {
                        rational_from_f64(hat) - rational_from_f64(computed.e_eps(m, n).unwrap())
                    } else {
                        rational_from_f64(hat)
                    };
                    (!approx.is_zero()).then(|| (e / approx).abs())
                }
                _ => None,
            };
            if let (Some(b), true) = (&v, n < q_len(d, m + 1)) {
                if *b > big {
                    big = b.clone();
                }
            }
            col.push(v);
        }
        cell.push(col);
        column.push(big);
    }
    let mut product = Vec::with_capacity(column.len());
    let mut acc = BigReal::one();
    for b in &column {
        acc *= b;
        product.push(acc.clone());
    }
    Ok(StabilityFactors { cell, column, product })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_qd, gen_random_poly};
    use crate::qdtable::{build_compqd, build_qd, Init};
    use crate::series::SeriesInput;

    #[test]
    fn exact_binary_tables_give_unit_factors() {
        // Every cell of this table is a binary64 value.
        let s = SeriesInput::from_f64(&[1.0, 2.0, 2.0, 1.0]).unwrap();
        let t = build_qd(&s).unwrap();
        let x = exact_qd(&s.exact).unwrap();
        let f = stability_factors(&t, &x, false).unwrap();
        assert!(f.product.iter().all(|p| p.is_one()));
    }

    #[test]
    fn products_are_nondecreasing() {
        let c = gen_random_poly(10, 5);
        let s = SeriesInput::from_exact(c).unwrap();
        let x = exact_qd(&s.exact).unwrap();
        for (t, comp) in [(build_qd(&s).unwrap(), false), (build_compqd(&s, Init::Real).unwrap(), true)] {
            let f = stability_factors(&t, &x, comp).unwrap();
            assert!(f.column.iter().all(|b| *b >= BigReal::one()));
            assert!(f.product.windows(2).all(|w| w[1] >= w[0]));
        }
    }
}
