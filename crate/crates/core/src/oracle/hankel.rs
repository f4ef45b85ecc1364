//! Hankel determinants `H_m^(n) = det(c_{n+i+j})_{i,j<m}`, with `H_0 = 1`.

use crate::bigreal::BigReal;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Integer coefficients `L*c` with `L` the lcm of the denominators.
fn integer_scaled(c: &[BigReal]) -> (Vec<BigInt>, BigInt) {
    let l = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (ints, l)
}

fn check_range(len: usize, m: usize, n: usize) -> Result<()> {
    if m > 0 && n + 2 * m - 2 >= len {
        return Err(Error::InvalidSeries(format!(
            "H_{m}^({n}) needs c_{} but the series stops at c_{}",
            n + 2 * m - 2,
            len - 1
        )));
    }
    Ok(())
}

/// A single Hankel determinant by Bareiss elimination.
pub fn hankel(series: &[BigReal], m: usize, n: usize) -> Result<BigReal> {
    check_range(series.len(), m, n)?;
    if m == 0 {
        return Ok(BigReal::one());
    }
    let (c, l) = integer_scaled(&series[n..n + 2 * m - 1]);
    let mat = (0..m).map(|i| (0..m).map(|j| c[i + j].clone()).collect()).collect();
    let det = bareiss_det(mat);
    Ok(BigReal::new(det, num_traits::pow(l, m)))
}

/// All determinants reachable from `c_0..c_N`, for the integer-scaled series.
///
/// `h[m][n]` is `L^m H_m^(n)`. Built column by column from
/// `H_{m+1}^(n) H_{m-1}^(n+2) = H_m^(n) H_m^(n+2) - (H_m^(n+1))^2`, an exact
/// integer division; a vanishing divisor falls back to Bareiss.
pub struct HankelTable {
    pub scale: BigInt,
    pub h: Vec<Vec<BigInt>>,
    ints: Vec<BigInt>,
}

impl HankelTable {
    pub fn new(series: &[BigReal]) -> Self {
        let (ints, scale) = integer_scaled(series);
        let len = ints.len();
        let mut h: Vec<Vec<BigInt>> = vec![vec![BigInt::one(); len + 1], ints.clone()];
        let mut m = 1;
        while len + 2 > 2 * (m + 1) {
            // H_{m+1}^(n) exists for n + 2m <= N.
            let count = len + 1 - 2 * (m + 1) + 1;
            let mut col = Vec::with_capacity(count);
            for n in 0..count {
                let div = &h[m - 1][n + 2];
                let v = if div.is_zero() {
                    let mat = (0..=m)
                        .map(|i| (0..=m).map(|j| ints[n + i + j].clone()).collect())
                        .collect();
                    bareiss_det(mat)
                } else {
                    let num = &h[m][n] * &h[m][n + 2] - &h[m][n + 1] * &h[m][n + 1];
                    let (q, r) = num.div_rem(div);
                    debug_assert!(r.is_zero());
                    q
                };
                col.push(v);
            }
            h.push(col);
            m += 1;
        }
        HankelTable { scale, h, ints }
    }

    pub fn max_order(&self) -> usize {
        self.h.len() - 1
    }

    /// `L^m H_m^(n)`.
    pub fn scaled(&self, m: usize, n: usize) -> Option<&BigInt> {
        self.h.get(m)?.get(n)
    }

    /// `H_m^(n)` exactly.
    pub fn get(&self, m: usize, n: usize) -> Option<BigReal> {
        let v = self.scaled(m, n)?;
        Some(BigReal::new(v.clone(), num_traits::pow(self.scale.clone(), m)))
    }

    pub fn integer_series(&self) -> &[BigInt] {
        &self.ints
    }
}

/// Unreduced fraction with the sign moved to the numerator.
pub(crate) fn positive_den(num: BigInt, den: BigInt) -> BigReal {
    if den.is_negative() {
        BigReal::new_raw(-num, -den)
    } else {
        BigReal::new_raw(num, den)
    }
}
