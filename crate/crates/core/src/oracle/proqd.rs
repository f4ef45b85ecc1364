use crate::bigreal::BigReal;
use crate::error::{Error, Result};
use crate::series::PolyInput;
use num_traits::Zero;

/// Progressive qd sweeps in exact arithmetic: the q-row after each sweep.
pub fn exact_proqd_sweeps(poly: &PolyInput, sweeps: usize) -> Result<Vec<Vec<BigReal>>> {
    let b = &poly.exact;
    let k = poly.degree();
    let mut q = vec![BigReal::zero(); k];
    q[0] = -&b[1] / &b[0];
    // e[m] for m = 0..=k, with e[0] = e[k] = 0.
    let mut e = vec![BigReal::zero(); k + 1];
    for m in 1..k {
        if b[m].is_zero() {
            return Err(Error::ProgressiveBreakdown { sweep: 0, column: m });
        }
        e[m] = &b[m + 1] / &b[m];
    }
    let mut rows = Vec::with_capacity(sweeps);
    for sweep in 1..=sweeps {
        for m in 1..=k {
            q[m - 1] = &q[m - 1] + &e[m] - &e[m - 1];
        }
        for m in 1..k {
            if q[m - 1].is_zero() {
                return Err(Error::ProgressiveBreakdown { sweep, column: m });
            }
            e[m] = &q[m] / &q[m - 1] * &e[m];
        }
        rows.push(q.clone());
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn exact_sweeps_approach_the_zeros() {
        let r = |x: i64| BigReal::from_integer(x.into());
        let p = PolyInput::from_exact(vec![r(1), r(-7), r(14), r(-8)]).unwrap();
        let rows = exact_proqd_sweeps(&p, 12).unwrap();
        let target = [r(4), r(2), r(1)];
        let dist = |row: &Vec<BigReal>| {
            row.iter().zip(&target).map(|(a, b)| (a - b).abs()).max().unwrap()
        };
        let tail: Vec<BigReal> = rows[rows.len() - 4..].iter().map(dist).collect();
        assert!(tail.windows(2).all(|w| w[1] < w[0]));
    }
}
