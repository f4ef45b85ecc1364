//! Input coefficient sequences, each kept exactly and as a split pair.

use crate::bigreal::{rational_from_f64, split_rational, BigReal};
use crate::dd::DD;
use crate::error::{Error, Result};
use num_traits::Zero;

/// Power-series coefficients `c_0..c_N`.
///
/// `hi[n] = fl(c_n)` and `lo[n] = fl(c_n - hi[n])`; the exact value is kept
/// for the oracle and for error reporting.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesInput {
    pub exact: Vec<BigReal>,
    pub hi: Vec<f64>,
    pub lo: Vec<f64>,
}

impl SeriesInput {
    pub fn from_exact(exact: Vec<BigReal>) -> Result<Self> {
        if exact.is_empty() {
            return Err(Error::InvalidSeries("no coefficients".into()));
        }
        let mut hi = Vec::with_capacity(exact.len());
        let mut lo = Vec::with_capacity(exact.len());
        for (i, c) in exact.iter().enumerate() {
            let (h, l, _) = split_rational(c);
            if !h.is_finite() {
                return Err(Error::InvalidSeries(format!("coefficient {i} overflows binary64")));
            }
            hi.push(h);
            lo.push(l);
        }
        Ok(SeriesInput { exact, hi, lo })
    }

    /// Coefficients that are binary64 values to begin with (`lo` is zero).
    pub fn from_f64(values: &[f64]) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSeries(format!("coefficient {i} is not finite")));
        }
        Self::from_exact(values.iter().map(|&v| rational_from_f64(v)).collect())
    }

    pub fn degree(&self) -> usize {
        self.exact.len() - 1
    }

    pub fn dd(&self, n: usize) -> DD {
        DD::new(self.hi[n], self.lo[n])
    }

    /// True when every coefficient is exactly a binary64 value.
    pub fn is_binary64(&self) -> bool {
        self.lo.iter().all(|l| *l == 0.0)
            && self
                .exact
                .iter()
                .zip(&self.hi)
                .all(|(c, h)| *c == rational_from_f64(*h))
    }
}

/// Polynomial `b_0 x^k + b_1 x^(k-1) + ... + b_k`, leading coefficient first.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyInput {
    pub exact: Vec<BigReal>,
    pub hi: Vec<f64>,
    pub lo: Vec<f64>,
}

impl PolyInput {
    pub fn from_exact(exact: Vec<BigReal>) -> Result<Self> {
        if exact.len() < 2 {
            return Err(Error::InvalidSeries("polynomial degree must be at least 1".into()));
        }
        if exact[0].is_zero() {
            return Err(Error::InvalidSeries("leading coefficient is zero".into()));
        }
        if exact.last().unwrap().is_zero() {
            return Err(Error::InvalidSeries("constant coefficient is zero".into()));
        }
        let s = SeriesInput::from_exact(exact)?;
        Ok(PolyInput { exact: s.exact, hi: s.hi, lo: s.lo })
    }

    /// From coefficients in ascending order `a_0 + a_1 x + ... + a_k x^k`.
    pub fn from_ascending(coeffs: Vec<BigReal>) -> Result<Self> {
        let mut c = coeffs;
        c.reverse();
        Self::from_exact(c)
    }

    pub fn from_f64(values: &[f64]) -> Result<Self> {
        let s = SeriesInput::from_f64(values)?;
        Self::from_exact(s.exact)
    }

    pub fn degree(&self) -> usize {
        self.exact.len() - 1
    }

    pub fn dd(&self, i: usize) -> DD {
        DD::new(self.hi[i], self.lo[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn split_invariant() {
        let s = SeriesInput::from_exact(vec![r(1, 1), r(1, 3), r(-2, 7)]).unwrap();
        for n in 0..=2 {
            assert_eq!(s.hi[n] + s.lo[n], s.hi[n]);
            assert!(s.lo[n].abs() <= s.hi[n].abs() * 1.2e-16);
        }
        assert_eq!(s.hi[1], 1.0 / 3.0);
        assert!(!s.is_binary64());
        assert!(SeriesInput::from_f64(&[0.5, 0.25]).unwrap().is_binary64());
    }

    #[test]
    fn polynomial_rejects_vanishing_ends() {
        assert!(PolyInput::from_exact(vec![r(0, 1), r(1, 1)]).is_err());
        assert!(PolyInput::from_exact(vec![r(1, 1), r(0, 1)]).is_err());
        assert!(PolyInput::from_exact(vec![r(1, 1)]).is_err());
        let p = PolyInput::from_ascending(vec![r(-2, 1), r(1, 1)]).unwrap();
        assert_eq!(p.hi, vec![1.0, -2.0]);
    }
}
