//! Double-double (pair) arithmetic.
//!
//! Each routine follows the classical QD-library listing line by line,
//! including which error-free transformation is used where. Flop counts:
//! `dd_add_d` 10, `dd_add_dd` 20, `dd_mul_d` 22, `dd_mul_dd` 24,
//! `dd_div_dd` 100.

use crate::arith::Fp;
use crate::eft::{fast_two_sum_unordered as fts, two_prod, two_sum, TwoTerm};
use crate::error::{Error, Result};

/// The real number `hi + lo`, normalized so that `hi = fl(hi + lo)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DD<F = f64> {
    pub hi: F,
    pub lo: F,
}

impl<F: Fp> DD<F> {
    #[inline(always)]
    pub fn new(hi: F, lo: F) -> Self {
        DD { hi, lo }
    }

    #[inline(always)]
    pub fn from_f64(x: f64) -> Self {
        DD::new(F::from_f64(x), F::zero())
    }

    #[inline(always)]
    pub fn neg(self) -> Self {
        DD::new(-self.hi, -self.lo)
    }
}

impl DD<f64> {
    pub fn is_normalized(&self) -> bool {
        self.hi + self.lo == self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}

impl<F> From<TwoTerm<F>> for DD<F> {
    fn from(t: TwoTerm<F>) -> Self {
        DD { hi: t.hi, lo: t.lo }
    }
}

#[inline(always)]
pub fn dd_add_d<F: Fp>(a: DD<F>, b: F) -> DD<F> {
    let TwoTerm { hi: th, lo: tl } = two_sum(a.hi, b);
    let tl = a.lo + tl;
    fts(th, tl).into()
}

#[inline(always)]
pub fn dd_add_dd<F: Fp>(a: DD<F>, b: DD<F>) -> DD<F> {
    let TwoTerm { hi: sh, lo: sl } = two_sum(a.hi, b.hi);
    let TwoTerm { hi: th, lo: tl } = two_sum(a.lo, b.lo);
    let sl = sl + th;
    let th = sh + sl;
    let sl = sl - (th - sh);
    let tl = tl + sl;
    fts(th, tl).into()
}

#[inline(always)]
pub fn dd_mul_d<F: Fp>(a: DD<F>, b: F) -> DD<F> {
    let TwoTerm { hi: th, lo: tl } = two_prod(a.hi, b);
    let tl = a.lo * b + tl;
    fts(th, tl).into()
}

#[inline(always)]
pub fn dd_mul_dd<F: Fp>(a: DD<F>, b: DD<F>) -> DD<F> {
    let TwoTerm { hi: th, lo: tl } = two_prod(a.hi, b.hi);
    let tl = a.hi * b.lo + a.lo * b.hi + tl;
    fts(th, tl).into()
}

/// Long division with three quotient corrections.
#[inline(always)]
pub fn dd_div_dd<F: Fp>(a: DD<F>, b: DD<F>) -> DD<F> {
    let q1 = a.hi / b.hi;
    let t = dd_mul_d(b, q1);
    let r = dd_add_dd(a, t.neg());
    let q2 = r.hi / b.hi;
    let t = dd_mul_d(b, q2);
    let r = dd_add_dd(r, t.neg());
    let q3 = r.hi / b.hi;
    let TwoTerm { hi: q1, lo: q2 } = fts(q1, q2);
    dd_add_d(DD::new(q1, q2), q3)
}

fn finite_result(r: DD) -> Result<DD> {
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::DdOverflow)
    }
}

fn finite_inputs(a: &DD, b: &DD) -> Result<()> {
    if a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn checked_dd_add_d(a: DD, b: f64) -> Result<DD> {
    finite_inputs(&a, &DD::from_f64(b))?;
    finite_result(dd_add_d(a, b))
}

pub fn checked_dd_add_dd(a: DD, b: DD) -> Result<DD> {
    finite_inputs(&a, &b)?;
    finite_result(dd_add_dd(a, b))
}

pub fn checked_dd_mul_d(a: DD, b: f64) -> Result<DD> {
    finite_inputs(&a, &DD::from_f64(b))?;
    finite_result(dd_mul_d(a, b))
}

pub fn checked_dd_mul_dd(a: DD, b: DD) -> Result<DD> {
    finite_inputs(&a, &b)?;
    finite_result(dd_mul_dd(a, b))
}

pub fn checked_dd_div_dd(a: DD, b: DD) -> Result<DD> {
    finite_inputs(&a, &b)?;
    if b.hi == 0.0 {
        return Err(Error::DdDivisionByZero);
    }
    finite_result(dd_div_dd(a, b))
}
