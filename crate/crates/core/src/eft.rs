//! Error-free transformations of binary64 sum, product and division.
//!
//! The kernels are written operation-for-operation after the classical
//! listings (Knuth's TwoSum, Dekker's FastTwoSum/Split/TwoProd and the
//! remainder-based DivRem) so that the flop counts are 6, 3, 4, 17 and 20.
//! They do not check their inputs; the `checked_*` wrappers do.

use crate::arith::Fp;
use crate::error::{Error, Result};

/// Unevaluated sum `hi + lo` produced by an error-free transformation.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TwoTerm<F = f64> {
    pub hi: F,
    pub lo: F,
}

impl<F> TwoTerm<F> {
    #[inline(always)]
    pub fn new(hi: F, lo: F) -> Self {
        TwoTerm { hi, lo }
    }
}

impl<F: Copy> From<TwoTerm<F>> for (F, F) {
    fn from(t: TwoTerm<F>) -> (F, F) {
        (t.hi, t.lo)
    }
}

/// `2^27 + 1`, the Veltkamp splitting constant for binary64.
pub const SPLIT_FACTOR: f64 = 134_217_729.0;

/// Inputs above this magnitude make `SPLIT_FACTOR * a` overflow.
pub const SPLIT_LIMIT: f64 = 6.696_928_794_914_171e299; // 2^996

/// Smallest product magnitude whose TwoProd residual is still a normal number.
pub const PROD_UNDERFLOW_LIMIT: f64 = 2.004_168_360_008_973e-292; // 2^-969

#[inline(always)]
pub fn two_sum<F: Fp>(a: F, b: F) -> TwoTerm<F> {
    let x = a + b;
    let z = x - a;
    let y = (a - (x - z)) + (b - z);
    TwoTerm::new(x, y)
}

/// Dekker's FastTwoSum. Requires `|a| >= |b|`, asserted in debug builds.
#[inline(always)]
pub fn fast_two_sum<F: Fp>(a: F, b: F) -> TwoTerm<F> {
    debug_assert!(
        a.is_zero() || a.abs() >= b.abs(),
        "fast_two_sum ordering violated"
    );
    fast_two_sum_unordered(a, b)
}

/// FastTwoSum without the ordering assertion.
///
/// The compensated builders renormalize `(value, -residual)` pairs with this
/// form. When the residual dominates a cancelled value the pair is still
/// renormalized by the same three operations, which is what the listings do.
#[inline(always)]
pub fn fast_two_sum_unordered<F: Fp>(a: F, b: F) -> TwoTerm<F> {
    let x = a + b;
    let y = (a - x) + b;
    TwoTerm::new(x, y)
}

#[inline(always)]
pub fn split<F: Fp>(a: F) -> TwoTerm<F> {
    let c = F::from_f64(SPLIT_FACTOR) * a;
    let x = c - (c - a);
    let y = a - x;
    TwoTerm::new(x, y)
}

#[cfg(not(feature = "fma"))]
#[inline(always)]
pub fn two_prod<F: Fp>(a: F, b: F) -> TwoTerm<F> {
    let x = a * b;
    let TwoTerm { hi: a1, lo: a2 } = split(a);
    let TwoTerm { hi: b1, lo: b2 } = split(b);
    let y = a2 * b2 - (((x - a1 * b1) - a2 * b1) - a1 * b2);
    TwoTerm::new(x, y)
}

#[cfg(feature = "fma")]
#[inline(always)]
pub fn two_prod<F: Fp>(a: F, b: F) -> TwoTerm<F> {
    let x = a * b;
    let y = a.mul_add(b, -x);
    TwoTerm::new(x, y)
}

/// Quotient and exact remainder: `a = b*q + r` with `q = fl(a/b)`.
#[inline(always)]
pub fn div_rem<F: Fp>(a: F, b: F) -> (F, F) {
    let q = a / b;
    let TwoTerm { hi: x, lo: y } = two_prod(q, b);
    let r = (a - x) - y;
    (q, r)
}

fn finite2(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn checked_two_sum(a: f64, b: f64) -> Result<TwoTerm> {
    finite2(a, b)?;
    let t = two_sum(a, b);
    if t.hi.is_finite() && t.lo.is_finite() {
        Ok(t)
    } else {
        Err(Error::EftOverflow)
    }
}

pub fn checked_fast_two_sum(a: f64, b: f64) -> Result<TwoTerm> {
    finite2(a, b)?;
    if a != 0.0 && a.abs() < b.abs() {
        return Err(Error::FastTwoSumOrder);
    }
    let t = fast_two_sum_unordered(a, b);
    if t.hi.is_finite() && t.lo.is_finite() {
        Ok(t)
    } else {
        Err(Error::EftOverflow)
    }
}

pub fn checked_split(a: f64) -> Result<TwoTerm> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    if a.abs() > SPLIT_LIMIT {
        return Err(Error::SplitOverflow);
    }
    Ok(split(a))
}

fn product_in_range(a: f64, b: f64) -> bool {
    if a == 0.0 || b == 0.0 {
        return true;
    }
    let p = a * b;
    a.abs() <= SPLIT_LIMIT
        && b.abs() <= SPLIT_LIMIT
        && p.is_finite()
        && p.abs() >= PROD_UNDERFLOW_LIMIT
}

pub fn checked_two_prod(a: f64, b: f64) -> Result<TwoTerm> {
    finite2(a, b)?;
    if !product_in_range(a, b) {
        return Err(Error::EftRange);
    }
    Ok(two_prod(a, b))
}

pub fn checked_div_rem(a: f64, b: f64) -> Result<(f64, f64)> {
    finite2(a, b)?;
    if b == 0.0 {
        return Err(Error::DivisionByZero);
    }
    let q = a / b;
    if !q.is_finite() || !product_in_range(q, b) {
        return Err(Error::EftRange);
    }
    Ok(div_rem(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::Dyadic;

    const U: f64 = 1.1102230246251565e-16; // 2^-53

    fn p2(e: i32) -> f64 {
        crate::bigreal::pow2(e)
    }

    #[test]
    fn two_sum_identity_cases() {
        assert_eq!(two_sum(1.0, 0.0), TwoTerm::new(1.0, 0.0));
        assert_eq!(two_sum(p2(53), 1.0), TwoTerm::new(p2(53), 1.0));
    }

    #[test]
    fn fast_two_sum_cases() {
        assert_eq!(fast_two_sum(1.0, 0.0), TwoTerm::new(1.0, 0.0));
        assert_eq!(fast_two_sum(1.0, p2(-80)), TwoTerm::new(1.0, p2(-80)));
        assert_eq!(checked_fast_two_sum(1.0, 2.0), Err(Error::FastTwoSumOrder));
    }

    #[test]
    #[cfg(debug_assertions)]
    #[should_panic(expected = "fast_two_sum ordering violated")]
    fn fast_two_sum_asserts_ordering_in_debug() {
        let _ = fast_two_sum(1.0, 4.0);
    }

    fn significant_bits(x: f64) -> u32 {
        if x == 0.0 {
            return 0;
        }
        let d = Dyadic::from_f64(x);
        d.mantissa.magnitude().bits() as u32
    }

    #[test]
    fn split_of_zero_and_boundary() {
        assert_eq!(split(0.0), TwoTerm::new(0.0, 0.0));
        let a = p2(27) + 1.0;
        let t = split(a);
        assert_eq!(t.hi + t.lo, a);
        assert!(significant_bits(t.hi) <= 27);
        assert!(significant_bits(t.lo) <= 27);
        assert_eq!(checked_split(p2(1000)), Err(Error::SplitOverflow));
    }

    #[test]
    fn two_prod_cases() {
        assert_eq!(two_prod(1.0, 0.3), TwoTerm::new(0.3, 0.0));
        let a = 1.0 + p2(-27);
        assert_eq!(two_prod(a, a), TwoTerm::new(1.0 + p2(-26), p2(-54)));
        assert_eq!(checked_two_prod(p2(600), p2(600)), Err(Error::EftRange));
        assert_eq!(checked_two_prod(p2(-600), p2(-600)), Err(Error::EftRange));
    }

    #[test]
    fn div_rem_cases() {
        assert_eq!(div_rem(6.0, 3.0), (2.0, 0.0));
        let (q, r) = div_rem(1.0, 3.0);
        assert_eq!(q, 1.0 / 3.0);
        let exact_r = Dyadic::from_f64(1.0).sub(&Dyadic::from_f64(3.0).mul(&Dyadic::from_f64(q)));
        assert_eq!(Dyadic::from_f64(r), exact_r);
        assert!(r.abs() <= U);
        assert_eq!(checked_div_rem(1.0, 0.0), Err(Error::DivisionByZero));
    }

    #[test]
    fn checked_variants_reject_non_finite() {
        assert_eq!(checked_two_sum(f64::NAN, 1.0), Err(Error::NonFinite));
        assert_eq!(checked_two_sum(f64::MAX, f64::MAX), Err(Error::EftOverflow));
    }
}
