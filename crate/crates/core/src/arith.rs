//! Scalar abstraction shared by the floating-point kernels.
//!
//! Every kernel in [`crate::eft`], [`crate::dd`], [`crate::qdtable`] and
//! [`crate::progressive`] is generic over [`Fp`]. Production code
//! instantiates it with `f64`; the flop accounting in
//! [`crate::analysis::flops`] instantiates it with [`Counted`], which performs
//! the same binary64 operations while counting each `+ - * /`.
//! Negation and absolute value are sign-bit manipulations and are not counted.

use std::cell::Cell;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Fp:
    Copy
    + Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;

    /// Fused `self * a + b`; only reached from the `fma` TwoProd variant.
    fn mul_add(self, a: Self, b: Self) -> Self;

    #[inline]
    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    #[inline]
    fn is_zero(self) -> bool {
        self.to_f64() == 0.0
    }
}

impl Fp for f64 {
    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline(always)]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline(always)]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline(always)]
    fn mul_add(self, a: Self, b: Self) -> Self {
        f64::mul_add(self, a, b)
    }
}

thread_local! {
    static FLOPS: Cell<u64> = const { Cell::new(0) };
}

/// Number of counted operations performed on this thread so far.
pub fn flop_count() -> u64 {
    FLOPS.with(Cell::get)
}

pub fn reset_flop_count() {
    FLOPS.with(|c| c.set(0));
}

#[inline]
fn tick() {
    FLOPS.with(|c| c.set(c.get() + 1));
}

/// A binary64 value whose arithmetic increments a thread-local counter.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Counted(pub f64);

macro_rules! counted_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Counted {
            type Output = Counted;
            #[inline]
            fn $method(self, rhs: Counted) -> Counted {
                tick();
                Counted(self.0 $op rhs.0)
            }
        }
    };
}

counted_binop!(Add, add, +);
counted_binop!(Sub, sub, -);
counted_binop!(Mul, mul, *);
counted_binop!(Div, div, /);

impl Neg for Counted {
    type Output = Counted;
    #[inline]
    fn neg(self) -> Counted {
        Counted(-self.0)
    }
}

impl Fp for Counted {
    fn from_f64(x: f64) -> Self {
        Counted(x)
    }
    fn to_f64(self) -> f64 {
        self.0
    }
    fn abs(self) -> Self {
        Counted(self.0.abs())
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        // Counted as two operations so the fma variant stays comparable.
        tick();
        tick();
        Counted(self.0.mul_add(a.0, b.0))
    }
}
