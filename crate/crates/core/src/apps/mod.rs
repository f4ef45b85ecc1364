//! Continued fractions, poles and zeros from qd tables.

mod cfrac;
mod poles;
mod zeros;

pub use cfrac::{cfrac, cfrac_exact, cfrac_expand, CFraction};
pub use poles::{
    critical_polynomial, default_critical_row, poles_critical, poles_direct, Pole, PoleMethod, PoleReport,
    DEFAULT_CONV_TOL,
};
pub use zeros::{zeros, ZeroReport};

use crate::bigreal::{rational_from_f64, BigReal};
use crate::oracle::ExactQdTable;
use crate::qdtable::QdTable;

/// Read access shared by floating-point and exact tables.
pub trait QdSource {
    fn degree(&self) -> usize;
    fn columns(&self) -> usize;
    fn q_f64(&self, m: usize, n: usize) -> Option<f64>;
    fn e_f64(&self, m: usize, n: usize) -> Option<f64>;
    /// The stored entry as an exact rational.
    fn q_exact(&self, m: usize, n: usize) -> Option<BigReal>;
    fn deepest_q(&self, m: usize) -> Option<usize>;
}

impl QdSource for QdTable {
    fn degree(&self) -> usize {
        self.degree
    }
    fn columns(&self) -> usize {
        QdTable::columns(self)
    }
    fn q_f64(&self, m: usize, n: usize) -> Option<f64> {
        self.q(m, n)
    }
    fn e_f64(&self, m: usize, n: usize) -> Option<f64> {
        self.e(m, n)
    }
    fn q_exact(&self, m: usize, n: usize) -> Option<BigReal> {
        self.q(m, n).map(rational_from_f64)
    }
    fn deepest_q(&self, m: usize) -> Option<usize> {
        QdTable::deepest_q(self, m)
    }
}

impl QdSource for ExactQdTable {
    fn degree(&self) -> usize {
        self.degree
    }
    fn columns(&self) -> usize {
        ExactQdTable::columns(self)
    }
    fn q_f64(&self, m: usize, n: usize) -> Option<f64> {
        ExactQdTable::q_f64(self, m, n)
    }
    fn e_f64(&self, m: usize, n: usize) -> Option<f64> {
        ExactQdTable::e_f64(self, m, n)
    }
    fn q_exact(&self, m: usize, n: usize) -> Option<BigReal> {
        self.q(m, n).cloned()
    }
    fn deepest_q(&self, m: usize) -> Option<usize> {
        ExactQdTable::deepest_q(self, m)
    }
}
