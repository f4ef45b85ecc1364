//! Exact-arithmetic reference: series generators, exact qd tables, Hankel
//! determinants, reference zeros and relative-error measurement.

mod exact_qd;
mod generators;
mod hankel;
mod poly;
mod proqd;

pub use exact_qd::{exact_qd, exact_qd_hankel, ExactQdTable};
pub use generators::{
    exp_series, gen_laguerre, gen_random_poly, gen_taylor_exp_rational, random_coefficients,
};
pub use hankel::{bareiss_det, hankel, HankelTable};
pub use poly::{real_zeros, reference_zeros, IntPoly};
pub use proqd::exact_proqd_sweeps;

use crate::bigreal::{split_rational, BigReal};

/// `(fl(x), fl(x - fl(x)))` and the magnitude of what the pair drops.
pub fn real_to_dd(x: &BigReal) -> (f64, f64, f64) {
    let (hi, lo, dropped) = split_rational(x);
    (hi, lo, crate::bigreal::round_to_f64(&dropped).abs())
}

/// `|approx - exact| / |exact|`, or `None` when `exact` is zero.
pub fn rel_error(approx: f64, exact: &BigReal) -> Option<f64> {
    crate::bigreal::relative_error(approx, exact)
}
