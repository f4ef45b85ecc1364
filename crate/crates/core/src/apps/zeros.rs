use crate::bigreal::{relative_error, BigReal};
use crate::error::Result;
use crate::progressive::{run_method, Method};
use crate::series::PolyInput;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroReport {
    pub method: &'static str,
    pub tol: f64,
    pub zeros: Vec<f64>,
    pub natural: Vec<f64>,
    pub sweeps: usize,
    pub max_e: f64,
    pub converged: bool,
    /// Relative error of each sorted zero against the attached reference.
    pub rel_err: Option<Vec<f64>>,
}

impl ZeroReport {
    pub fn max_rel_err(&self) -> Option<f64> {
        self.rel_err.as_ref().map(|v| v.iter().fold(0.0, |a: f64, &b| a.max(b)))
    }
}

/// All zeros by the progressive scheme; `reference` holds sorted exact
/// zeros when errors are wanted.
pub fn zeros(
    poly: &PolyInput,
    method: Method,
    tol: f64,
    max_sweeps: usize,
    reference: Option<&[BigReal]>,
) -> Result<ZeroReport> {
    let r = run_method(method, poly, tol, max_sweeps)?;
    let rel_err = reference.map(|z| {
        r.zeros
            .iter()
            .zip(z)
            .map(|(a, b)| relative_error(*a, b).unwrap_or(f64::INFINITY))
            .collect()
    });
    Ok(ZeroReport {
        method: method.name(),
        tol,
        zeros: r.zeros,
        natural: r.natural,
        sweeps: r.sweeps,
        max_e: r.max_e,
        converged: r.converged,
        rel_err,
    })
}
