//! Per-cell comparison of measured relative errors with the a-priori bounds.
//!
//! Classical qd: `Phi_{m-1} gamma_{4m} cond_e` for `e_m`, and
//! `Phi_m gamma_{4m+2} cond_q` for `q_{m+1}`. The first q-column gets
//! `gamma_3`: the quotient of two rounded coefficients, rounded once more.
//!
//! Compensated qd: `u + Psi_{m-1} gamma_{11m-4}^2 cond_e` for `e_m`, and
//! `u + Psi_m gamma_{11m+2} gamma_{11m+3} cond_q` for `q_{m+1}` (including
//! `m = 0`).
//!
//! A bound is only applied where `Phi u` (resp. `Psi u`) is below `1e-3`.
//! All comparisons are exact; reported floats are rounded up.

use super::condition::ConditionTable;
use super::gamma::gamma_exact;
use super::stability::StabilityFactors;
use crate::bigreal::{rational_from_f64, round_to_f64, round_up_to_f64, unit_roundoff, BigReal};
use crate::error::{Error, Result};
use crate::oracle::ExactQdTable;
use crate::qdtable::{e_len, q_len, QdTable};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::fmt::Write;

/// Which bound family to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Qd,
    Compqd,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub kind: char,
    pub m: usize,
    pub n: usize,
    /// `None` for cells whose exact value is zero.
    pub cond: Option<f64>,
    pub rel_err: Option<f64>,
    pub bound: Option<f64>,
    /// The stability-factor gate held for this cell.
    pub applicable: bool,
    pub pass: bool,
    pub exact_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub variant: Variant,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    /// Cells where the bound applied.
    pub fn applicable(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| r.applicable)
    }

    pub fn violations(&self) -> usize {
        self.applicable().filter(|r| !r.pass).count()
    }

    /// Fraction of applicable cells within their bound (1 when none apply).
    pub fn pass_fraction(&self) -> f64 {
        let total = self.applicable().count();
        if total == 0 {
            return 1.0;
        }
        (total - self.violations()) as f64 / total as f64
    }

    /// Rows as `kind,m,n,cond,rel_err,bound,applicable,pass`.
    pub fn to_csv(&self, fmt: impl Fn(f64) -> String) -> String {
        let mut out = String::from("kind,m,n,cond,rel_err,bound,applicable,pass\n");
        let opt = |v: Option<f64>| v.map(&fmt).unwrap_or_else(|| "exact-zero".into());
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.kind,
                r.m,
                r.n,
                opt(r.cond),
                opt(r.rel_err),
                opt(r.bound),
                r.applicable,
                r.pass
            );
        }
        out
    }
}

fn gate_ok(factor: &BigReal) -> bool {
    factor * unit_roundoff() < BigReal::new(1.into(), 1000.into())
}

/// Check every valid cell of `computed` against its bound.
pub fn bound_check(
    computed: &QdTable,
    exact: &ExactQdTable,
    factors: &StabilityFactors,
    conds: &ConditionTable,
    variant: Variant,
) -> Result<BoundReport> {
    if computed.degree != exact.degree || factors.product.len() != computed.columns() + 1 {
        return Err(Error::ShapeMismatch);
    }
    let d = computed.degree;
    let u = unit_roundoff();
    let mut rows = Vec::new();
    let mut push = |kind: char, m: usize, n: usize, hat: f64, exact: &BigReal, cond: Option<&BigReal>, factor: &BigReal, g: BigReal| {
        if exact.is_zero() {
            rows.push(BoundRow {
                kind,
                m,
                n,
                cond: None,
                rel_err: None,
                bound: None,
                applicable: false,
                pass: true,
                exact_zero: true,
            });
            return;
        }
        let rel = (rational_from_f64(hat) - exact).abs() / exact.abs();
        let cond = cond.cloned().unwrap_or_else(|| BigReal::from_integer(1.into()));
        let bound = match variant {
            Variant::Qd => factor * g * &cond,
            Variant::Compqd => &u + factor * g * &cond,
        };
        rows.push(BoundRow {
            kind,
            m,
            n,
            cond: Some(round_up_to_f64(&cond)),
            rel_err: Some(round_to_f64(&rel)),
            bound: Some(round_up_to_f64(&bound)),
            applicable: gate_ok(factor),
            pass: rel <= bound,
            exact_zero: false,
        });
    };

    for m in 1..=computed.columns() {
        // q_m, bounded through column m-1's factor.
        let k = (m - 1) as u64;
        let g_q = match (variant, m) {
            (Variant::Qd, 1) => gamma_exact(3),
            (Variant::Qd, _) => gamma_exact(4 * k + 2),
            (Variant::Compqd, _) => gamma_exact(11 * k + 2) * gamma_exact(11 * k + 3),
        };
        for n in 0..q_len(d, m) {
            if let (Some(hat), Some(x)) = (computed.q(m, n), exact.q(m, n)) {
                let cond = if m == 1 { None } else { conds.cond_q(m, n) };
                if m > 1 && cond.is_none() && !x.is_zero() {
                    continue;
                }
                push('q', m, n, hat, x, cond, &factors.product[m - 1], g_q.clone());
            }
        }
        let k = m as u64;
        let g_e = match variant {
            Variant::Qd => gamma_exact(4 * k),
            Variant::Compqd => {
                let g = gamma_exact(11 * k - 4);
                &g * &g
            }
        };
        for n in 0..e_len(d, m) {
            if let (Some(hat), Some(x)) = (computed.e(m, n), exact.e(m, n)) {
                let cond = conds.cond_e(m, n);
                if cond.is_none() && !x.is_zero() {
                    continue;
                }
                push('e', m, n, hat, x, cond, &factors.product[m - 1], g_e.clone());
            }
        }
    }
    Ok(BoundReport { variant, rows })
}
