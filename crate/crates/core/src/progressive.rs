//! Progressive qd scheme for polynomial zeros, plain and compensated.
//!
//! The polynomial `b_0 x^k + ... + b_k` seeds the first row with
//! `q_1 = -b_1/b_0`, `q_m = 0` (m >= 2) and `e_m = b_{m+1}/b_m`. Each sweep
//! produces the next row: first every `q_m` from the old e-row, then every
//! `e_m` from the new q-row. The q-values converge to the zeros ordered by
//! decreasing modulus when the moduli are distinct.
//!
//! In the compensated variant every value carries a residual `eps` with
//! `value - eps` approximating the exact entry, exactly as in the tables.

use crate::dd::dd_div_dd;
use crate::eft::{div_rem, fast_two_sum_unordered as fts, two_prod, two_sum, TwoTerm};
use crate::error::{Error, Result};
use crate::series::PolyInput;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Proqd,
    CompProqd,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Proqd => "proqd",
            Method::CompProqd => "compproqd",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "proqd" => Ok(Method::Proqd),
            "compproqd" | "comp_proqd" => Ok(Method::CompProqd),
            _ => Err(Error::InvalidSeries(format!("unknown progressive variant '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProgressiveResult {
    /// Zero estimates sorted ascending.
    pub zeros: Vec<f64>,
    /// Final q-row, `q_1..q_k` in algorithm order (decreasing modulus).
    pub natural: Vec<f64>,
    pub sweeps: usize,
    /// `max |e_m|` over the last row.
    pub max_e: f64,
    pub converged: bool,
}

/// Current row of the scheme; `e[0]` and `e[k]` are the fixed zero borders.
#[derive(Clone, Debug)]
pub struct ProgressiveState {
    pub q: Vec<f64>,
    pub e: Vec<f64>,
    pub eps_q: Option<Vec<f64>>,
    pub eps_e: Option<Vec<f64>>,
    pub sweeps: usize,
    pub tol: f64,
    pub converged: bool,
}

pub fn default_max_sweeps(degree: usize) -> usize {
    10 * degree
}

fn check_args(poly: &PolyInput, tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::InvalidSeries("tolerance must be positive".into()));
    }
    if let Some(m) = (1..poly.degree()).find(|&m| poly.hi[m] == 0.0) {
        return Err(Error::ProgressiveBreakdown { sweep: 0, column: m });
    }
    Ok(())
}

fn max_abs(e: &[f64]) -> f64 {
    e.iter().fold(0.0, |a: f64, x| a.max(x.abs()))
}

impl ProgressiveState {
    pub fn plain(poly: &PolyInput, tol: f64) -> Result<Self> {
        check_args(poly, tol)?;
        let k = poly.degree();
        let b = &poly.hi;
        let mut q = vec![0.0; k + 1];
        let mut e = vec![0.0; k + 1];
        q[1] = -b[1] / b[0];
        for m in 1..k {
            e[m] = b[m + 1] / b[m];
        }
        Ok(ProgressiveState { q, e, eps_q: None, eps_e: None, sweeps: 0, tol, converged: false })
    }

    pub fn compensated(poly: &PolyInput, tol: f64) -> Result<Self> {
        check_args(poly, tol)?;
        let k = poly.degree();
        let mut q = vec![0.0; k + 1];
        let mut e = vec![0.0; k + 1];
        let mut eq = vec![0.0; k + 1];
        let mut ee = vec![0.0; k + 1];
        let t = dd_div_dd(poly.dd(1).neg(), poly.dd(0));
        q[1] = t.hi;
        eq[1] = -t.lo;
        for m in 1..k {
            let t = dd_div_dd(poly.dd(m + 1), poly.dd(m));
            e[m] = t.hi;
            ee[m] = -t.lo;
        }
        Ok(ProgressiveState {
            q,
            e,
            eps_q: Some(eq),
            eps_e: Some(ee),
            sweeps: 0,
            tol,
            converged: false,
        })
    }

    pub fn degree(&self) -> usize {
        self.q.len() - 1
    }

    pub fn max_e(&self) -> f64 {
        max_abs(&self.e)
    }

    /// One sweep; a no-op once converged.
    pub fn sweep(&mut self) -> Result<()> {
        self.sweep_with(Signs::Corrected)
    }

    fn sweep_with(&mut self, signs: Signs) -> Result<()> {
        if self.converged {
            return Ok(());
        }
        let k = self.degree();
        let sweep = self.sweeps + 1;
        match (&mut self.eps_q, &mut self.eps_e) {
            (Some(eq), Some(ee)) => comp_sweep(&mut self.q, &mut self.e, eq, ee, k, sweep, signs)?,
            _ => plain_sweep(&mut self.q, &mut self.e, k, sweep)?,
        }
        self.sweeps = sweep;
        if self.max_e() <= self.tol {
            self.converged = true;
        }
        Ok(())
    }

    pub fn result(&self) -> ProgressiveResult {
        let natural = self.q[1..].to_vec();
        let mut zeros = natural.clone();
        zeros.sort_by(f64::total_cmp);
        ProgressiveResult {
            zeros,
            natural,
            sweeps: self.sweeps,
            max_e: self.max_e(),
            converged: self.converged,
        }
    }
}

fn plain_sweep(q: &mut [f64], e: &mut [f64], k: usize, sweep: usize) -> Result<()> {
    for m in 1..=k {
        q[m] = e[m] - e[m - 1] + q[m];
    }
    for m in 1..k {
        if q[m] == 0.0 {
            return Err(Error::ProgressiveBreakdown { sweep, column: m });
        }
        e[m] = (q[m + 1] / q[m]) * e[m];
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Signs {
    Corrected,
    Listing,
}

fn comp_sweep(
    q: &mut [f64],
    e: &mut [f64],
    eq: &mut [f64],
    ee: &mut [f64],
    k: usize,
    sweep: usize,
    signs: Signs,
) -> Result<()> {
    // Residuals of the exact transformations enter with a minus sign since
    // eps is computed minus exact.
    let mu_sign = match signs {
        Signs::Corrected => -1.0,
        Signs::Listing => 1.0,
    };
    for m in 1..=k {
        let TwoTerm { hi: s, lo: mu1 } = two_sum(e[m], -e[m - 1]);
        let TwoTerm { hi: v, lo: mu2 } = two_sum(s, q[m]);
        let eps = mu_sign * mu1 + mu_sign * mu2 + ee[m] - ee[m - 1] + eq[m];
        let TwoTerm { hi, lo } = fts(v, -eps);
        q[m] = hi;
        eq[m] = -lo;
    }
    for m in 1..k {
        if q[m] == 0.0 {
            return Err(Error::ProgressiveBreakdown { sweep, column: m });
        }
        let (t, mu3) = div_rem(q[m + 1], q[m]);
        let TwoTerm { hi: v, lo: mu4 } = two_prod(t, e[m]);
        let eps = (mu_sign * mu3 * e[m] + mu_sign * mu4 * q[m] + ee[m] * q[m + 1] + eq[m + 1] * e[m]
            - eq[m] * v)
            / q[m];
        let TwoTerm { hi, lo } = fts(v, -eps);
        e[m] = hi;
        ee[m] = -lo;
    }
    Ok(())
}

fn run(mut st: ProgressiveState, max_sweeps: usize, signs: Signs) -> Result<ProgressiveResult> {
    while !st.converged && st.sweeps < max_sweeps {
        st.sweep_with(signs)?;
    }
    Ok(st.result())
}

/// Progressive qd in binary64. A run that exhausts `max_sweeps` returns its
/// partial estimates with `converged == false`.
pub fn proqd(poly: &PolyInput, tol: f64, max_sweeps: usize) -> Result<ProgressiveResult> {
    run(ProgressiveState::plain(poly, tol)?, max_sweeps, Signs::Corrected)
}

/// Compensated progressive qd.
pub fn comp_proqd(poly: &PolyInput, tol: f64, max_sweeps: usize) -> Result<ProgressiveResult> {
    run(ProgressiveState::compensated(poly, tol)?, max_sweeps, Signs::Corrected)
}

/// Compensated sweep with the residual signs of the printed listing, which
/// add the transformation errors instead of subtracting them. Kept to show
/// the difference.
#[doc(hidden)]
pub fn comp_proqd_listing_signs(
    poly: &PolyInput,
    tol: f64,
    max_sweeps: usize,
) -> Result<ProgressiveResult> {
    run(ProgressiveState::compensated(poly, tol)?, max_sweeps, Signs::Listing)
}

pub fn run_method(
    method: Method,
    poly: &PolyInput,
    tol: f64,
    max_sweeps: usize,
) -> Result<ProgressiveResult> {
    match method {
        Method::Proqd => proqd(poly, tol, max_sweeps),
        Method::CompProqd => comp_proqd(poly, tol, max_sweeps),
    }
}
