//! qd tables built by the classical, compensated and double-double engines.
//!
//! Cell `(m, n)` of the q-plane exists for `1 <= m <= (N+1)/2` and
//! `0 <= n <= N-2m+1`; the e-plane has one entry fewer per column
//! (`0 <= n <= N-2m`), since `e_m^(N-2m+1)` would need `q_m^(N-2m+2)`.
//!
//! Columns are processed left to right. Inside column `m` the index `n`
//! runs downward and each step computes `e_m^(n)` and then
//! `q_{m+1}^(n)`, which needs `e_m^(n+1)` from the previous step.
//!
//! A compensated cell stores the pair `(value, eps)` where `eps` estimates
//! `value - exact`, so `value - eps` is the corrected result. The
//! double-double engine uses the same convention with `eps = -lo`.

use crate::arith::Fp;
use crate::dd::{dd_add_dd, dd_div_dd, dd_mul_dd, DD};
use crate::eft::{div_rem, fast_two_sum_unordered, two_prod, two_sum, TwoTerm};
use crate::error::{Error, Result};
use crate::series::SeriesInput;
use serde::{Deserialize, Serialize};

/// Divisors below this magnitude mask the cell instead of producing a
/// quotient whose EFT residual would be lost to underflow (`2^-968`).
pub const NEAR_BREAKDOWN: f64 = 4.008_336_720_017_946e-292;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Qd,
    Compqd,
    Ddqd,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Qd => "qd",
            Algorithm::Compqd => "compqd",
            Algorithm::Ddqd => "ddqd",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "qd" => Ok(Algorithm::Qd),
            "compqd" => Ok(Algorithm::Compqd),
            "ddqd" => Ok(Algorithm::Ddqd),
            _ => Err(format!("unknown algorithm `{s}`")),
        }
    }
}

/// How the compensated engine seeds the first q-column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Init {
    /// Double-double division of the split coefficients.
    #[default]
    Real,
    /// DivRem of the binary64 coefficients; `lo` parts are ignored.
    Float,
}

/// State of one table cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cell {
    Valid,
    /// The divisor was exactly zero.
    Breakdown,
    /// The divisor was nonzero but below [`NEAR_BREAKDOWN`].
    NearBreakdown,
    /// The result overflowed.
    NonFinite,
    /// A predecessor in the rhombus is masked.
    Inherited,
}

impl Cell {
    pub fn is_valid(self) -> bool {
        self == Cell::Valid
    }
}

/// Which kind of cell an observer is told about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    Q1,
    E,
    Q,
}

/// A finished qd table. Masked cells hold NaN.
///
/// `q[m-1][n]` is `q_m^(n)` and `e[m-1][n]` is `e_m^(n)`. The residual planes
/// are present for the compensated and double-double engines.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "TableJson", try_from = "TableJson")]
pub struct QdTable {
    pub algorithm: Algorithm,
    pub degree: usize,
    pub q: Vec<Vec<f64>>,
    pub e: Vec<Vec<f64>>,
    pub eps_q: Option<Vec<Vec<f64>>>,
    pub eps_e: Option<Vec<Vec<f64>>>,
    pub q_state: Vec<Vec<Cell>>,
    pub e_state: Vec<Vec<Cell>>,
}

/// Serialized layout: masked cells become `null`, states go under `mask`.
#[derive(Serialize, Deserialize)]
struct TableJson {
    algorithm: Algorithm,
    degree: usize,
    q: Vec<Vec<Option<f64>>>,
    e: Vec<Vec<Option<f64>>>,
    eps_q: Option<Vec<Vec<Option<f64>>>>,
    eps_e: Option<Vec<Vec<Option<f64>>>>,
    mask: MaskJson,
}

#[derive(Serialize, Deserialize)]
struct MaskJson {
    q: Vec<Vec<Cell>>,
    e: Vec<Vec<Cell>>,
}

fn to_json_plane(p: &[Vec<f64>], s: &[Vec<Cell>]) -> Vec<Vec<Option<f64>>> {
    p.iter()
        .zip(s)
        .map(|(c, s)| c.iter().zip(s).map(|(v, s)| s.is_valid().then_some(*v)).collect())
        .collect()
}

fn from_json_plane(p: Vec<Vec<Option<f64>>>, s: &[Vec<Cell>]) -> std::result::Result<Vec<Vec<f64>>, String> {
    if p.len() != s.len() || p.iter().zip(s).any(|(a, b)| a.len() != b.len()) {
        return Err("plane shape does not match mask".into());
    }
    Ok(p.into_iter()
        .map(|c| c.into_iter().map(|v| v.unwrap_or(f64::NAN)).collect())
        .collect())
}

impl From<QdTable> for TableJson {
    fn from(t: QdTable) -> Self {
        TableJson {
            algorithm: t.algorithm,
            degree: t.degree,
            q: to_json_plane(&t.q, &t.q_state),
            e: to_json_plane(&t.e, &t.e_state),
            eps_q: t.eps_q.as_ref().map(|p| to_json_plane(p, &t.q_state)),
            eps_e: t.eps_e.as_ref().map(|p| to_json_plane(p, &t.e_state)),
            mask: MaskJson { q: t.q_state, e: t.e_state },
        }
    }
}

impl TryFrom<TableJson> for QdTable {
    type Error = String;
    fn try_from(j: TableJson) -> std::result::Result<Self, String> {
        let cols = columns(j.degree);
        let shape_ok = j.mask.q.len() == cols
            && j.mask.e.len() == cols
            && (1..=cols).all(|m| {
                j.mask.q[m - 1].len() == q_len(j.degree, m) && j.mask.e[m - 1].len() == e_len(j.degree, m)
            });
        if !shape_ok {
            return Err("mask shape does not match degree".into());
        }
        let q = from_json_plane(j.q, &j.mask.q)?;
        let e = from_json_plane(j.e, &j.mask.e)?;
        let eps_q = j.eps_q.map(|p| from_json_plane(p, &j.mask.q)).transpose()?;
        let eps_e = j.eps_e.map(|p| from_json_plane(p, &j.mask.e)).transpose()?;
        Ok(QdTable {
            algorithm: j.algorithm,
            degree: j.degree,
            q,
            e,
            eps_q,
            eps_e,
            q_state: j.mask.q,
            e_state: j.mask.e,
        })
    }
}

/// Tables carrying residual planes share the [`QdTable`] layout.
pub type CompQdTable = QdTable;

/// Number of q-columns for degree `n`.
pub fn columns(degree: usize) -> usize {
    (degree + 1) / 2
}

/// Length of q-column `m` (1-based) for degree `degree`.
pub fn q_len(degree: usize, m: usize) -> usize {
    (degree + 2).saturating_sub(2 * m)
}

/// Length of e-column `m` (1-based) for degree `degree`.
pub fn e_len(degree: usize, m: usize) -> usize {
    (degree + 1).saturating_sub(2 * m)
}

impl QdTable {
    pub fn columns(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self, m: usize, n: usize) -> Option<f64> {
        get(&self.q, &self.q_state, m, n)
    }

    pub fn e(&self, m: usize, n: usize) -> Option<f64> {
        get(&self.e, &self.e_state, m, n)
    }

    pub fn q_eps(&self, m: usize, n: usize) -> Option<f64> {
        self.q(m, n)?;
        Some(self.eps_q.as_ref().map_or(0.0, |p| p[m - 1][n]))
    }

    pub fn e_eps(&self, m: usize, n: usize) -> Option<f64> {
        self.e(m, n)?;
        Some(self.eps_e.as_ref().map_or(0.0, |p| p[m - 1][n]))
    }

    pub fn q_cell(&self, m: usize, n: usize) -> Option<Cell> {
        self.q_state.get(m.checked_sub(1)?)?.get(n).copied()
    }

    pub fn e_cell(&self, m: usize, n: usize) -> Option<Cell> {
        self.e_state.get(m.checked_sub(1)?)?.get(n).copied()
    }

    /// Largest valid `n` in q-column `m`.
    pub fn deepest_q(&self, m: usize) -> Option<usize> {
        let col = self.q_state.get(m.checked_sub(1)?)?;
        col.iter().rposition(|c| c.is_valid())
    }

    pub fn masked_cells(&self) -> usize {
        self.q_state
            .iter()
            .chain(&self.e_state)
            .flatten()
            .filter(|c| !c.is_valid())
            .count()
    }

    /// True if both tables hold the same bits in every plane.
    pub fn bit_eq(&self, other: &QdTable) -> bool {
        fn plane(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
            a.len() == b.len()
                && a.iter().zip(b).all(|(x, y)| {
                    x.len() == y.len()
                        && x.iter().zip(y).all(|(u, v)| u.to_bits() == v.to_bits())
                })
        }
        fn opt(a: &Option<Vec<Vec<f64>>>, b: &Option<Vec<Vec<f64>>>) -> bool {
            match (a, b) {
                (Some(a), Some(b)) => plane(a, b),
                (None, None) => true,
                _ => false,
            }
        }
        self.algorithm == other.algorithm
            && self.degree == other.degree
            && self.q_state == other.q_state
            && self.e_state == other.e_state
            && plane(&self.q, &other.q)
            && plane(&self.e, &other.e)
            && opt(&self.eps_q, &other.eps_q)
            && opt(&self.eps_e, &other.eps_e)
    }
}

fn get(vals: &[Vec<f64>], state: &[Vec<Cell>], m: usize, n: usize) -> Option<f64> {
    let i = m.checked_sub(1)?;
    match state.get(i)?.get(n)? {
        Cell::Valid => Some(vals[i][n]),
        _ => None,
    }
}

/// One arithmetic engine: how a cell is represented and combined.
trait Engine<F: Fp> {
    type V: Copy;
    fn zero(&self) -> Self::V;
    fn q1(&self, n: usize) -> Self::V;
    fn e(&self, q_next: Self::V, q_here: Self::V, e_prev: Self::V) -> Self::V;
    fn q(&self, e_next: Self::V, e_here: Self::V, q_next: Self::V) -> Self::V;
    fn lead(&self, v: Self::V) -> F;
    fn finite(&self, v: Self::V) -> bool;
}

struct Classical<'a, F> {
    c: &'a [F],
}

impl<F: Fp> Engine<F> for Classical<'_, F> {
    type V = F;
    fn zero(&self) -> F {
        F::zero()
    }
    fn q1(&self, n: usize) -> F {
        self.c[n + 1] / self.c[n]
    }
    #[inline(always)]
    fn e(&self, q_next: F, q_here: F, e_prev: F) -> F {
        q_next - q_here + e_prev
    }
    #[inline(always)]
    fn q(&self, e_next: F, e_here: F, q_next: F) -> F {
        e_next / e_here * q_next
    }
    fn lead(&self, v: F) -> F {
        v
    }
    fn finite(&self, v: F) -> bool {
        v.to_f64().is_finite()
    }
}

/// `(value, eps)` with `value - eps` the corrected result.
#[derive(Clone, Copy, Debug)]
struct Comp<F> {
    v: F,
    eps: F,
}

struct Compensated<'a, F> {
    hi: &'a [F],
    lo: &'a [F],
    init: Init,
}

impl<F: Fp> Engine<F> for Compensated<'_, F> {
    type V = Comp<F>;
    fn zero(&self) -> Comp<F> {
        Comp { v: F::zero(), eps: F::zero() }
    }
    fn q1(&self, n: usize) -> Comp<F> {
        match self.init {
            Init::Real => {
                let r = dd_div_dd(DD::new(self.hi[n + 1], self.lo[n + 1]), DD::new(self.hi[n], self.lo[n]));
                Comp { v: r.hi, eps: -r.lo }
            }
            Init::Float => {
                let (q, r) = div_rem(self.hi[n + 1], self.hi[n]);
                Comp { v: q, eps: -(r / self.hi[n]) }
            }
        }
    }
    #[inline(always)]
    fn e(&self, q_next: Comp<F>, q_here: Comp<F>, e_prev: Comp<F>) -> Comp<F> {
        let TwoTerm { hi: s, lo: mu1 } = two_sum(q_next.v, -q_here.v);
        let TwoTerm { hi: e, lo: mu2 } = two_sum(s, e_prev.v);
        let eps = q_next.eps - q_here.eps + e_prev.eps - mu1 - mu2;
        let TwoTerm { hi: e, lo: neg_eps } = fast_two_sum_unordered(e, -eps);
        Comp { v: e, eps: -neg_eps }
    }
    #[inline(always)]
    fn q(&self, e_next: Comp<F>, e_here: Comp<F>, q_next: Comp<F>) -> Comp<F> {
        let (t, mu3) = div_rem(e_next.v, e_here.v);
        let TwoTerm { hi: q, lo: mu4 } = two_prod(t, q_next.v);
        let eps = (q_next.eps * e_next.v + e_next.eps * q_next.v
            - e_here.eps * q
            - mu3 * q_next.v
            - mu4 * e_here.v)
            / e_here.v;
        let TwoTerm { hi: q, lo: neg_eps } = fast_two_sum_unordered(q, -eps);
        Comp { v: q, eps: -neg_eps }
    }
    fn lead(&self, v: Comp<F>) -> F {
        v.v
    }
    fn finite(&self, v: Comp<F>) -> bool {
        v.v.to_f64().is_finite() && v.eps.to_f64().is_finite()
    }
}

struct DoubleDouble<'a, F> {
    hi: &'a [F],
    lo: &'a [F],
}

impl<F: Fp> Engine<F> for DoubleDouble<'_, F> {
    type V = DD<F>;
    fn zero(&self) -> DD<F> {
        DD::new(F::zero(), F::zero())
    }
    fn q1(&self, n: usize) -> DD<F> {
        dd_div_dd(DD::new(self.hi[n + 1], self.lo[n + 1]), DD::new(self.hi[n], self.lo[n]))
    }
    #[inline(always)]
    fn e(&self, q_next: DD<F>, q_here: DD<F>, e_prev: DD<F>) -> DD<F> {
        dd_add_dd(dd_add_dd(q_next, q_here.neg()), e_prev)
    }
    #[inline(always)]
    fn q(&self, e_next: DD<F>, e_here: DD<F>, q_next: DD<F>) -> DD<F> {
        dd_mul_dd(dd_div_dd(e_next, e_here), q_next)
    }
    fn lead(&self, v: DD<F>) -> F {
        v.hi
    }
    fn finite(&self, v: DD<F>) -> bool {
        v.hi.to_f64().is_finite() && v.lo.to_f64().is_finite()
    }
}

/// Raw planes produced by an engine, before conversion to [`QdTable`].
pub struct RawTable<V> {
    pub q: Vec<Vec<V>>,
    pub e: Vec<Vec<V>>,
    pub q_state: Vec<Vec<Cell>>,
    pub e_state: Vec<Vec<Cell>>,
}

fn divisor_state(d: f64) -> Cell {
    if d == 0.0 {
        Cell::Breakdown
    } else if d.abs() < NEAR_BREAKDOWN {
        Cell::NearBreakdown
    } else {
        Cell::Valid
    }
}

fn drive<F: Fp, G: Engine<F>>(
    g: &G,
    lead_coeffs: &[F],
    obs: &mut dyn FnMut(CellKind, usize, usize),
) -> Result<RawTable<G::V>> {
    let degree = lead_coeffs.len() - 1;
    let cols = columns(degree);
    let zero = g.zero();
    let mut q: Vec<Vec<G::V>> = (1..=cols).map(|m| vec![zero; q_len(degree, m)]).collect();
    let mut e: Vec<Vec<G::V>> = (1..=cols).map(|m| vec![zero; e_len(degree, m)]).collect();
    let mut q_state: Vec<Vec<Cell>> = q.iter().map(|c| vec![Cell::Valid; c.len()]).collect();
    let mut e_state: Vec<Vec<Cell>> = e.iter().map(|c| vec![Cell::Valid; c.len()]).collect();
    if cols == 0 {
        return Ok(RawTable { q, e, q_state, e_state });
    }

    for n in 0..q_len(degree, 1) {
        let c = lead_coeffs[n].to_f64();
        if c == 0.0 {
            return Err(Error::Q1Breakdown { index: n });
        }
        let state = divisor_state(c);
        if state.is_valid() {
            let v = g.q1(n);
            q[0][n] = v;
            obs(CellKind::Q1, 1, n);
            if !g.finite(v) {
                q_state[0][n] = Cell::NonFinite;
            }
        } else {
            q_state[0][n] = state;
        }
    }

    for m in 1..=cols {
        let i = m - 1;
        let has_next_q = m < cols;
        for n in (0..e_len(degree, m)).rev() {
            let (e_prev, e_prev_ok) = if m == 1 {
                (zero, true)
            } else {
                (e[i - 1][n + 1], e_state[i - 1][n + 1].is_valid())
            };
            if q_state[i][n + 1].is_valid() && q_state[i][n].is_valid() && e_prev_ok {
                let v = g.e(q[i][n + 1], q[i][n], e_prev);
                e[i][n] = v;
                obs(CellKind::E, m, n);
                if !g.finite(v) {
                    e_state[i][n] = Cell::NonFinite;
                }
            } else {
                e_state[i][n] = Cell::Inherited;
            }

            if has_next_q && n < q_len(degree, m + 1) {
                let deps_ok = e_state[i][n + 1].is_valid()
                    && e_state[i][n].is_valid()
                    && q_state[i][n + 1].is_valid();
                let state = if !deps_ok {
                    Cell::Inherited
                } else {
                    divisor_state(g.lead(e[i][n]).to_f64())
                };
                if state.is_valid() {
                    let v = g.q(e[i][n + 1], e[i][n], q[i][n + 1]);
                    q[i + 1][n] = v;
                    obs(CellKind::Q, m + 1, n);
                    if !g.finite(v) {
                        q_state[i + 1][n] = Cell::NonFinite;
                    }
                } else {
                    q_state[i + 1][n] = state;
                }
            }
        }
    }
    Ok(RawTable { q, e, q_state, e_state })
}

/// Classical qd in any [`Fp`] scalar, reporting each computed cell.
pub fn build_qd_generic<F: Fp>(
    c: &[F],
    obs: &mut dyn FnMut(CellKind, usize, usize),
) -> Result<RawTable<F>> {
    check_len(c.len())?;
    drive(&Classical { c }, c, obs)
}

/// Compensated qd in any [`Fp`] scalar. Cells are `(value, eps)` pairs.
pub fn build_compqd_generic<F: Fp>(
    hi: &[F],
    lo: &[F],
    init: Init,
    obs: &mut dyn FnMut(CellKind, usize, usize),
) -> Result<RawTable<(F, F)>> {
    check_len(hi.len())?;
    let raw = drive(&Compensated { hi, lo, init }, hi, obs)?;
    Ok(map_raw(raw, |c| (c.v, c.eps)))
}

/// Double-double qd in any [`Fp`] scalar.
pub fn build_ddqd_generic<F: Fp>(
    hi: &[F],
    lo: &[F],
    obs: &mut dyn FnMut(CellKind, usize, usize),
) -> Result<RawTable<DD<F>>> {
    check_len(hi.len())?;
    drive(&DoubleDouble { hi, lo }, hi, obs)
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 {
        Err(Error::InvalidSeries("no coefficients".into()))
    } else {
        Ok(())
    }
}

fn map_raw<A, B>(raw: RawTable<A>, f: impl Fn(A) -> B) -> RawTable<B> {
    let map = |p: Vec<Vec<A>>| -> Vec<Vec<B>> {
        p.into_iter().map(|c| c.into_iter().map(&f).collect()).collect()
    };
    RawTable {
        q: map(raw.q),
        e: map(raw.e),
        q_state: raw.q_state,
        e_state: raw.e_state,
    }
}

fn masked(vals: Vec<Vec<f64>>, state: &[Vec<Cell>]) -> Vec<Vec<f64>> {
    vals.into_iter()
        .zip(state)
        .map(|(c, s)| {
            c.into_iter()
                .zip(s)
                .map(|(v, s)| if s.is_valid() { v } else { f64::NAN })
                .collect()
        })
        .collect()
}

fn finish(
    algorithm: Algorithm,
    degree: usize,
    raw: RawTable<(f64, f64)>,
    residuals: bool,
) -> QdTable {
    let split = |p: &Vec<Vec<(f64, f64)>>, k: usize| -> Vec<Vec<f64>> {
        p.iter()
            .map(|c| c.iter().map(|t| if k == 0 { t.0 } else { t.1 }).collect())
            .collect()
    };
    let q = masked(split(&raw.q, 0), &raw.q_state);
    let e = masked(split(&raw.e, 0), &raw.e_state);
    let (eps_q, eps_e) = if residuals {
        (
            Some(masked(split(&raw.q, 1), &raw.q_state)),
            Some(masked(split(&raw.e, 1), &raw.e_state)),
        )
    } else {
        (None, None)
    };
    QdTable {
        algorithm,
        degree,
        q,
        e,
        eps_q,
        eps_e,
        q_state: raw.q_state,
        e_state: raw.e_state,
    }
}

fn noop(_: CellKind, _: usize, _: usize) {}

/// Classical qd with `q_1^(n) = fl(c_{n+1}/c_n)`.
pub fn build_qd(series: &SeriesInput) -> Result<QdTable> {
    let raw = build_qd_generic(&series.hi, &mut noop)?;
    Ok(finish(Algorithm::Qd, series.degree(), map_raw(raw, |v| (v, 0.0)), false))
}

/// Compensated qd.
pub fn build_compqd(series: &SeriesInput, init: Init) -> Result<CompQdTable> {
    let raw = build_compqd_generic(&series.hi, &series.lo, init, &mut noop)?;
    Ok(finish(Algorithm::Compqd, series.degree(), raw, true))
}

/// qd evaluated entirely in double-double arithmetic.
pub fn build_ddqd(series: &SeriesInput) -> Result<QdTable> {
    let raw = build_ddqd_generic(&series.hi, &series.lo, &mut noop)?;
    Ok(finish(
        Algorithm::Ddqd,
        series.degree(),
        map_raw(raw, |d| (d.hi, -d.lo)),
        true,
    ))
}

pub fn build(series: &SeriesInput, algorithm: Algorithm, init: Init) -> Result<QdTable> {
    match algorithm {
        Algorithm::Qd => build_qd(series),
        Algorithm::Compqd => build_compqd(series, init),
        Algorithm::Ddqd => build_ddqd(series),
    }
}

/// First q-column seeded by double-double division: `(value, eps)` pairs.
pub fn init_q1_real(series: &SeriesInput) -> Result<Vec<(f64, f64)>> {
    let g = Compensated { hi: &series.hi, lo: &series.lo, init: Init::Real };
    init_column(&g, &series.hi)
}

/// First q-column seeded by DivRem of binary64 coefficients.
pub fn init_q1_float(c: &[f64]) -> Result<Vec<(f64, f64)>> {
    if let Some(i) = c.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidSeries(format!("coefficient {i} is not finite")));
    }
    let g = Compensated { hi: c, lo: c, init: Init::Float };
    init_column(&g, c)
}

fn init_column(g: &Compensated<'_, f64>, c: &[f64]) -> Result<Vec<(f64, f64)>> {
    (0..c.len().saturating_sub(1))
        .map(|n| {
            if c[n] == 0.0 {
                Err(Error::Q1Breakdown { index: n })
            } else {
                let v = g.q1(n);
                Ok((v.v, v.eps))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::{rational_from_f64, BigReal};
    use num_traits::Signed;

    fn ones(n: usize) -> SeriesInput {
        SeriesInput::from_f64(&vec![1.0; n + 1]).unwrap()
    }

    fn pow2_plus_one(n: usize) -> SeriesInput {
        SeriesInput::from_f64(&(0..=n).map(|k| 2f64.powi(k as i32) + 1.0).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn near_breakdown_constant_is_two_to_minus_968() {
        assert_eq!(NEAR_BREAKDOWN, crate::bigreal::pow2(-968));
    }

    #[test]
    fn shape_is_triangular() {
        for degree in 0..12 {
            let t = build_qd(&pow2_plus_one(degree)).unwrap();
            assert_eq!(t.q.len(), (degree + 1) / 2);
            for m in 1..=t.q.len() {
                assert_eq!(t.q[m - 1].len(), degree + 2 - 2 * m);
                assert_eq!(t.e[m - 1].len(), (degree + 1).saturating_sub(2 * m));
            }
        }
    }

    #[test]
    fn geometric_series_masks_second_column() {
        for t in [
            build_qd(&ones(8)).unwrap(),
            build_compqd(&ones(8), Init::Real).unwrap(),
            build_ddqd(&ones(8)).unwrap(),
        ] {
            assert!(t.q[0].iter().all(|&q| q == 1.0));
            assert!(t.e[0].iter().all(|&e| e == 0.0));
            assert!(t.q_state[1].iter().all(|&s| s == Cell::Breakdown));
            assert!(t.e_state[1].iter().all(|&s| s == Cell::Inherited));
            assert!(t.q_state[2].iter().all(|&s| s == Cell::Inherited));
            if let Some(eps) = &t.eps_q {
                assert!(eps[0].iter().all(|&x| x == 0.0));
            }
        }
    }

    #[test]
    fn first_cells_of_two_pole_series() {
        let t = build_qd(&pow2_plus_one(6)).unwrap();
        assert_eq!(t.q(1, 0), Some(1.5));
        assert_eq!(t.e(1, 0), Some(5.0 / 3.0 - 1.5));
        let c = build_compqd(&pow2_plus_one(6), Init::Real).unwrap();
        assert_eq!(c.q(1, 0), Some(1.5));
        assert_eq!(c.q_eps(1, 0), Some(0.0));
        // Corrected e_1^(0) should be 1/6 to nearly double-double accuracy.
        let corr = rational_from_f64(c.e(1, 0).unwrap()) - rational_from_f64(c.e_eps(1, 0).unwrap());
        let exact = BigReal::new(1.into(), 6.into());
        let rel = crate::bigreal::round_to_f64(&((corr - &exact) / exact).abs());
        assert!(rel < 1e-28, "{rel}");
    }

    #[test]
    fn q1_initializations() {
        let s = ones(5);
        assert!(init_q1_real(&s).unwrap().iter().all(|&p| p == (1.0, 0.0)));
        assert!(init_q1_float(&s.hi).unwrap().iter().all(|&p| p == (1.0, 0.0)));
        let t = pow2_plus_one(3);
        assert_eq!(init_q1_real(&t).unwrap()[0], (1.5, 0.0));
        assert_eq!(init_q1_float(&t.hi).unwrap()[0], (1.5, 0.0));
        let z = SeriesInput::from_f64(&[1.0, 0.0, 2.0, 3.0]).unwrap();
        assert_eq!(build_qd(&z), Err(Error::Q1Breakdown { index: 1 }));
        assert_eq!(init_q1_float(&[1.0, 0.0, 2.0]), Err(Error::Q1Breakdown { index: 1 }));
        // A zero last coefficient only appears as a numerator.
        assert!(build_qd(&SeriesInput::from_f64(&[1.0, 2.0, 0.0]).unwrap()).is_ok());
    }

    #[test]
    fn float_init_residual_is_remainder_over_divisor() {
        let (q, eps) = init_q1_float(&[3.0, 1.0]).unwrap()[0];
        assert_eq!(q, 1.0 / 3.0);
        let exact_r = crate::bigreal::Dyadic::from_f64(1.0)
            .sub(&crate::bigreal::Dyadic::from_f64(3.0).mul(&crate::bigreal::Dyadic::from_f64(q)));
        let r = crate::bigreal::round_to_f64(&exact_r.to_rational());
        assert_eq!(eps, -(r / 3.0));
    }

    #[test]
    fn tiny_divisor_is_near_breakdown() {
        let s = SeriesInput::from_f64(&[1.0, 1.0, 1.0 + 1e-300, 1.0, 1.0]).unwrap();
        let t = build_qd(&s).unwrap();
        assert!(t.q_state[1].contains(&Cell::NearBreakdown) || t.q_state[1].contains(&Cell::Breakdown));
        assert!(t.q_state.iter().flatten().all(|c| *c != Cell::NonFinite));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let s = SeriesInput::from_f64(&[1.0, 0.3, -0.7, 0.11, 0.5, -0.25, 0.9]).unwrap();
        for alg in [Algorithm::Qd, Algorithm::Compqd, Algorithm::Ddqd] {
            let t = build(&s, alg, Init::Real).unwrap();
            let text = serde_json::to_string(&t).unwrap();
            let back: QdTable = serde_json::from_str(&text).unwrap();
            assert!(t.bit_eq(&back), "{alg:?}");
        }
    }
}
