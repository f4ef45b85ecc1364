//! Flop models and instrumented flop counts.
//!
//! Computing `e_m^(0)` needs the whole table of a degree-`2m` series, and
//! `q_{m+1}^(0)` that of degree `2m+1`, so the totals are
//! `m^2 F_e + m(m-1) F_q + 2m F_input` and
//! `m^2 F_q + m(m+1) F_e + (2m+1) F_input`.

use crate::arith::{flop_count, reset_flop_count, Counted};
use crate::error::Result;
use crate::qdtable::{
    build_compqd_generic, build_ddqd_generic, build_qd_generic, e_len, q_len, Algorithm, CellKind,
    Init,
};
use crate::series::SeriesInput;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    E,
    Q,
}

/// `(F_e, F_q, F_input)` per engine, with the default q_1 seeding.
pub fn costs(algorithm: Algorithm) -> (u64, u64, u64) {
    match algorithm {
        Algorithm::Qd => (2, 2, 1),
        Algorithm::Compqd => (19, 50, 100),
        Algorithm::Ddqd => (40, 124, 100),
    }
}

/// Flops to compute `e_m^(0)` or `q_{m+1}^(0)` from scratch.
pub fn flop_model(algorithm: Algorithm, m: u64, target: Target) -> u64 {
    let (fe, fq, fi) = costs(algorithm);
    match target {
        Target::E => m * m * fe + m * (m.saturating_sub(1)) * fq + 2 * m * fi,
        Target::Q => m * m * fq + m * (m + 1) * fe + (2 * m + 1) * fi,
    }
}

/// Mean over `ms` of `flop_model(algorithm) / flop_model(qd)`.
pub fn average_ratio(algorithm: Algorithm, ms: &[u64], target: Target) -> Option<f64> {
    if ms.is_empty() {
        return None;
    }
    let sum: f64 = ms
        .iter()
        .map(|&m| flop_model(algorithm, m, target) as f64 / flop_model(Algorithm::Qd, m, target) as f64)
        .sum();
    Some(sum / ms.len() as f64)
}

/// Flops spent on each cell of one build, measured with [`Counted`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellFlops {
    pub degree: usize,
    /// `q[m-1][n]`, `e[m-1][n]`.
    pub q: Vec<Vec<u64>>,
    pub e: Vec<Vec<u64>>,
}

impl CellFlops {
    /// Total over the cells needed for `e_m^(0)` (target `E`) or
    /// `q_{m+1}^(0)` (target `Q`). `None` if the build is too shallow.
    pub fn cone(&self, m: usize, target: Target) -> Option<u64> {
        let sub = match target {
            Target::E => 2 * m,
            Target::Q => 2 * m + 1,
        };
        if sub > self.degree {
            return None;
        }
        let mut total = 0;
        for j in 1..=crate::qdtable::columns(sub) {
            total += self.q[j - 1][..q_len(sub, j)].iter().sum::<u64>();
            total += self.e[j - 1][..e_len(sub, j)].iter().sum::<u64>();
        }
        Some(total)
    }

    pub fn total(&self) -> u64 {
        self.q.iter().chain(&self.e).flatten().sum()
    }
}

/// Build `series` with counted arithmetic and record each cell's flops.
pub fn instrumented_cell_flops(
    series: &SeriesInput,
    algorithm: Algorithm,
    init: Init,
) -> Result<CellFlops> {
    let d = series.degree();
    let cols = crate::qdtable::columns(d);
    let mut q: Vec<Vec<u64>> = (1..=cols).map(|m| vec![0; q_len(d, m)]).collect();
    let mut e: Vec<Vec<u64>> = (1..=cols).map(|m| vec![0; e_len(d, m)]).collect();
    let hi: Vec<Counted> = series.hi.iter().map(|&x| Counted(x)).collect();
    let lo: Vec<Counted> = series.lo.iter().map(|&x| Counted(x)).collect();
    reset_flop_count();
    let mut last = 0u64;
    let mut obs = |kind: CellKind, m: usize, n: usize| {
        let now = flop_count();
        let spent = now - last;
        last = now;
        match kind {
            CellKind::Q1 | CellKind::Q => q[m - 1][n] = spent,
            CellKind::E => e[m - 1][n] = spent,
        }
    };
    match algorithm {
        Algorithm::Qd => {
            build_qd_generic(&hi, &mut obs)?;
        }
        Algorithm::Compqd => {
            build_compqd_generic(&hi, &lo, init, &mut obs)?;
        }
        Algorithm::Ddqd => {
            build_ddqd_generic(&hi, &lo, &mut obs)?;
        }
    }
    Ok(CellFlops { degree: d, q, e })
}
