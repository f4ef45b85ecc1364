use crate::input::{parse_range, polynomial, series, CliError, CliResult};
use crate::{Alg, Format, InitArg, Output, PoleMethodArg, Source, VariantArg, ZeroVariant};
use compqd::analysis::{
    bound_check, condition_table, condition_table_f64, flop_model, stability_factors, Target, Variant,
};
use compqd::apps::{self, QdSource};
use compqd::bigreal::{relative_error, round_to_f64, BigReal};
use compqd::io::FloatFormat;
use compqd::oracle::{exact_qd, exact_qd_hankel, gen_random_poly, reference_zeros, ExactQdTable};
use compqd::progressive::{default_max_sweeps, Method};
use compqd::qdtable::{build, Algorithm, Init, QdTable};
use compqd::series::SeriesInput;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("QD_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("QD_THREADS must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err("QD_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn emit(path: Option<PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(path: Option<PathBuf>, v: &Value) -> CliResult<()> {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    emit(path, &s)
}

fn float_format(f: Format) -> FloatFormat {
    match f {
        Format::Shortest => FloatFormat::Shortest,
        Format::Hex => FloatFormat::Hex,
    }
}

fn init(i: InitArg) -> Init {
    match i {
        InitArg::Real => Init::Real,
        InitArg::Float => Init::Float,
    }
}

fn algorithm(a: Alg) -> Option<Algorithm> {
    match a {
        Alg::Qd => Some(Algorithm::Qd),
        Alg::Compqd => Some(Algorithm::Compqd),
        Alg::Ddqd => Some(Algorithm::Ddqd),
        Alg::Exact => None,
    }
}

fn rational_plane(t: &ExactQdTable, q: bool) -> Value {
    let cols = t.columns();
    let plane: Vec<Vec<Value>> = (1..=cols)
        .map(|m| {
            let len = if q { t.q[m - 1].len() } else { t.e[m - 1].len() };
            (0..len)
                .map(|n| {
                    let v = if q { t.q(m, n) } else { t.e(m, n) };
                    v.map_or(Value::Null, |x| Value::String(x.to_string()))
                })
                .collect()
        })
        .collect();
    json!(plane)
}

pub fn table(src: &Source, alg: Alg, i: InitArg, output: Option<PathBuf>) -> CliResult<()> {
    let s = series(src)?;
    let v = match algorithm(alg) {
        Some(a) => serde_json::to_value(build(&s, a, init(i))?).expect("tables serialize"),
        None => {
            let x = exact_qd(&s.exact)?;
            json!({
                "algorithm": "exact",
                "degree": x.degree,
                "q": rational_plane(&x, true),
                "e": rational_plane(&x, false),
            })
        }
    };
    emit_json(output, &v)
}

pub fn conds(src: &Source, variant: VariantArg, out: &Output) -> CliResult<()> {
    let s = series(src)?;
    let x = exact_qd(&s.exact)?;
    let conds = condition_table(&x);
    let (alg, var, comp) = match variant {
        VariantArg::Qd => (Algorithm::Qd, Variant::Qd, false),
        VariantArg::Compqd => (Algorithm::Compqd, Variant::Compqd, true),
    };
    let t = build(&s, alg, Init::Real)?;
    let factors = stability_factors(&t, &x, comp)?;
    let report = bound_check(&t, &x, &factors, &conds, var)?;
    let fmt = float_format(out.format);
    emit(out.output.clone(), &report.to_csv(|v| fmt.format(v)))
}

fn exact_cfrac(s: &SeriesInput) -> CliResult<Vec<BigReal>> {
    let x = exact_qd(&s.exact)?;
    let c1 = s.exact.get(1).cloned().unwrap_or_default();
    Ok(apps::cfrac_exact(&x, &s.exact[0], &c1).0)
}

pub fn cfrac(src: &Source, alg: Alg, csv: Option<PathBuf>, out: &Output) -> CliResult<()> {
    let s = series(src)?;
    let exact = exact_cfrac(&s)?;
    let c1 = s.hi.get(1).copied().unwrap_or(0.0);
    let (name, cf) = match algorithm(alg) {
        Some(a) => (a.name(), apps::cfrac(&build(&s, a, Init::Real)?, s.hi[0], c1)),
        None => (
            "exact",
            apps::CFraction { coeffs: exact.iter().map(round_to_f64).collect(), truncated: false },
        ),
    };
    let fmt = float_format(out.format);
    if let Some(path) = csv {
        let mut text = String::from("i,a,exact,rel_err\n");
        for (i, (a, e)) in cf.coeffs.iter().zip(&exact).enumerate() {
            let err = relative_error(*a, e).map_or("exact-zero".into(), |r| fmt.format(r));
            let _ = writeln!(text, "{i},{},{},{err}", fmt.format(*a), fmt.format(round_to_f64(e)));
        }
        std::fs::write(path, text)?;
    }
    emit_json(
        out.output.clone(),
        &json!({ "algorithm": name, "coeffs": cf.coeffs, "truncated": cf.truncated }),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn poles(
    src: &Source,
    method: PoleMethodArg,
    alg: Alg,
    columns: &[usize],
    m: usize,
    j: usize,
    n: Option<usize>,
    conv_tol: f64,
    output: Option<PathBuf>,
) -> CliResult<()> {
    let s = series(src)?;
    let table: Box<dyn QdSource> = match algorithm(alg) {
        Some(a) => Box::new(build(&s, a, Init::Real)?),
        None => Box::new(exact_qd(&s.exact)?),
    };
    let report = match method {
        PoleMethodArg::Direct => {
            let which: Vec<usize> =
                if columns.is_empty() { (1..=table.columns()).collect() } else { columns.to_vec() };
            apps::poles_direct(table.as_ref(), &which, conv_tol)
        }
        PoleMethodArg::Critical => apps::poles_critical(table.as_ref(), m, j, n, conv_tol)?,
    };
    emit_json(output, &serde_json::to_value(&report).expect("reports serialize"))
}

pub fn zeros(
    src: &Source,
    variant: ZeroVariant,
    tol: f64,
    max_sweeps: Option<usize>,
    csv: Option<PathBuf>,
    out: &Output,
) -> CliResult<()> {
    if !(tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let p = polynomial(src)?;
    let method = match variant {
        ZeroVariant::Proqd => Method::Proqd,
        ZeroVariant::Compproqd => Method::CompProqd,
    };
    let reference = reference_zeros(&p, 120).ok();
    let budget = max_sweeps.unwrap_or_else(|| default_max_sweeps(p.degree()));
    let report = apps::zeros(&p, method, tol, budget, reference.as_deref())?;
    let fmt = float_format(out.format);
    if let Some(path) = csv {
        let mut text = String::from("i,zero,rel_err\n");
        for (i, z) in report.zeros.iter().enumerate() {
            let err = report.rel_err.as_ref().map_or(String::new(), |e| fmt.format(e[i]));
            let _ = writeln!(text, "{i},{},{err}", fmt.format(*z));
        }
        std::fs::write(path, text)?;
    }
    emit_json(out.output.clone(), &serde_json::to_value(&report).expect("reports serialize"))?;
    if !report.converged {
        return Err(CliError::NotConverged(format!(
            "{} sweeps, max |e| = {:e}",
            report.sweeps, report.max_e
        )));
    }
    Ok(())
}

pub fn flops(range: &str, output: Option<PathBuf>) -> CliResult<()> {
    let ms = parse_range(range)?;
    let mut text = String::from("m,target,qd,compqd,ddqd,compqd_over_qd,ddqd_over_qd\n");
    for (target, name) in [(Target::E, "e"), (Target::Q, "q")] {
        let (mut rc, mut rd) = (0.0, 0.0);
        for &m in &ms {
            let m = m as u64;
            let (a, b, c) = (
                flop_model(Algorithm::Qd, m, target),
                flop_model(Algorithm::Compqd, m, target),
                flop_model(Algorithm::Ddqd, m, target),
            );
            let (x, y) = (b as f64 / a as f64, c as f64 / a as f64);
            rc += x;
            rd += y;
            let _ = writeln!(text, "{m},{name},{a},{b},{c},{x:?},{y:?}");
        }
        let k = ms.len() as f64;
        let _ = writeln!(text, "mean,{name},,,,{:?},{:?}", rc / k, rd / k);
    }
    emit(output, &text)
}

struct SweepRow {
    degree: usize,
    seed: u64,
    max_cond_q: f64,
    qd: f64,
    compqd: f64,
}

fn max_q_error(t: &QdTable, x: &ExactQdTable) -> f64 {
    let mut worst: f64 = 0.0;
    for m in 1..=t.columns() {
        for n in 0..t.q[m - 1].len() {
            if let (Some(v), Some(e)) = (t.q(m, n), x.q(m, n)) {
                if let Some(r) = relative_error(v, e) {
                    worst = worst.max(r);
                }
            } else if x.q(m, n).is_some() {
                worst = f64::INFINITY;
            }
        }
    }
    worst
}

fn sweep_case(degree: usize, seed: u64) -> CliResult<SweepRow> {
    let c = gen_random_poly(degree, seed);
    let s = SeriesInput::from_exact(c)?;
    let x = exact_qd_hankel(&s.exact)?;
    let conds = condition_table_f64(&x);
    let qd = build(&s, Algorithm::Qd, Init::Real)?;
    let cq = build(&s, Algorithm::Compqd, Init::Real)?;
    Ok(SweepRow {
        degree,
        seed,
        max_cond_q: conds.max_cond_q(),
        qd: max_q_error(&qd, &x),
        compqd: max_q_error(&cq, &x),
    })
}

/// Case `N` uses seed `seed + N`, so rows do not depend on the range.
pub fn sweep(range: &str, seed: u64, out: &Output) -> CliResult<()> {
    let degrees = parse_range(range)?;
    let rows: Vec<CliResult<SweepRow>> =
        degrees.par_iter().map(|&d| sweep_case(d, seed + d as u64)).collect();
    let fmt = float_format(out.format);
    let mut text = String::from("degree,seed,max_cond_q,qd_max_rel_err,compqd_max_rel_err\n");
    for r in rows {
        let r = r?;
        let _ = writeln!(
            text,
            "{},{},{},{},{}",
            r.degree,
            r.seed,
            fmt.format(r.max_cond_q),
            fmt.format(r.qd),
            fmt.format(r.compqd)
        );
    }
    emit(out.output.clone(), &text)
}

pub fn bench(src: &Source, reps: usize) -> CliResult<()> {
    let s = series(src)?;
    let reps = reps.max(1);
    for a in [Algorithm::Qd, Algorithm::Compqd, Algorithm::Ddqd] {
        let t0 = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(build(std::hint::black_box(&s), a, Init::Real)?);
        }
        let per = t0.elapsed().as_secs_f64() / reps as f64;
        println!("{:7} degree {:4}: {:.3} us per table", a.name(), s.degree(), per * 1e6);
    }
    Ok(())
}
