//! Input resolution and CLI errors.

use crate::Source;
use compqd::bigreal::{parse_rational, BigReal};
use compqd::io::parse_coefficients;
use compqd::oracle::{exp_series, gen_laguerre, gen_random_poly, gen_taylor_exp_rational};
use compqd::series::{PolyInput, SeriesInput};
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(compqd::Error),
    NotConverged(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use compqd::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::Parse { .. } | E::InvalidSeries(_) | E::InvalidFactor) => 2,
            CliError::Core(E::Q1Breakdown { .. } | E::ProgressiveBreakdown { .. }) => 3,
            CliError::NotConverged(_) => 4,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::NotConverged(s) => write!(f, "not converged: {s}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<compqd::Error> for CliError {
    fn from(e: compqd::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_usize(s: &str, what: &str) -> CliResult<usize> {
    s.trim().parse().map_err(|_| usage(format!("bad {what} `{s}`")))
}

enum Generated {
    Series(Vec<BigReal>),
    /// Ascending coefficients of a polynomial.
    Laguerre(Vec<BigReal>),
}

fn generate(spec: &str) -> CliResult<Generated> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["exp_over_poly", poles, n] => {
            let poles = poles
                .split(',')
                .map(|p| parse_rational(p).map_err(|e| usage(format!("bad pole `{p}`: {e}"))))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Generated::Series(gen_taylor_exp_rational(&poles, parse_usize(n, "degree")?)?))
        }
        ["laguerre", k] => Ok(Generated::Laguerre(gen_laguerre(parse_usize(k, "degree")?))),
        ["random", n, seed] => {
            let seed = seed.trim().parse().map_err(|_| usage(format!("bad seed `{seed}`")))?;
            Ok(Generated::Series(gen_random_poly(parse_usize(n, "degree")?, seed)))
        }
        ["exp", n] => Ok(Generated::Series(exp_series(parse_usize(n, "degree")?))),
        _ => Err(usage(format!("unknown generator `{spec}`"))),
    }
}

fn raw(src: &Source) -> CliResult<Generated> {
    match (&src.file, &src.generator) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            Ok(Generated::Series(parse_coefficients(&text)?))
        }
        (None, Some(spec)) => generate(spec),
        _ => Err(usage("give exactly one of --file and --gen")),
    }
}

/// Series `c_0, c_1, ...`; a Laguerre generator yields its ascending coefficients.
pub fn series(src: &Source) -> CliResult<SeriesInput> {
    let c = match raw(src)? {
        Generated::Series(c) | Generated::Laguerre(c) => c,
    };
    Ok(SeriesInput::from_exact(c)?)
}

/// Polynomial with the leading coefficient first, as written in files.
pub fn polynomial(src: &Source) -> CliResult<PolyInput> {
    Ok(match raw(src)? {
        Generated::Series(c) => PolyInput::from_exact(c)?,
        Generated::Laguerre(c) => PolyInput::from_ascending(c)?,
    })
}

/// `start:step:end`, inclusive, with a nonzero step.
pub fn parse_range(s: &str) -> CliResult<Vec<usize>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, st, b] = parts.as_slice() else {
        return Err(usage(format!("range must be start:step:end, got `{s}`")));
    };
    let (a, st, b) = (parse_usize(a, "start")?, parse_usize(st, "step")?, parse_usize(b, "end")?);
    if st == 0 {
        return Err(usage("range step must be positive"));
    }
    let v: Vec<usize> = (a..=b).step_by(st).collect();
    if v.is_empty() {
        return Err(usage(format!("empty range `{s}`")));
    }
    Ok(v)
}
