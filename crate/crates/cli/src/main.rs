//! `compqd` command-line front end.

mod input;
mod run;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "compqd", version, about = "qd, Compqd and DDqd tables with their applications")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Exactly one input: a coefficient file or a builtin generator.
#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Coefficient file, one value per line (decimal, p/q or hex-float).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Builtin generator: exp_over_poly:a,b,c,d:N | laguerre:k | random:N:seed | exp:N
    #[arg(long = "gen")]
    pub generator: Option<String>,
}

#[derive(Args, Clone)]
pub struct Output {
    /// Output path; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Float rendering in CSV output.
    #[arg(long, value_enum, default_value_t = Format::Shortest)]
    pub format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Shortest,
    Hex,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Alg {
    Qd,
    Compqd,
    Ddqd,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum InitArg {
    Real,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Qd,
    Compqd,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum PoleMethodArg {
    Direct,
    Critical,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ZeroVariant {
    Proqd,
    Compproqd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a table and print it as JSON.
    Table {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = Alg::Compqd)]
        algorithm: Alg,
        #[arg(long, value_enum, default_value_t = InitArg::Real)]
        init: InitArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Condition numbers, relative errors and bounds per cell as CSV.
    Conds {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = VariantArg::Compqd)]
        variant: VariantArg,
        #[command(flatten)]
        out: Output,
    },
    /// Regular C-fraction coefficients as JSON, errors against the exact table as CSV.
    Cfrac {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = Alg::Compqd)]
        algorithm: Alg,
        /// Where to write the error CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Pole estimates as JSON.
    Poles {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = PoleMethodArg::Direct)]
        method: PoleMethodArg,
        #[arg(long, value_enum, default_value_t = Alg::Compqd)]
        algorithm: Alg,
        /// Columns for the direct method, comma separated; all when absent.
        #[arg(long, value_delimiter = ',')]
        columns: Vec<usize>,
        /// Critical index m.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Number of poles j between the critical indices m and m+j.
        #[arg(long, default_value_t = 3)]
        j: usize,
        /// Row of the critical polynomial; N - 2(m+j) - 1 when absent.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = compqd::apps::DEFAULT_CONV_TOL)]
        conv_tol: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Polynomial zeros by the progressive scheme (leading coefficient first).
    Zeros {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = ZeroVariant::Compproqd)]
        variant: ZeroVariant,
        #[arg(long, default_value_t = 1e-16)]
        tol: f64,
        /// Sweep budget; 10 times the degree when absent.
        #[arg(long)]
        max_sweeps: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Closed-form flop counts and ratios over a range `start:step:end` of m.
    Flops {
        #[arg(long, default_value = "50:5:1000")]
        range: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random-series accuracy sweep over degrees `start:step:end`, in parallel.
    Sweep {
        #[arg(long, default_value = "10:7:199")]
        range: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Wall-clock timing of the table builders.
    Bench {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 100)]
        reps: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = run::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.cmd {
        Cmd::Table { src, algorithm, init, output } => run::table(&src, algorithm, init, output),
        Cmd::Conds { src, variant, out } => run::conds(&src, variant, &out),
        Cmd::Cfrac { src, algorithm, csv, out } => run::cfrac(&src, algorithm, csv, &out),
        Cmd::Poles { src, method, algorithm, columns, m, j, n, conv_tol, output } => {
            run::poles(&src, method, algorithm, &columns, m, j, n, conv_tol, output)
        }
        Cmd::Zeros { src, variant, tol, max_sweeps, csv, out } => {
            run::zeros(&src, variant, tol, max_sweeps, csv, &out)
        }
        Cmd::Flops { range, output } => run::flops(&range, output),
        Cmd::Sweep { range, seed, out } => run::sweep(&range, seed, &out),
        Cmd::Bench { src, reps } => run::bench(&src, reps),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
