mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use polyexpand::acceptance::DEFAULT_SEED;
use polyexpand::Error;

use render::{Format, RunConfig};

const AFTER_HELP: &str = "\
Polynomials are written in x1, x2, ... (univariate inputs use x or t), e.g. \"3 x1^2 x2 - 1/2 x2 + 4\".

Set specs (--sets, comma separated):
  ap:start:step:n     {start, start+step, ...}
  gp:start:ratio:n    {start, start*ratio, ...}
  rand:seed:n         n distinct rationals from a seeded generator

Exit codes: 0 success, 1 failed self-test or internal error, 2 parse or precondition error, 3 budget exceeded.
The tuple budget for image sets defaults to 10^7 and can be overridden with POLYEXPAND_TUPLE_BUDGET.";

#[derive(Parser, Debug)]
#[command(name = "polyexpand", version, about = "Exact structure detection and growth experiments for polynomials")]
#[command(after_help = AFTER_HELP)]
struct Cli {
    /// Output format (default: csv for experiment, pretty for selftest, json otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads. Never changes the output.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    /// x-coordinate polynomial in t.
    #[arg(long)]
    pub p: String,
    /// y-coordinate polynomial in t.
    #[arg(long)]
    pub q: String,
    /// Transform of the x-coordinate: id or log.
    #[arg(long, default_value = "id")]
    pub fx: String,
    /// Transform of the y-coordinate: id or log.
    #[arg(long, default_value = "id")]
    pub fy: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Relation {
    /// p = lambda q.
    A,
    /// |p| = |q|^kappa.
    M,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExperimentKind {
    /// |p1(A)+p2(B)| |q1(A)+q2(B)|.
    #[value(name = "sum-sum", alias = "lemma42i")]
    SumSum,
    /// |p1(A)p2(B)| |q1(A)q2(B)|.
    #[value(name = "prod-prod")]
    ProdProd,
    /// |p1(A)+p2(B)| |q1(A)q2(B)|.
    #[value(name = "sum-prod")]
    SumProd,
    /// Sums of u_i and v_i with at least t additive mismatches.
    Pdt,
    /// Log-abs sums of u_i and v_i with at least t multiplicative mismatches.
    PdtMult,
    /// Sum of u_i times log-abs sum of v_i.
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetKindArg {
    /// {1, 2, ..., n}.
    Ap,
    /// {1, 2, 4, ..., 2^(n-1)}.
    Gp,
    /// Seeded random rationals, one seed per coordinate.
    Rand,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Detect an additive or multiplicative form f(u1(x1) + ... ) or f(u1(x1) * ...).
    Decompose {
        #[arg(long)]
        poly: String,
    },
    /// Expander exponent or exceptional structure of one polynomial.
    Classify {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        t: usize,
    },
    /// Expander exponent or exceptional structure of a pair of polynomials.
    ClassifyPair {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        t: usize,
    },
    /// Additive (a) or multiplicative (m) equivalence of univariate polynomials.
    Equiv {
        #[arg(value_enum)]
        relation: Relation,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Implicit equation F(x, y) = 0 of the curve (p(t), q(t)).
    Implicitize {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Whether a transformed curve lies in an affine line.
    LineTest {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Number of points common to C and its translate C + a.
    IntersectTranslate {
        #[command(flatten)]
        curve: CurveArgs,
        /// x shift; a positive multiplier for a log coordinate.
        #[arg(long)]
        ax: String,
        /// y shift; a positive multiplier for a log coordinate.
        #[arg(long)]
        ay: String,
    },
    /// Hypothesis, bound and cyclic-shift witness for a partition of {1..d}.
    CountingLemma {
        /// Blocks separated by ';', elements by ',', e.g. "1,2;3".
        #[arg(long)]
        blocks: String,
        #[arg(long)]
        t: usize,
    },
    /// Image set P(A1, ..., Ad). A single set is used for every variable.
    Expand {
        #[arg(long)]
        poly: String,
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        sets: Vec<String>,
        /// Also print the elements.
        #[arg(long)]
        list: bool,
    },
    /// Product-bound experiment over n = nmin, 2 nmin, ... <= nmax.
    Experiment {
        #[arg(long, value_enum)]
        spec: ExperimentKind,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 8)]
        nmin: usize,
        #[arg(long, default_value_t = 32)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = SetKindArg::Ap)]
        sets: SetKindArg,
        #[arg(long)]
        p1: Option<String>,
        #[arg(long)]
        p2: Option<String>,
        #[arg(long)]
        q1: Option<String>,
        #[arg(long)]
        q2: Option<String>,
        /// Comma separated u_1, ..., u_d.
        #[arg(long, value_delimiter = ',')]
        u: Vec<String>,
        /// Comma separated v_1, ..., v_d.
        #[arg(long, value_delimiter = ',')]
        v: Vec<String>,
    },
    /// Incidences between a point grid and translates of one curve.
    Incidence {
        #[command(flatten)]
        curve: CurveArgs,
        /// Set spec for the x-coordinates of the grid.
        #[arg(long)]
        xs: String,
        /// Set spec for the y-coordinates of the grid.
        #[arg(long)]
        ys: String,
        /// Translations "ax:ay", comma separated.
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        shifts: Vec<String>,
    },
    /// Run the acceptance checks and print one line per criterion.
    Selftest {
        /// Criterion names or numbers, comma separated.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Run at full scale instead of reduced scale.
        #[arg(long)]
        full: bool,
        #[arg(long, hide = true)]
        inject_fault: Option<u32>,
    },
}

impl Cmd {
    fn default_format(&self) -> Format {
        match self {
            Cmd::Experiment { .. } => Format::Csv,
            Cmd::Selftest { .. } => Format::Pretty,
            _ => Format::Json,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget(_) => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let matches = match Cli::command().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let format = cli.format.unwrap_or_else(|| cli.cmd.default_format());
    let command = Cli::command();
    let sub_command = command.find_subcommand(name).expect("parsed subcommand exists");
    let config = RunConfig::new(sub_command, sub, cli.seed, format);
    match commands::run(&cli.cmd, cli.seed) {
        Ok(out) => {
            let text = render::render(&config, &out);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
