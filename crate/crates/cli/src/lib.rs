//! Command-line front end for the `cpswf` library.
//!
//! Every subcommand produces one table, written as CSV or JSON. Exit
//! codes: 0 success, 1 verification failure, 2 invalid input, 3 no
//! convergence.
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use cpswf::accumulation::{partial_sum, uniform_radii};
use cpswf::clifford::{BladeIndex, VectorM};
use cpswf::cpswf::{make_batch, make_cpswf, Cpswf};
use cpswf::legendre::RadialRecurrence;
use cpswf::monogenics::basis;
use cpswf::operators::{verify_all, VerifyConfig, DEFAULT_GRID};

pub mod range;
pub mod table;

use table::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;

/// Largest tolerance accepted on the command line.
pub const MAX_TOL: f64 = 1e-4;
/// Largest degree index `n` accepted on the command line.
pub const MAX_N: usize = 128;
pub const MAX_GRID: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cpswf", version, about = "Clifford prolate spheroidal wave functions on the unit ball")]
pub struct Cli {
    /// Galerkin convergence tolerance, in (0, 1e-4].
    #[arg(long, global = true, env = "CPSWF_TOL", default_value_t = 1e-10)]
    pub tol: f64,
    /// Gauss nodes for radial integrals.
    #[arg(long, global = true, env = "CPSWF_NODES", default_value_t = 128)]
    pub nodes: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral triples: n, k, χ, λ, |μ|, phase exponent of μ.
    Eigs {
        #[arg(long)]
        m: usize,
        /// Degrees: `3`, `0..2` (inclusive) or `0,2`.
        #[arg(long, default_value = "0")]
        k: String,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        /// Number of degree indices n per k.
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Full spectral table including the complex value of μ.
    Spectrum {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "0..2")]
        k: String,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Radial part on an equispaced grid of [0, 1].
    Radial {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// Field components on a square grid, restricted to the unit disc.
    Field {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        /// Monogenic basis index, 1-based.
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 21)]
        grid: usize,
        /// Height of the sampled plane when m = 3.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x3: f64,
    },
    /// Eigenfunction checks against both integral operators.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value = "0..2")]
        k: String,
        /// Largest degree index n.
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long, default_value_t = 1e-6)]
        max_spread: f64,
        #[arg(long, default_value_t = 1e-6)]
        max_residual: f64,
    },
    /// Truncated spectrum accumulation sum with its limit.
    Accumulate {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        /// Largest monogenic degree.
        #[arg(long = "K", default_value_t = 8)]
        big_k: usize,
        /// Largest radial order per parity.
        #[arg(long = "N", default_value_t = 8)]
        big_n: usize,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Orthonormal radial polynomials p_N and q_N on a grid of t in [0, 1].
    Legendre {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 11)]
        grid: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Convergence(_) => EXIT_CONVERGENCE,
            _ => EXIT_INVALID,
        }
    }
}

impl From<cpswf::Error> for CliError {
    fn from(e: cpswf::Error) -> Self {
        match e {
            cpswf::Error::Convergence(s) => CliError::Convergence(s),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<range::RangeError> for CliError {
    fn from(e: range::RangeError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

/// Rendered output and the exit status it carries.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub status: i32,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn check_spectral_dim(m: usize) -> Result<(), CliError> {
    if !(2..=8).contains(&m) {
        return Err(invalid(format!("m = {m} must lie in [2, 8]")));
    }
    Ok(())
}

fn check_field_dim(m: usize) -> Result<(), CliError> {
    if !(2..=3).contains(&m) {
        return Err(invalid(format!("m = {m} must be 2 or 3")));
    }
    Ok(())
}

fn check_bandwidth(c: f64, strict: bool) -> Result<(), CliError> {
    let ok = c.is_finite() && if strict { c > 0.0 } else { c >= 0.0 };
    if !ok {
        let bound = if strict { "> 0" } else { ">= 0" };
        return Err(invalid(format!("c = {c} must be finite and {bound}")));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n > MAX_N {
        return Err(invalid(format!("n = {n} exceeds {MAX_N}")));
    }
    Ok(())
}

fn check_grid(g: usize) -> Result<(), CliError> {
    if !(2..=MAX_GRID).contains(&g) {
        return Err(invalid(format!("grid size {g} must lie in [2, {MAX_GRID}]")));
    }
    Ok(())
}

fn check_common(cli: &Cli) -> Result<(), CliError> {
    if !(cli.tol > 0.0 && cli.tol <= MAX_TOL) {
        return Err(invalid(format!("tol = {} must lie in (0, {MAX_TOL:e}]", cli.tol)));
    }
    if !(8..=cpswf::special::MAX_GAUSS_NODES).contains(&cli.nodes) {
        return Err(invalid(format!(
            "nodes = {} must lie in [8, {}]",
            cli.nodes,
            cpswf::special::MAX_GAUSS_NODES
        )));
    }
    Ok(())
}

fn spectral_batch(m: usize, k: &str, c: f64, count: usize, tol: f64) -> Result<Vec<Cpswf>, CliError> {
    check_spectral_dim(m)?;
    check_bandwidth(c, false)?;
    if count == 0 {
        return Err(invalid("count must be positive"));
    }
    check_n(count - 1)?;
    let ks = range::parse_degrees(k)?;
    Ok(make_batch(m, c, &ks, count, tol)?)
}

/// Runs a parsed command and renders its table.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    check_common(cli)?;
    let tol = cli.tol;
    let mut status = EXIT_OK;
    let table = match &cli.command {
        Command::Eigs { m, k, c, count } => {
            let mut t = Table::new(["n", "k", "chi", "lambda", "mu_abs", "phase_exponent"]);
            for p in spectral_batch(*m, k, *c, *count, tol)? {
                t.push(vec![
                    p.n.into(),
                    p.k.into(),
                    p.chi.into(),
                    p.lambda.into(),
                    p.mu.norm().into(),
                    p.phase_exponent().into(),
                ]);
            }
            t
        }
        Command::Spectrum { m, k, c, count } => {
            let mut t = Table::new([
                "n", "k", "chi", "lambda", "mu_abs", "mu_re", "mu_im", "epsilon", "value_at_zero", "truncation",
            ]);
            for p in spectral_batch(*m, k, *c, *count, tol)? {
                t.push(vec![
                    p.n.into(),
                    p.k.into(),
                    p.chi.into(),
                    p.lambda.into(),
                    p.mu.norm().into(),
                    p.mu.re.into(),
                    p.mu.im.into(),
                    Cell::Int(p.epsilon as i64),
                    p.value_at_zero().into(),
                    p.truncation.into(),
                ]);
            }
            t
        }
        Command::Radial { n, k, m, c, grid } => {
            check_spectral_dim(*m)?;
            check_bandwidth(*c, false)?;
            check_n(*n)?;
            check_grid(*grid)?;
            let p = make_cpswf(*n, *k, *m, *c, tol)?;
            let mut t = Table::new(["r", "value"]);
            for r in uniform_radii(*grid) {
                t.push(vec![r.into(), p.eval_radial(r)?.into()]);
            }
            t
        }
        Command::Field { n, k, m, c, i, grid, x3 } => field_table(*n, *k, *m, *c, *i, *grid, *x3, tol)?,
        Command::Verify { m, c, k, nmax, max_spread, max_residual } => {
            check_spectral_dim(*m)?;
            check_bandwidth(*c, true)?;
            check_n(*nmax)?;
            if !(*max_spread > 0.0 && *max_residual > 0.0) {
                return Err(invalid("thresholds must be positive"));
            }
            let cfg = VerifyConfig {
                nodes: cli.nodes,
                grid_points: DEFAULT_GRID,
                max_ratio_spread: *max_spread,
                max_residual: *max_residual,
                ..VerifyConfig::default()
            };
            let psis = make_batch(*m, *c, &range::parse_degrees(k)?, nmax + 1, tol)?;
            let mut t = Table::new([
                "n", "k", "mu_re", "mu_im", "lambda", "lambda_est", "ratio_spread", "residual", "mu_error", "pass",
            ]);
            for (p, r) in psis.iter().zip(verify_all(&psis, &cfg)?) {
                if !r.passed {
                    status = EXIT_VERIFY;
                }
                t.push(vec![
                    r.n.into(),
                    r.k.into(),
                    r.mu_est.re.into(),
                    r.mu_est.im.into(),
                    p.lambda.into(),
                    r.lambda_est.into(),
                    r.ratio_spread.into(),
                    r.residual.into(),
                    r.mu_error.into(),
                    r.passed.into(),
                ]);
            }
            t
        }
        Command::Accumulate { m, c, big_k, big_n, points } => {
            check_field_dim(*m)?;
            check_bandwidth(*c, true)?;
            check_grid(*points)?;
            if *big_k > range::MAX_DEGREE || 2 * big_n + 1 > MAX_N {
                return Err(invalid("truncation orders too large"));
            }
            let acc = partial_sum(*m, *c, *big_k, *big_n, &uniform_radii(*points), tol)?;
            let lim = acc.limit();
            let mut t = Table::new(["r", "G", "limit"]);
            for (r, g) in acc.radii.iter().zip(acc.values()) {
                t.push(vec![(*r).into(), (*g).into(), lim.into()]);
            }
            t
        }
        Command::Legendre { k, m, nmax, grid } => {
            check_spectral_dim(*m)?;
            check_grid(*grid)?;
            if *nmax > cpswf::legendre::MAX_SEQUENCE_DEGREE {
                return Err(invalid(format!("nmax = {nmax} too large")));
            }
            let rec = RadialRecurrence::new(*k, *m, nmax + 1);
            let mut cols = vec!["t".to_string()];
            cols.extend((0..=*nmax).map(|j| format!("p{j}")));
            cols.extend((0..=*nmax).map(|j| format!("q{j}")));
            let mut t = Table::new(cols);
            for x in uniform_radii(*grid) {
                let (p, q) = rec.eval(x);
                let mut row = vec![Cell::from(x)];
                row.extend(p.into_iter().map(Cell::from));
                row.extend(q.into_iter().map(Cell::from));
                t.push(row);
            }
            t
        }
    };
    let body = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    Ok(Outcome { body, status })
}

#[allow(clippy::too_many_arguments)]
fn field_table(n: usize, k: usize, m: usize, c: f64, i: usize, grid: usize, x3: f64, tol: f64) -> Result<Table, CliError> {
    check_field_dim(m)?;
    check_bandwidth(c, false)?;
    check_n(n)?;
    check_grid(grid)?;
    let b = basis(m, k)?;
    if !(1..=b.len()).contains(&i) {
        return Err(invalid(format!("basis index {i} not in [1, {}]", b.len())));
    }
    if m == 3 && !(x3.abs() <= 1.0) {
        return Err(invalid(format!("x3 = {x3} outside [-1, 1]")));
    }
    let p = make_cpswf(n, k, m, c, tol)?;
    let mut cols: Vec<String> = (1..=m).map(|j| format!("x{j}")).collect();
    for a in 0..(1u16 << m) {
        let label = BladeIndex(a).label();
        cols.push(format!("{label}_re"));
        cols.push(format!("{label}_im"));
    }
    let mut t = Table::new(cols);
    let h = 2.0 / (grid - 1) as f64;
    for row in 0..grid {
        for col in 0..grid {
            let (x, y) = (-1.0 + col as f64 * h, -1.0 + row as f64 * h);
            let mut coords = vec![x, y];
            if m == 3 {
                coords.push(x3);
            }
            let v = VectorM::new(coords.clone());
            if v.norm_sqr() > 1.0 {
                continue;
            }
            let f = p.eval_field(&b, i, &v)?;
            let mut cells: Vec<Cell> = coords.into_iter().map(Cell::from).collect();
            for z in f.coeffs() {
                cells.push(z.re.into());
                cells.push(z.im.into());
            }
            t.push(cells);
        }
    }
    Ok(t)
}

/// Parses arguments, runs, and writes the output; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let result = execute(&cli).and_then(|out| {
        match &cli.output {
            Some(path) => std::fs::write(path, &out.body)?,
            None => {
                use std::io::Write;
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(out.body.as_bytes())?;
                stdout.flush()?;
            }
        }
        Ok(out.status)
    });
    match result {
        Ok(status) => status,
        Err(e) => {
            eprintln!("cpswf: {e}");
            e.exit_code()
        }
    }
}
