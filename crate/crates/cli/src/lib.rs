//! Command-line front end for `theta-bounds`.
//!
//! [`run`] parses arguments, dispatches to the subcommand and returns the
//! process exit code: 0 on success, 1 when the computation rejects its input
//! (or a certificate is invalid), 2 on usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use theta_bounds::boolean::{delsarte_lp_problem, delsarte_lp_solve, delsarte_lp_solve_range};
use theta_bounds::exact::rational::{format, parse, to_decimal, to_f64};
use theta_bounds::lp::{simplex_solve, LpStatus};
use theta_bounds::orthopoly::{jacobi, krawtchouk};
use theta_bounds::sphere::{check_certificate, default_degree, dgs_lp_bound, Certificate, Rejection};
use theta_bounds::symmetry::{parse_graph_json, stable_set_bruteforce, theta_prime_reduced};
use theta_bounds::{Error, Rational, UniPoly};

/// Environment variable giving the worker count for table sweeps.
pub const WORKERS_ENV: &str = "THETA_BOUNDS_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "theta-bounds", version, about = "Exact LP and theta bounds for codes and symmetric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Args, Debug, Clone)]
pub struct FormatArgs {
    #[arg(long, value_enum, conflicts_with = "json")]
    pub format: Option<Format>,
    /// Same as `--format json`.
    #[arg(long)]
    pub json: bool,
}

impl FormatArgs {
    fn resolve(&self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format.unwrap_or(default)
        }
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Coefficients of the Krawtchouk polynomial K^n_k, ascending in powers of t.
    Krawtchouk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Also evaluate at this point.
        #[arg(long, value_parser = rational_arg)]
        at: Option<Rational>,
        #[command(flatten)]
        fmt: FormatArgs,
    },
    /// Coefficients of the Jacobi polynomial P_k for S^{n-1}, normalized to P_k(1) = 1.
    Jacobi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = rational_arg)]
        at: Option<Rational>,
        #[command(flatten)]
        fmt: FormatArgs,
    },
    /// Delsarte LP bound for binary codes of length n and minimum distance d.
    HammingLp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Solve in f64 instead of exact rationals.
        #[arg(long)]
        float: bool,
        #[command(flatten)]
        fmt: FormatArgs,
    },
    /// Delsarte LP bounds for all 1 <= d <= n <= n-max.
    HammingTable {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        /// Worker threads; overrides THETA_BOUNDS_WORKERS.
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        fmt: FormatArgs,
    },
    /// LP bound for spherical codes in S^{n-1} with inner products <= cos-theta.
    SphereLp {
        #[arg(long)]
        n: usize,
        /// Exact rational, e.g. 1/2.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        cos_theta: Rational,
        #[arg(long)]
        degree: Option<usize>,
        /// Write the certificate JSON to this file.
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        #[command(flatten)]
        fmt: FormatArgs,
    },
    /// Check a sphere certificate file.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
        #[command(flatten)]
        fmt: FormatArgs,
    },
    /// Reduced strengthened theta of a graph under a vertex-transitive group.
    Theta {
        #[arg(long)]
        input: PathBuf,
        /// Also compute the stability number by branch and bound.
        #[arg(long)]
        alpha: bool,
        #[command(flatten)]
        fmt: FormatArgs,
    },
}

/// Parsed invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub mode: Mode,
    pub workers: usize,
}

/// Worker count: flag, then environment, then available parallelism.
pub fn resolve_workers(flag: Option<usize>, env: Option<&str>) -> Result<usize, String> {
    let n = match (flag, env) {
        (Some(w), _) => w,
        (None, Some(v)) => v.trim().parse().map_err(|_| format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))?,
        (None, None) => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    if n == 0 {
        return Err("worker count must be positive".into());
    }
    Ok(n)
}

pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let (format, mode, workers) = match &cli.command {
        Command::HammingTable { workers, fmt, .. } => {
            let env = std::env::var(WORKERS_ENV).ok();
            let w = resolve_workers(*workers, env.as_deref())
                .map_err(|msg| clap::Error::raw(ErrorKind::InvalidValue, format!("{msg}\n")))?;
            (fmt.resolve(Format::Csv), Mode::Exact, w)
        }
        Command::HammingLp { float, fmt, .. } => (fmt.resolve(Format::Text), if *float { Mode::Float } else { Mode::Exact }, 1),
        Command::Krawtchouk { fmt, .. }
        | Command::Jacobi { fmt, .. }
        | Command::SphereLp { fmt, .. }
        | Command::Verify { fmt, .. }
        | Command::Theta { fmt, .. } => (fmt.resolve(Format::Text), Mode::Exact, 1),
    };
    Ok(RunConfig { command: cli.command, format, mode, workers })
}

/// Result of executing a command: text for stdout and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

/// Parses `argv` (program name first), runs, prints, returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_config(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&config) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn execute(config: &RunConfig) -> Result<Output, Error> {
    match &config.command {
        Command::Krawtchouk { n, k, at, .. } => poly_command("krawtchouk", *n, *k, krawtchouk(*n, *k)?, at, config.format),
        Command::Jacobi { n, k, at, .. } => poly_command("jacobi", *n, *k, jacobi(*n, *k)?, at, config.format),
        Command::HammingLp { n, d, .. } => hamming_lp(*n, *d, config.mode, config.format),
        Command::HammingTable { n_max, n_min, .. } => hamming_table(*n_min, *n_max, config.workers, config.format),
        Command::SphereLp { n, cos_theta, degree, emit_cert, .. } => {
            sphere_lp(*n, cos_theta, *degree, emit_cert.as_ref(), config.format)
        }
        Command::Verify { certificate, .. } => verify(certificate, config.format),
        Command::Theta { input, alpha, .. } => theta(input, *alpha, config.format),
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format).collect()
}

fn poly_command(name: &str, n: usize, k: usize, p: UniPoly, at: &Option<Rational>, fmt: Format) -> Result<Output, Error> {
    let mut coeffs = p.coeffs().to_vec();
    coeffs.resize(k + 1, Rational::from_integer(0.into()));
    let value = at.as_ref().map(|t| p.eval(t));
    let out = match fmt {
        Format::Json => {
            let mut obj = json!({ "family": name, "n": n, "k": k, "coeffs": strings(&coeffs) });
            if let (Some(t), Some(v)) = (at, &value) {
                obj["at"] = Value::String(format(t));
                obj["value"] = Value::String(format(v));
            }
            format!("{obj}\n")
        }
        Format::Csv => {
            let mut s = String::from("power,coeff\n");
            for (i, c) in coeffs.iter().enumerate() {
                let _ = writeln!(s, "{i},{}", format(c));
            }
            s
        }
        Format::Text => {
            let mut s = format!("{}\n", strings(&coeffs).join(" "));
            if let Some(v) = &value {
                let _ = writeln!(s, "value={}", format(v));
            }
            s
        }
    };
    Ok(Output::ok(out))
}

fn hamming_lp(n: usize, d: usize, mode: Mode, fmt: Format) -> Result<Output, Error> {
    let (exact, decimal) = match mode {
        Mode::Exact => {
            let sol = delsarte_lp_solve(n, d)?;
            (Some(format(&sol.bound)), to_decimal(&sol.bound, 6))
        }
        Mode::Float => {
            let lp = delsarte_lp_problem(n, d)?.map(to_f64);
            let sol = simplex_solve(&lp)?;
            match (sol.status, sol.objective) {
                (LpStatus::Optimal, Some(v)) => (None, format!("{v:.6}")),
                (status, _) => return Err(Error::NumericalBreakdown(format!("float Delsarte LP ended {status:?}"))),
            }
        }
    };
    let out = match fmt {
        Format::Json => {
            let mut obj = json!({ "n": n, "d": d, "bound_decimal": decimal });
            if let Some(e) = &exact {
                obj["bound"] = Value::String(e.clone());
            }
            format!("{obj}\n")
        }
        Format::Csv => format!("n,d,bound_exact,bound_decimal\n{n},{d},{},{decimal}\n", exact.clone().unwrap_or_default()),
        Format::Text => match &exact {
            Some(e) => format!("bound={e}\n"),
            None => format!("bound~{decimal}\n"),
        },
    };
    Ok(Output::ok(out))
}

/// Column `n` of the table: bounds for `d = 1, ..., n`.
fn table_column(n: usize) -> Result<Vec<(usize, usize, Rational)>, Error> {
    Ok(delsarte_lp_solve_range(n, 1)?.into_iter().filter(|s| s.d <= n).map(|s| (s.n, s.d, s.bound)).collect())
}

fn hamming_table(n_min: usize, n_max: usize, workers: usize, fmt: Format) -> Result<Output, Error> {
    let n_min = n_min.max(1);
    if n_max < n_min {
        return Err(Error::Domain(format!("empty range n = {n_min}..={n_max}")));
    }
    let columns: Vec<usize> = (n_min..=n_max).rev().collect();
    let results: Mutex<Vec<Option<Result<Vec<(usize, usize, Rational)>, Error>>>> =
        Mutex::new((0..=n_max).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers.min(columns.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&n) = columns.get(i) else { break };
                let col = table_column(n);
                results.lock().expect("no panics while locked")[n] = Some(col);
            });
        }
    });
    let mut rows = Vec::new();
    for col in results.into_inner().expect("workers joined").into_iter().flatten() {
        rows.extend(col?);
    }
    let out = match fmt {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(n, d, b)| json!({ "n": n, "d": d, "bound_exact": format(b), "bound_decimal": to_decimal(b, 6) }))
                .collect();
            format!("{}\n", json!({ "rows": items }))
        }
        Format::Csv | Format::Text => {
            let mut s = String::from("n,d,bound_exact,bound_decimal\n");
            for (n, d, b) in &rows {
                let _ = writeln!(s, "{n},{d},{},{}", format(b), to_decimal(b, 6));
            }
            s
        }
    };
    Ok(Output::ok(out))
}

fn sphere_lp(
    n: usize,
    cos_theta: &Rational,
    degree: Option<usize>,
    emit: Option<&PathBuf>,
    fmt: Format,
) -> Result<Output, Error> {
    let degree = degree.unwrap_or_else(|| default_degree(cos_theta));
    let cert = dgs_lp_bound(n, cos_theta, degree)?;
    if let Some(path) = emit {
        std::fs::write(path, cert.to_json() + "\n")
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
    }
    let decimal = to_decimal(&cert.bound, 6);
    let out = match fmt {
        Format::Json => {
            let mut obj: Value = serde_json::from_str(&cert.to_json()).expect("certificate serializes");
            obj["bound_decimal"] = Value::String(decimal);
            format!("{obj}\n")
        }
        Format::Csv => format!(
            "n,cos_theta,degree,bound_exact,bound_decimal\n{n},{},{degree},{},{decimal}\n",
            format(cos_theta),
            format(&cert.bound)
        ),
        Format::Text => format!(
            "bound={}\nbound_decimal={decimal}\ndegree={degree}\ncoeffs={}\n",
            format(&cert.bound),
            strings(&cert.coeffs).join(" ")
        ),
    };
    Ok(Output::ok(out))
}

fn verify(path: &PathBuf, fmt: Format) -> Result<Output, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    let verdict = match Certificate::from_json(&text) {
        Ok(cert) => check_certificate(&cert).map(|()| cert.bound),
        Err(e) => Err(Rejection::Malformed(e.to_string())),
    };
    let code = i32::from(verdict.is_err());
    let out = match (&verdict, fmt) {
        (Ok(b), Format::Json) => format!("{}\n", json!({ "valid": true, "bound": format(b) })),
        (Err(r), Format::Json) => format!("{}\n", json!({ "valid": false, "reason": r.code(), "detail": r.to_string() })),
        (Ok(b), _) => format!("VALID bound={}\n", format(b)),
        (Err(r), _) => {
            eprintln!("{r}");
            format!("INVALID reason={}\n", r.code())
        }
    };
    Ok(Output { stdout: out, code })
}

fn theta(path: &PathBuf, alpha: bool, fmt: Format) -> Result<Output, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    let (graph, group) = parse_graph_json(&text)?;
    let value = theta_prime_reduced(&graph, &group)?;
    let a = if alpha { Some(stable_set_bruteforce(&graph)?) } else { None };
    let out = match fmt {
        Format::Json => {
            let mut obj = json!({ "vertices": graph.num_vertices(), "theta": value });
            if let Some(a) = a {
                obj["alpha"] = json!(a);
            }
            format!("{obj}\n")
        }
        Format::Csv => {
            let a = a.map(|a| a.to_string()).unwrap_or_default();
            format!("vertices,theta,alpha\n{},{value:.9},{a}\n", graph.num_vertices())
        }
        Format::Text => {
            let mut s = format!("theta={value:.9}\n");
            if let Some(a) = a {
                let _ = writeln!(s, "alpha={a}");
            }
            s
        }
    };
    Ok(Output::ok(out))
}
