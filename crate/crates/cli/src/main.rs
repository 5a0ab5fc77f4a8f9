//! `mlpade`: evaluate, invert and benchmark the degree-2 global Padé
//! approximants of the generalized Mittag-Leffler function.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use mlpade::fode::{OdeSpec, Prefactor, RelaxationSpec, TwoTermSpec};
use mlpade::format::fmt_num;
use mlpade::harness::{
    emit_inverse_report, emit_ode_csv, emit_report, error_scan, inverse_error_scan, inverse_points,
    ode_error_scan, GridSpec, ReportFormat, Scale,
};
use mlpade::inverse::inv_pade;
use mlpade::pade::coeffs_from_closed_form;
use mlpade::selftest::run_selftest;
use mlpade::{
    build_approx, classify, eval_approx, ml_oracle, Error, ErrorKind, OracleConfig, Regime,
};

mod table;

#[derive(Parser)]
#[command(
    name = "mlpade",
    version,
    about = "Global Padé approximants of the Mittag-Leffler function E_{α,β}(-x)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the approximant (or the reference value with --exact) at x.
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// Print the reference value instead of the approximant.
        #[arg(long)]
        exact: bool,
    },
    /// Evaluate the inverse approximant at y in (0, 1/Γ(β)].
    Inverse {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
    },
    /// Print approximant coefficients, or the symbolic table of all forms.
    Coeffs {
        #[arg(
            long,
            allow_negative_numbers = true,
            required_unless_present = "table1"
        )]
        alpha: Option<f64>,
        #[arg(
            long,
            allow_negative_numbers = true,
            required_unless_present = "table1"
        )]
        beta: Option<f64>,
        /// Print the symbolic table of approximants for every regime.
        #[arg(long, conflicts_with_all = ["alpha", "beta"])]
        table1: bool,
    },
    /// Scan the approximation error against the reference over a grid.
    Scan {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1e-4)]
        grid_min: f64,
        #[arg(long, default_value_t = 1e4)]
        grid_max: f64,
        #[arg(long, default_value_t = 4000)]
        points: usize,
        /// Space the grid linearly instead of logarithmically.
        #[arg(long)]
        linear: bool,
        /// Write every sample to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Scan the inverse approximant over y instead (uses --points only).
        #[arg(long)]
        inverse: bool,
    },
    /// Compare rational and exact solutions of the fractional ODEs.
    Ode(OdeArgs),
    /// Run the invariant suite.
    Selftest,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
}

#[derive(Args)]
#[command(group(ArgGroup::new("problem").required(true).args(["relaxation", "two_term"])))]
struct OdeArgs {
    /// D^α f + λ f = 0.
    #[arg(long)]
    relaxation: bool,
    /// D^α g + D^β g = δ(t).
    #[arg(long)]
    two_term: bool,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Required with --two-term.
    #[arg(
        long,
        allow_negative_numbers = true,
        required_if_eq("two_term", "true")
    )]
    beta: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    c1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c2: f64,
    /// Logarithmic time grid MIN:MAX:N.
    #[arg(long, default_value = "0.01:100:200", value_parser = parse_t_grid)]
    t_grid: TGrid,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Relaxation prefactor: paper (t^-α) or standard (t^(α-1)).
    #[arg(long, default_value = "paper", value_parser = ["paper", "standard"])]
    prefactor: String,
}

#[derive(Clone, Copy)]
struct TGrid {
    min: f64,
    max: f64,
    n: usize,
}

fn parse_t_grid(s: &str) -> Result<TGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected MIN:MAX:N, got '{s}'"));
    }
    let num = |p: &str| {
        p.parse::<f64>()
            .map_err(|e| format!("bad number '{p}': {e}"))
    };
    let n = parts[2]
        .parse::<usize>()
        .map_err(|e| format!("bad point count '{}': {e}", parts[2]))?;
    Ok(TGrid {
        min: num(parts[0])?,
        max: num(parts[1])?,
        n,
    })
}

enum Failure {
    Lib(Error),
    Io(io::Error, String),
    Selftest,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("mlpade: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Domain => 3,
                ErrorKind::Numerical => 4,
            })
        }
        Err(Failure::Io(e, what)) => {
            eprintln!("mlpade: {what}: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Selftest) => {
            eprintln!("mlpade: selftest failed");
            ExitCode::from(1)
        }
    }
}

fn write_out(out: &mut impl Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Io(e, "writing to stdout".into()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Io(e, format!("writing {}", path.display())))
}

fn run(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    let cfg = OracleConfig::default();
    match command {
        Command::Eval { params, x, exact } => {
            let p = classify(params.alpha, params.beta)?;
            if !(x >= 0.0 && x.is_finite()) {
                return Err(
                    Error::Domain(format!("x = {x} must be finite and nonnegative")).into(),
                );
            }
            let v = if exact {
                ml_oracle(&p, x, &cfg)?
            } else {
                eval_approx(&build_approx(&p)?, x)
            };
            write_out(out, &format!("{}\n", fmt_num(v)))
        }
        Command::Inverse { params, y } => {
            let p = classify(params.alpha, params.beta)?;
            write_out(out, &format!("{}\n", fmt_num(inv_pade(&p, y)?)))
        }
        Command::Coeffs {
            alpha,
            beta,
            table1,
        } => {
            if table1 {
                return write_out(out, table::TABLE1);
            }
            let (alpha, beta) = (
                alpha.expect("required by clap"),
                beta.expect("required by clap"),
            );
            let p = classify(alpha, beta)?;
            let ap = build_approx(&p)?;
            if ap.is_exact() {
                return write_out(out, "exact exp(-x)\n");
            }
            let mut text = format!(
                "n0={} n1={} d1={} d2={}\n",
                fmt_num(ap.n0()),
                fmt_num(ap.n1()),
                fmt_num(ap.d1()),
                fmt_num(ap.d2())
            );
            if matches!(p.regime(), Regime::GeneralSub | Regime::BetaOne) {
                let c = coeffs_from_closed_form(&p)?;
                text.push_str(&format!(
                    "p0={} p1={} q0={} q1={}\n",
                    fmt_num(c.p0),
                    fmt_num(c.p1),
                    fmt_num(c.q0),
                    fmt_num(c.q1)
                ));
            }
            write_out(out, &text)
        }
        Command::Scan {
            params,
            grid_min,
            grid_max,
            points,
            linear,
            csv,
            inverse,
        } => {
            let p = classify(params.alpha, params.beta)?;
            if inverse {
                if points < 1 {
                    return Err(Error::Config("need at least one point".into()).into());
                }
                let r = inverse_error_scan(&p, &inverse_points(&p, points), &cfg)?;
                if let Some(path) = csv {
                    write_file(&path, &emit_inverse_report(&r, ReportFormat::Csv))?;
                }
                let summary = emit_inverse_report(&r, ReportFormat::Summary);
                return write_out(out, &String::from_utf8_lossy(&summary));
            }
            let scale = if linear {
                Scale::Linear
            } else {
                Scale::Logarithmic
            };
            let grid = GridSpec::new(grid_min, grid_max, points, scale, true)?;
            let r = error_scan(&p, &grid, &cfg)?;
            if let Some(path) = csv {
                write_file(&path, &emit_report(&r, ReportFormat::Csv))?;
            }
            write_out(
                out,
                &String::from_utf8_lossy(&emit_report(&r, ReportFormat::Summary)),
            )
        }
        Command::Ode(args) => {
            let prefactor: Prefactor = args.prefactor.parse()?;
            let (spec, second) = if args.relaxation {
                let s = RelaxationSpec::new(args.alpha, args.lambda, args.c1)?
                    .with_prefactor(prefactor);
                (OdeSpec::Relaxation(s), args.lambda)
            } else {
                let beta = args.beta.expect("required by clap");
                (
                    OdeSpec::TwoTerm(TwoTermSpec::new(args.alpha, beta, args.c2)?),
                    beta,
                )
            };
            let g = args.t_grid;
            let grid = GridSpec::new(g.min, g.max, g.n, Scale::Logarithmic, false)?;
            let r = ode_error_scan(&spec, &grid, &cfg)?;
            if let Some(path) = args.csv {
                write_file(&path, &emit_ode_csv(&r))?;
            }
            write_out(
                out,
                &format!(
                    "{},{},{},{}\n",
                    fmt_num(args.alpha),
                    fmt_num(second),
                    fmt_num(r.max_abs_error),
                    fmt_num(r.argmax_t)
                ),
            )
        }
        Command::Selftest => {
            let checks = run_selftest();
            let mut text = String::new();
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            text.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
            write_out(out, &text)?;
            if failed > 0 {
                Err(Failure::Selftest)
            } else {
                Ok(())
            }
        }
    }
}
