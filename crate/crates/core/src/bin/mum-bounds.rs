use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mum_bounds::commands::{
    self, Criterion, StateSpec, SweepSpec, SweepVariable, ThresholdOutcome, ThresholdQuery,
};
use mum_bounds::{mum, states, DensityMatrix, Error, Tolerances, Variant};

#[derive(Parser)]
#[command(name = "mum-bounds", version, about = "MUM-based concurrence bounds and separability criteria")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the d+1 MUMs and check their defining relations.
    Verify {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// kappa(t) = 1/d + t^2 (1 + sqrt d)^2 (d - 1).
    Kappa {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Admissible t interval of the Gell-Mann construction.
    TRange {
        #[arg(long)]
        d: usize,
    },
    /// Concurrence bounds and verdict for one state.
    Bound {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, value_enum, default_value_t = VariantArg::Derived)]
        variant: VariantArg,
        /// Verdict margin on ||J|| - (1 + kappa).
        #[arg(long)]
        tol: Option<f64>,
        /// Print the report as JSON instead of key=value lines.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the bounds over a one-parameter grid and write CSV.
    Sweep {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long = "var", value_enum)]
        variable: VarArg,
        #[arg(long, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, allow_negative_numbers = true)]
        stop: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Fixed t when sweeping a state parameter.
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.01)]
        t: f64,
        #[arg(long, value_enum, default_value_t = VariantArg::Derived)]
        variant: VariantArg,
        /// Output CSV path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest mixing weight at which the state is detected.
    Threshold {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, value_enum, default_value_t = CriterionArg::Separability)]
        criterion: CriterionArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Derived)]
        variant: VariantArg,
        /// Bisection bracket width.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Write a built-in state to a density-matrix file.
    GenState {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Validate a density-matrix file.
    VerifyState {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Args)]
struct StateArgs {
    #[arg(long, value_enum, default_value_t = StateKind::Horodecki)]
    state: StateKind,
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    #[arg(long, default_value_t = 0.2)]
    upsilon: f64,
    /// Local dimension for random and max-entangled states.
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum StateKind {
    Tiles,
    Horodecki,
    File,
    Random,
    MaxEntangled,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Literal,
    Derived,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Literal => Variant::Literal,
            VariantArg::Derived => Variant::Derived,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VarArg {
    T,
    P,
    Q,
    Upsilon,
}

impl From<VarArg> for SweepVariable {
    fn from(v: VarArg) -> Self {
        match v {
            VarArg::T => SweepVariable::T,
            VarArg::P => SweepVariable::P,
            VarArg::Q => SweepVariable::Q,
            VarArg::Upsilon => SweepVariable::Upsilon,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    Separability,
    BoundPositive,
}

impl StateArgs {
    fn spec(&self) -> Result<StateSpec, Error> {
        Ok(match self.state {
            StateKind::Tiles => StateSpec::Tiles { p: self.p },
            StateKind::Horodecki => StateSpec::Horodecki {
                upsilon: self.upsilon,
                q: self.q,
            },
            StateKind::File => {
                let path = self.file.as_ref().ok_or_else(|| {
                    Error::InvalidParameter("--state file needs --file <path>".into())
                })?;
                StateSpec::Fixed(states::load_state(path)?)
            }
            StateKind::Random => StateSpec::Fixed(DensityMatrix::from(&states::random_pure(
                self.d, self.d, self.seed,
            )?)),
            StateKind::MaxEntangled => {
                StateSpec::Fixed(DensityMatrix::from(&states::max_entangled(self.d)?))
            }
        })
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let tol = Tolerances::default();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Verify { d, t } => {
            let report = match commands::verify(d, t, &tol) {
                Err(Error::InadmissibleT { t, lower, upper }) => {
                    eprintln!("error: t = {t} is not admissible for d = {d}");
                    eprintln!("valid interval: [{lower:.6}, {upper:.6}]");
                    return Ok(ExitCode::from(1));
                }
                other => other?,
            };
            writeln!(out, "d={}", report.d)?;
            writeln!(out, "t={}", report.t)?;
            writeln!(out, "kappa={}", report.kappa)?;
            writeln!(out, "interval=[{}, {}]", report.interval.lower, report.interval.upper)?;
            writeln!(out, "trace_one_deviation={:e}", report.relations.trace_one)?;
            writeln!(out, "cross_basis_deviation={:e}", report.relations.cross_basis)?;
            writeln!(out, "within_basis_deviation={:e}", report.relations.within_basis)?;
            writeln!(out, "completeness_deviation={:e}", report.relations.completeness)?;
            writeln!(out, "two_design_residual={:e}", report.two_design_residual)?;
            writeln!(out, "status={}", if report.passed { "pass" } else { "fail" })?;
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Kappa { d, t } => {
            if d < 2 {
                return Err(Error::InvalidParameter(format!("need d >= 2, got {d}")));
            }
            writeln!(out, "kappa={}", mum::kappa_of_t(d, t))?;
            writeln!(out, "optimal_kappa={}", mum::optimal_kappa(d))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::TRange { d } => {
            let iv = commands::gell_mann_interval(d)?;
            writeln!(out, "lower={}", iv.lower)?;
            writeln!(out, "upper={}", iv.upper)?;
            writeln!(out, "kappa_at_lower={}", mum::kappa_of_t(d, iv.lower))?;
            writeln!(out, "kappa_at_upper={}", mum::kappa_of_t(d, iv.upper))?;
            writeln!(out, "partition=lexicographic-gell-mann")?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound { state, t, variant, tol: verdict_tol, json } => {
            let tol = Tolerances {
                verdict: verdict_tol.unwrap_or(tol.verdict),
                ..tol
            };
            let rho = state.spec()?.build()?;
            let r = commands::evaluate(&rho, t, variant.into(), &tol)?;
            if json {
                let text = serde_json::to_string_pretty(&r)
                    .map_err(|e| Error::Format(e.to_string()))?;
                writeln!(out, "{text}")?;
            } else {
                writeln!(out, "traceNormP={}", r.trace_norm_p)?;
                writeln!(out, "traceNormF={}", r.trace_norm_f)?;
                writeln!(out, "kappa={}", r.kappa)?;
                writeln!(out, "threshold={}", r.threshold)?;
                writeln!(out, "boundLiteral={}", r.bound_literal)?;
                writeln!(out, "boundDerived={}", r.bound_derived)?;
                writeln!(out, "bound={}", r.headline())?;
                writeln!(out, "schmidtNumberLB={}", r.schmidt_number_lb)?;
                writeln!(out, "verdict={}", r.verdict)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { state, variable, start, stop, steps, t, variant, out: path } => {
            let spec = SweepSpec {
                variable: variable.into(),
                start,
                stop,
                steps,
                state: state.spec()?,
                t,
                variant: variant.into(),
            };
            let rows = commands::run_sweep(&spec, &tol)?;
            match path {
                Some(path) => commands::write_csv(&rows, BufWriter::new(File::create(path)?))?,
                None => commands::write_csv(&rows, &mut out)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Threshold { state, t, criterion, variant, tol: width } => {
            let query = ThresholdQuery {
                state: state.spec()?,
                t,
                criterion: match criterion {
                    CriterionArg::Separability => Criterion::Separability,
                    CriterionArg::BoundPositive => Criterion::BoundPositive,
                },
                variant: variant.into(),
                tolerance: width,
            };
            match commands::find_threshold(&query, &tol)? {
                ThresholdOutcome::Found(th) => {
                    writeln!(out, "threshold={}", th.threshold)?;
                    writeln!(out, "bracket=[{}, {}]", th.lower, th.upper)?;
                    writeln!(out, "margin_lower={:e}", th.margin_lower)?;
                    writeln!(out, "margin_upper={:e}", th.margin_upper)?;
                    writeln!(out, "evaluations={}", th.evaluations)?;
                }
                ThresholdOutcome::Undetected => writeln!(out, "undetected on [0,1]")?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GenState { state, out: path } => {
            let rho = state.spec()?.build()?;
            states::save_state(&rho, &path)?;
            writeln!(out, "wrote {} ({}x{})", path.display(), rho.dim(), rho.dim())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyState { file } => match states::load_state(&file) {
            Ok(rho) => {
                writeln!(out, "valid density matrix, dim={}", rho.dim())?;
                Ok(ExitCode::SUCCESS)
            }
            Err(e @ (Error::InvalidState(_) | Error::Format(_) | Error::NonFinite { .. })) => {
                writeln!(out, "invalid: {e}")?;
                Ok(ExitCode::from(1))
            }
            Err(e) => Err(e),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}
