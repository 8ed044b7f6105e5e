use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gauss_eof_core::ensemble::{run_sweep, write_csv, SweepConfig, SweepSummary};
use gauss_eof_core::numeric::fmt_sig12;
use gauss_eof_core::{
    entropy_of_entanglement, eof_exact, eof_oracle, squeezing_interval, EofOptions, Error, ErrorClass, OracleGrid,
    ResolvedState, StateInput,
};

mod report;

use report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Entanglement of formation of two-mode Gaussian states.
///
/// STATE is a JSON file (or `-` for standard input) holding exactly one of
/// `{"matrix": [[..4x4..]]}`, `{"standard_form": {"a", "b", "c1", "c2"}}` or
/// `{"purity_params": {"mu_a", "mu_b", "mu", "beta"}}`.
#[derive(Debug, Parser)]
#[command(name = "gauss-eof", version)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct ExactArgs {
    /// Uniform grid points before golden-section refinement
    #[arg(long, default_value_t = 2000)]
    grid_points: usize,
    /// Refinement stops once the bracket is narrower than this
    #[arg(long, default_value_t = 1e-10)]
    tol_r: f64,
}

impl ExactArgs {
    fn options(&self) -> Result<EofOptions, Error> {
        if self.grid_points < 3 || self.tol_r.is_nan() || self.tol_r <= 0.0 {
            return Err(Error::InvalidParams(
                "--grid-points must be ≥ 3 and --tol-r positive".into(),
            ));
        }
        Ok(EofOptions {
            grid_points: self.grid_points,
            tol_r: self.tol_r,
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower and upper bounds with their squeezing parameters
    Bounds { state: PathBuf },
    /// Exact value by one-parameter minimisation
    Exact {
        state: PathBuf,
        #[command(flatten)]
        opts: ExactArgs,
    },
    /// Brute-force reference value and its gap to the exact value
    Oracle {
        state: PathBuf,
        #[arg(long, default_value_t = 120)]
        n_eigen: usize,
        #[arg(long, default_value_t = 400)]
        n_angle: usize,
    },
    /// Physicality, classicality, separability and spectra
    Check { state: PathBuf },
    /// Random entangled ensemble: bound gaps versus purity
    Sweep {
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5.0)]
        s_max: f64,
        #[arg(long, default_value_t = 0.0)]
        min_purity: f64,
        #[arg(long, default_value_t = 20)]
        bins: usize,
        /// Record CSV; written to standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Whitespace-separated (mu, delta-, delta+) columns for plotting
        #[arg(long)]
        plot_data: Option<PathBuf>,
        #[arg(long, default_value_t = 2000)]
        grid_points: usize,
    },
}

fn read_state(path: &Path) -> Result<StateInput, Error> {
    if path == Path::new("-") {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        return StateInput::from_json_str(&buf);
    }
    StateInput::from_reader(BufReader::new(File::open(path)?))
}

fn resolve(path: &Path) -> Result<ResolvedState, Error> {
    read_state(path)?.resolve()
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    }
}

fn bounds(path: &Path) -> Result<Report, Error> {
    let sf = resolve(path)?.standard_form;
    let (r_minus, r_plus) = if sf.is_separable() {
        (0.0, 0.0)
    } else {
        squeezing_interval(&sf)?
    };
    Ok(Report::default()
        .num("lower", entropy_of_entanglement(r_minus))
        .num("upper", entropy_of_entanglement(r_plus))
        .num("r_minus", r_minus)
        .num("r_plus", r_plus))
}

fn exact(path: &Path, opts: &EofOptions) -> Result<Report, Error> {
    let sf = resolve(path)?.standard_form;
    let r = eof_exact(&sf, opts)?;
    Ok(Report::default()
        .num("lower", r.lower)
        .num("upper", r.upper)
        .num("exact", r.exact)
        .num("r_minus", r.r_minus)
        .num("r_plus", r.r_plus)
        .num("r_opt", r.r_opt)
        .int("evaluations", r.evaluations as u64)
        .flag("converged", r.converged))
}

fn oracle(path: &Path, grid: &OracleGrid) -> Result<Report, Error> {
    let sf = resolve(path)?.standard_form;
    let value = eof_oracle(&sf, grid)?;
    let exact = eof_exact(&sf, &EofOptions::default())?.exact;
    Ok(Report::default()
        .num("oracle", value)
        .num("exact", exact)
        .num("gap", value - exact))
}

fn check(path: &Path) -> Result<Report, Error> {
    let resolved = match read_state(path)?.resolve() {
        Ok(r) => r,
        Err(e @ (Error::NotPhysical(_) | Error::InvalidParams(_) | Error::ParametrizationMismatch(_))) => {
            return Ok(Report::default().flag("physical", false).text("reason", e.to_string()));
        }
        Err(e) => return Err(e),
    };
    let c = resolved.covariance;
    let sf = resolved.standard_form;
    let spec = c.symplectic_spectrum()?;
    let pt = c.pt_spectrum()?;
    let (mu, mu_a, mu_b) = c.purities();
    Ok(Report::default()
        .flag("physical", true)
        .flag(
            "classical",
            sf.min_eigenvalue() >= 1.0 - gauss_eof_core::gaussian::PHYSICAL_TOL,
        )
        .flag("separable", c.is_separable())
        .num("nu_minus", spec.nu_minus)
        .num("nu_plus", spec.nu_plus)
        .num("delta", spec.delta)
        .num("nu_gamma_minus", pt.nu_minus)
        .num("nu_gamma_plus", pt.nu_plus)
        .num("delta_pt", pt.delta)
        .num("mu", mu)
        .num("mu_a", mu_a)
        .num("mu_b", mu_b)
        .num("a", sf.a())
        .num("b", sf.b())
        .num("c1", sf.c1())
        .num("c2", sf.c2()))
}

fn summary_text(s: &SweepSummary, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(s).expect("summary serializes") + "\n",
        Format::Csv => {
            let mut out = String::from("bin_lo,bin_hi,bin_center,count,mean_delta_minus_pct,mean_delta_plus_pct\n");
            for b in &s.bins {
                out += &format!(
                    "{},{},{},{},{},{}\n",
                    fmt_sig12(b.lo),
                    fmt_sig12(b.hi),
                    fmt_sig12(b.center),
                    b.count,
                    fmt_sig12(b.mean_delta_minus),
                    fmt_sig12(b.mean_delta_plus)
                );
            }
            out
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let format = cli.format;
    let report = match cli.command {
        Command::Bounds { state } => bounds(&state)?,
        Command::Exact { state, opts } => exact(&state, &opts.options()?)?,
        Command::Oracle {
            state,
            n_eigen,
            n_angle,
        } => {
            if n_eigen < 2 || n_angle < 1 {
                return Err(Error::InvalidParams("--n-eigen must be ≥ 2 and --n-angle ≥ 1".into()));
            }
            oracle(&state, &OracleGrid { n_eigen, n_angle })?
        }
        Command::Check { state } => check(&state)?,
        Command::Sweep {
            n,
            seed,
            s_max,
            min_purity,
            bins,
            out,
            plot_data,
            grid_points,
        } => {
            let eof = ExactArgs {
                grid_points,
                tol_r: 1e-10,
            }
            .options()?;
            let to_stdout = out.is_none();
            let cfg = SweepConfig {
                n_states: n,
                s_max,
                seed,
                min_purity,
                output_path: out,
                bins,
                plot_data,
                eof,
            };
            let (records, summary) = run_sweep(&cfg)?;
            if to_stdout {
                write_csv(io::stdout().lock(), &records)?;
                eprintln!(
                    "{} records, {} rejections, mean δ⁻ {:.4}%, mean δ⁺ {:.4}%, Spearman {:?} / {:?}",
                    summary.n_records,
                    summary.rejections,
                    summary.mean_delta_minus,
                    summary.mean_delta_plus,
                    summary.spearman_minus,
                    summary.spearman_plus
                );
            } else {
                io::stdout().write_all(summary_text(&summary, format).as_bytes())?;
            }
            return Ok(());
        }
    };
    io::stdout().write_all(render(&report, format).as_bytes())?;
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::InvalidInput => 1,
        ErrorClass::Numerical => 2,
        ErrorClass::Io => 3,
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
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gauss-eof: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
