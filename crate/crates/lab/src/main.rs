use brody_lab::commands::{self, CharacteristicMethod};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

/// Numerical laboratory for holomorphic curves: spherical derivatives,
/// growth characteristics, harmonic-function bounds, and the inequalities
/// satisfied by curves omitting coordinate hyperplanes.
#[derive(Parser)]
#[command(name = "brody-lab", version, about)]
struct Cli {
    /// Worker threads for sweeps (BRODY_LAB_THREADS overrides this flag).
    #[arg(long, global = true)]
    parallel: Option<usize>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Jensen,
    Ahlfors,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyArg {
    All,
    B0,
    Elliptic,
    Brody,
    Growth,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the spherical derivative over a disc and report its supremum.
    SphericalGrid {
        /// Curve specification file (JSON).
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 12.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.05)]
        resolution: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth table: characteristic by circle averages and by the area
    /// integral, plus the mass n(r). CSV columns r,t_jensen,t_ahlfors,n_of_r.
    Characteristic {
        #[arg(long)]
        curve: PathBuf,
        /// Geometric radius grid r0:r1:k (k steps).
        #[arg(long)]
        radii: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Absolute tolerance for the area route.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit growth order and type over a radius window.
    OrderFit {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        radii: String,
        /// Fit window lo,hi (defaults to the radii span).
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded suite of exact positive-harmonic disc cases checking the
    /// boundary gradient bound, the Harnack floor, and radial monotonicity.
    Lemma1 {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        degree: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Report file (JSON); stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Sweep the inequality u_0 <= u* + 4(n+1)|z| sup||f'|| over an annulus.
    MainIneq {
        #[arg(long)]
        curve: PathBuf,
        /// The marked zero of the first component, re,im.
        #[arg(long)]
        z0: String,
        /// Annulus r0,r1.
        #[arg(long)]
        annulus: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Margins below this value count as violations.
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        /// Additionally run the boundary-chain check at this many centers.
        #[arg(long, default_value_t = 0)]
        chain_centers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the quadratic-growth example curve and verify its claims.
    Example {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = VerifyArg::All)]
        verify: VerifyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full acceptance battery, one pass/fail line per criterion.
    Report {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn init_threads(flag: Option<usize>) {
    let from_env = std::env::var("BRODY_LAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    if let Some(n) = from_env.or(flag) {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn run(cli: Cli) -> Result<i32, brody_core::Error> {
    match cli.command {
        Command::SphericalGrid {
            curve,
            radius,
            resolution,
            out,
        } => commands::cmd_spherical_grid(&curve, radius, resolution, out.as_deref()),
        Command::Characteristic {
            curve,
            radii,
            method,
            tol,
            out,
        } => {
            let grid = commands::parse_radii_grid(&radii)?;
            let method = match method {
                MethodArg::Jensen => CharacteristicMethod::Jensen,
                MethodArg::Ahlfors => CharacteristicMethod::Ahlfors,
                MethodArg::Both => CharacteristicMethod::Both,
            };
            commands::cmd_characteristic(&curve, &grid, method, tol, out.as_deref())
        }
        Command::OrderFit {
            curve,
            radii,
            window,
            out,
        } => {
            let grid = commands::parse_radii_grid(&radii)?;
            let window = window
                .map(|w| commands::parse_interval(&w))
                .transpose()?;
            commands::cmd_order_fit(&curve, &grid, window, out.as_deref())
        }
        Command::Lemma1 {
            trials,
            degree,
            seed,
            report,
        } => commands::cmd_lemma1(trials, degree, seed, report.as_deref()),
        Command::MainIneq {
            curve,
            z0,
            annulus,
            samples,
            tol,
            chain_centers,
            out,
        } => {
            let z0 = commands::parse_complex(&z0)?;
            let annulus = commands::parse_interval(&annulus)?;
            commands::cmd_main_ineq(
                &curve,
                z0,
                annulus,
                samples,
                tol,
                chain_centers,
                cli.seed,
                out.as_deref(),
            )
        }
        Command::Example { n, verify, out } => {
            let verify = match verify {
                VerifyArg::All => "all",
                VerifyArg::B0 => "b0",
                VerifyArg::Elliptic => "elliptic",
                VerifyArg::Brody => "brody",
                VerifyArg::Growth => "growth",
            };
            commands::cmd_example(n, verify, out.as_deref())
        }
        Command::Report { out } => commands::cmd_report(out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.parallel);
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e @ brody_core::Error::Input(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e @ brody_core::Error::Numerical(_)) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
    }
}
