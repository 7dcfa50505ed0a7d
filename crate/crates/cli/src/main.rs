use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use ccr_cli::commands::{self, CliError, Outcome};
use ccr_cli::criteria::Profile;
use ccr_cli::report::{config_hash, RunReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Canonical commutation relations over finite rings.
#[derive(Parser, Serialize)]
#[command(name = "ccr", version)]
struct Cli {
    /// Write the JSON run report here.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Leave wall time out of the report so it is byte-reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Serialize, Clone)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the default tolerance of the command's checks.
    #[arg(long)]
    tol: Option<f64>,
    /// Output file: the data artifact for commands that produce one,
    /// otherwise the JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize, Clone)]
struct RingArgs {
    /// `zmod:N`, `fp:P`, `mat:N:<ring>`, `prod(<ring>,<ring>)` or JSON.
    #[arg(long)]
    ring: String,
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Integer exponent, `trace`, or `{"exponents": [...]}`.
    #[arg(long, default_value = "1")]
    lambda: String,
}

#[derive(Subcommand, Serialize)]
enum Command {
    /// Finite rings and their additive structure.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Characters of the additive group.
    #[command(subcommand)]
    Char(CharCmd),
    /// Build and check CCR pairs.
    #[command(subcommand)]
    Pair(PairCmd),
    /// Equivalence with the regular pair, decomposition, commutants.
    #[command(subcommand)]
    Svn(SvnCmd),
    /// The Heisenberg group and its representations.
    #[command(subcommand)]
    Heis(HeisCmd),
    /// Orbit samples and ε certificates for an irrational rotation.
    #[command(subcommand)]
    Approx(ApproxCmd),
    /// Run the acceptance matrix.
    Suite {
        #[arg(value_enum, default_value = "quick")]
        profile: ProfileArg,
        /// Run only these criteria (comma-separated ids).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Serialize, Clone, Copy)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Subcommand, Serialize)]
enum RingCmd {
    /// Order, additive group and counts of characters by condition.
    Info {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Serialize)]
enum CharCmd {
    /// Report (Sym), (Isom) and (Faith) for a character.
    Check {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Serialize)]
enum PairCmd {
    /// The Schrödinger pair on ℓ²(R^d).
    Schrodinger {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        common: Common,
    },
    /// The regular pair on ℓ²(R^d × R^d).
    Regular {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        common: Common,
    },
    /// A random unitary conjugate of `mult` Schrödinger copies.
    Random {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 2)]
        mult: usize,
        #[command(flatten)]
        common: Common,
    },
    /// CCR and homomorphism residuals of a saved pair.
    VerifyCcr {
        file: PathBuf,
        /// `all` or `generators`; defaults to `all` when |R^d| ≤ 64.
        #[arg(long)]
        scope: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Serialize)]
enum SvnCmd {
    /// Build the explicit intertwiner with the regular pair and report residuals.
    Intertwine {
        #[arg(long)]
        pair: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Split a pair into Schrödinger copies.
    Decompose {
        #[arg(long)]
        pair: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Dimension of the commutant of a pair.
    Commutant {
        #[arg(long)]
        pair: PathBuf,
        /// Fail unless the dimension equals this value.
        #[arg(long)]
        expect: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Whether two pairs are unitarily equivalent.
    Equivalent {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Serialize)]
enum HeisCmd {
    /// Export the multiplication table (capped).
    Table {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check the group representation built from a pair.
    RepCheck {
        #[arg(long)]
        pair: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Induce λ from the center and compare traces with the regular pair.
    Induce {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Serialize, Clone)]
struct ThetaArgs {
    /// `golden`, `sqrt2`, `p/q` or a decimal.
    #[arg(long, default_value = "golden")]
    theta: String,
    /// Torus dimension 2d.
    #[arg(long, default_value_t = 2)]
    dims: usize,
}

#[derive(Subcommand, Serialize)]
enum ApproxCmd {
    /// One orbit sample per grid cell.
    Sample {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 8)]
        grid: usize,
        /// Search window; defaults to the three-distance window (or q).
        #[arg(long)]
        window: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Certified ε for the sampled cells.
    Epsilon {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 8)]
        grid: usize,
        #[arg(long)]
        window: Option<u64>,
        /// `k` for {−k..k}, `lo..hi`, or a comma list.
        #[arg(long, default_value = "5")]
        k: String,
        /// Give uncovered cells their nearest orbit point instead of failing.
        #[arg(long)]
        fallback: bool,
        #[command(flatten)]
        common: Common,
    },
    /// ε as the grid is refined, as CSV.
    Study {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        grids: Vec<usize>,
        #[arg(long, default_value = "5")]
        k: String,
        #[command(flatten)]
        common: Common,
    },
}

/// Runs the command; the path is where `--out` sends the report, if it does.
fn dispatch(cmd: &Command) -> (Result<Outcome, CliError>, Option<PathBuf>) {
    match cmd {
        Command::Ring(RingCmd::Info { ring, common }) => (commands::ring_info(ring), common.out.clone()),
        Command::Char(CharCmd::Check { ring, lambda, common }) => (commands::char_check(ring, lambda), common.out.clone()),
        Command::Pair(p) => match p {
            PairCmd::Schrodinger { ring, common } => {
                (commands::pair_build("schrodinger", &ring.ring, ring.d, &ring.lambda, 1, common.seed, common.out.as_ref()), None)
            }
            PairCmd::Regular { ring, common } => {
                (commands::pair_build("regular", &ring.ring, ring.d, &ring.lambda, 1, common.seed, common.out.as_ref()), None)
            }
            PairCmd::Random { ring, mult, common } => {
                (commands::pair_build("random", &ring.ring, ring.d, &ring.lambda, *mult, common.seed, common.out.as_ref()), None)
            }
            PairCmd::VerifyCcr { file, scope, common } => {
                (commands::verify_ccr(file, scope.as_deref(), common.tol), common.out.clone())
            }
        },
        Command::Svn(s) => match s {
            SvnCmd::Intertwine { pair, common } => (commands::svn_intertwine(pair, common.tol), common.out.clone()),
            SvnCmd::Decompose { pair, common } => (commands::svn_decompose(pair, common.seed, common.tol), common.out.clone()),
            SvnCmd::Commutant { pair, expect, common } => (commands::svn_commutant(pair, *expect), common.out.clone()),
            SvnCmd::Equivalent { a, b, common } => (commands::svn_equivalent(a, b, common.tol), common.out.clone()),
        },
        Command::Heis(h) => match h {
            HeisCmd::Table { ring, d, common } => (commands::heis_table(ring, *d, common.out.as_ref()), None),
            HeisCmd::RepCheck { pair, common } => (commands::heis_rep_check(pair, common.tol), common.out.clone()),
            HeisCmd::Induce { ring, common } => {
                (commands::heis_induce(&ring.ring, ring.d, &ring.lambda, common.tol), common.out.clone())
            }
        },
        Command::Approx(a) => match a {
            ApproxCmd::Sample { theta, grid, window, common } => {
                (commands::approx_sample(&theta.theta, *grid, *window, theta.dims, common.out.as_ref()), None)
            }
            ApproxCmd::Epsilon { theta, grid, window, k, fallback, common } => (
                commands::approx_epsilon(&theta.theta, *grid, *window, k, theta.dims, *fallback, common.out.as_ref()),
                None,
            ),
            ApproxCmd::Study { theta, grids, k, common } => {
                (commands::approx_study(&theta.theta, grids, k, theta.dims, common.out.as_ref()), None)
            }
        },
        Command::Suite { profile, only, common } => {
            let p = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            (commands::suite(p, only), common.out.clone())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (result, report_out) = dispatch(&cli.command);
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Failure(_) => 1,
            });
        }
    };
    if let Some((path, contents)) = &outcome.artifact {
        if let Err(e) = std::fs::write(path, contents) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let config = serde_json::to_value(&cli).expect("arguments serialize");
    let report = RunReport {
        command: std::env::args().skip(1).collect(),
        config_hash: config_hash(&config),
        checks: outcome.checks,
        output: outcome.output,
        wall_time_ms: if cli.no_timing { None } else { Some(start.elapsed().as_millis() as u64) },
    };
    print!("{}", outcome.human);
    print!("{}", report.summary());
    for path in [report_out.as_ref(), cli.report.as_ref()].into_iter().flatten() {
        if let Err(e) = report.write(path) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        for c in report.failures() {
            eprintln!("check failed: {} = {:.3e} > {:.1e}", c.name, c.residual, c.tolerance);
        }
        ExitCode::from(1)
    }
}
