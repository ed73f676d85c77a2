mod render;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use partition_transport::measures::decompose;
use partition_transport::partitions::{
    count_with_guard, enumerate_with_guard, MultiPartition, Permutation, SizeGuard,
};
use partition_transport::rational::{approx_eq, fraction_string, CostValue};
use partition_transport::theorems::{verify_theorem_cor, verify_theorem_main, SweepConfig};
use partition_transport::transport::{
    solve_assignment, solve_assignment_approx, solve_bruteforce_approx,
    solve_bruteforce_with_limit, transport_between, CostKind, CostMatrix, DEFAULT_ORACLE_MAX,
};
use partition_transport::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use render::{Format, Highlight, RenderSpec};

#[derive(Parser)]
#[command(
    name = "ptransport",
    version,
    about = "Partitions as Young-diagram measures and exact optimal transport between them"
)]
struct Cli {
    /// Ground cost between lattice points.
    #[arg(long, global = true, default_value = "sq", value_parser = parse_cost)]
    cost: CostKind,
    /// Seed for the random matrices of `verify --theorem solver`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every m-dimensional partition of n, one JSON document per line.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Print only the number of partitions.
        #[arg(long)]
        count: bool,
        /// Largest n the enumerator accepts (default 12 for m <= 2, 8 for m = 3, 6 beyond).
        #[arg(long)]
        max_cells: Option<usize>,
    },
    /// Apply a coordinate permutation to a partition's Young diagram.
    Symmetrize {
        input: PathBuf,
        /// One-line notation: "2 1" means σ(1) = 2, σ(2) = 1.
        #[arg(long)]
        sigma: String,
        /// Print whether the partition is σ-self-symmetric instead.
        #[arg(long)]
        check_self: bool,
    },
    /// Optimal transport cost between two partitions of the same n.
    Wasserstein {
        a: PathBuf,
        b: PathBuf,
        /// Also print the optimal plan as JSON.
        #[arg(long)]
        plan: bool,
        /// Cross-check against exhaustive search over all matchings.
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_MAX)]
        oracle_max: usize,
    },
    /// Exhaustive sweep; writes a JSONL report and prints a summary table.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n_max: usize,
        /// A permutation in one-line notation, or one of identity, involutions, all.
        #[arg(long, default_value = "involutions")]
        sigma: String,
        #[arg(long)]
        max_cells: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_MAX)]
        oracle_max: usize,
    },
    /// Draw a Young diagram.
    Render {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: FormatArg,
        /// Color common and moved cells against the σ-image.
        #[arg(long)]
        sigma: Option<String>,
        /// Cell edge: pixels for svg, centimetres for tikz.
        #[arg(long)]
        cube_size: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    /// Hybrid plan optimality.
    Main,
    /// Zero distance iff self-symmetric.
    Cor,
    /// Hungarian solver against exhaustive search.
    Solver,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
    Tikz,
}

fn parse_cost(s: &str) -> Result<CostKind, String> {
    s.parse()
}

enum Failure {
    /// Bad input or a tripped size guard.
    Input(String),
    /// A check ran and found a violation.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let hint = match &e {
            Error::InstanceTooLarge {
                what: "cell count", ..
            } => " (raise it with --max-cells)",
            Error::InstanceTooLarge {
                what: "oracle matrix size",
                ..
            } => " (raise it with --oracle-max)",
            _ => "",
        };
        Failure::Input(format!("{e}{hint}"))
    }
}

type Outcome = Result<String, Failure>;

fn read_partition(path: &Path) -> Result<MultiPartition, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    MultiPartition::from_json_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn guard(m: usize, max_cells: Option<usize>) -> SizeGuard {
    max_cells.map_or(SizeGuard::default_for(m), |max_cells| SizeGuard {
        max_cells,
    })
}

fn sigma_set(spec: &str, size: usize) -> Result<Vec<Permutation>, Failure> {
    Ok(match spec {
        "identity" => vec![Permutation::identity(size)],
        "involutions" => Permutation::involutions(size),
        "all" => Permutation::all(size),
        one_line => vec![one_line.parse()?],
    })
}

fn cmd_enumerate(m: usize, n: usize, count: bool, max_cells: Option<usize>) -> Outcome {
    let g = guard(m, max_cells);
    if count {
        return Ok(format!("{}\n", count_with_guard(m, n, g)?));
    }
    let mut out = String::new();
    for p in enumerate_with_guard(m, n, g)? {
        out.push_str(&p.to_json_string());
        out.push('\n');
    }
    Ok(out)
}

fn cmd_symmetrize(input: &Path, sigma: &str, check_self: bool) -> Outcome {
    let p = read_partition(input)?;
    let sigma: Permutation = sigma.parse()?;
    if check_self {
        Ok(format!("{}\n", p.is_self_symmetric(&sigma)?))
    } else {
        Ok(format!("{}\n", p.symmetrize(&sigma)?.to_json_string()))
    }
}

/// Exhaustive minimum of the matching total, compared with the solver's.
fn certify(
    costs: &CostMatrix,
    solver: &CostValue,
    n: usize,
    limit: usize,
) -> Result<bool, Failure> {
    let n_val = n as f64;
    if costs.is_integral() {
        let brute = solve_bruteforce_with_limit(costs, limit)?;
        let exact = partition_transport::rational::ExactRational::new(brute.total, n as i64);
        Ok(solver.exact() == Some(exact))
    } else {
        let brute = solve_bruteforce_approx(costs, limit)?;
        Ok(approx_eq(solver.as_f64() * n_val, brute.total))
    }
}

fn cmd_wasserstein(
    a: &Path,
    b: &Path,
    kind: CostKind,
    plan: bool,
    check: bool,
    oracle_max: usize,
) -> Outcome {
    let (a, b) = (read_partition(a)?, read_partition(b)?);
    let sol = transport_between(&a, &b, kind)?;
    let mut out = String::new();
    match sol.value.exact() {
        Some(w) => {
            let _ = writeln!(out, "{}", fraction_string(&w));
            let _ = writeln!(out, "{}", sol.value.as_f64());
        }
        None if sol.zero => out.push_str("0/1\n0\n"),
        None => {
            let _ = writeln!(out, "{}", sol.value.as_f64());
        }
    }
    if plan {
        let _ = writeln!(out, "{}", sol.plan().to_json(&sol.value));
    }
    if check {
        if !certify(&sol.costs, &sol.value, a.n(), oracle_max)? {
            return Err(Failure::Verification(format!(
                "solver value {} disagrees with exhaustive search",
                sol.value.render()
            )));
        }
        let _ = writeln!(
            out,
            "certified: exhaustive search over {}! matchings agrees",
            a.n()
        );
    }
    Ok(out)
}

/// Hungarian totals against exhaustive search on `(π, σπ)` pairs and on
/// seeded random 6x6 matrices.
fn solver_sweep(
    config: &SweepConfig,
    seed: u64,
    oracle_max: usize,
) -> Result<(String, String, bool), Failure> {
    if config.n_max > oracle_max {
        return Err(Error::InstanceTooLarge {
            what: "oracle matrix size",
            size: config.n_max,
            limit: oracle_max,
        }
        .into());
    }
    let agree = |c: &CostMatrix| -> Result<(serde_json::Value, serde_json::Value, bool), Failure> {
        if c.is_integral() {
            let fast = solve_assignment(c)?.total;
            let slow = solve_bruteforce_with_limit(c, oracle_max)?.total;
            Ok((json!(fast), json!(slow), fast == slow))
        } else {
            let fast = solve_assignment_approx(c)?.total;
            let slow = solve_bruteforce_approx(c, oracle_max)?.total;
            Ok((json!(fast), json!(slow), approx_eq(fast, slow)))
        }
    };
    for sigma in &config.sigmas {
        if sigma.size() != config.m + 1 {
            return Err(Error::SizeMismatch {
                expected: config.m + 1,
                found: sigma.size(),
            }
            .into());
        }
    }
    let mut lines = String::new();
    let (mut checked, mut mismatches) = (0usize, 0usize);
    for n in 1..=config.n_max {
        for (index, p) in enumerate_with_guard(config.m, n, config.guard)?
            .iter()
            .enumerate()
        {
            for sigma in &config.sigmas {
                let q = p.symmetrize(sigma)?;
                let sol = transport_between(p, &q, config.kind)?;
                let (fast, slow, ok) = agree(&sol.costs)?;
                checked += 1;
                mismatches += usize::from(!ok);
                let record = json!({"n": n, "index": index, "partition": p.entries_json(), "sigma": sigma.to_string(),
                    "hungarian": fast, "bruteforce": slow, "agree": ok});
                let _ = writeln!(lines, "{record}");
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for index in 0..100 {
        let rows: Vec<Vec<i64>> = (0..6)
            .map(|_| (0..6).map(|_| rng.gen_range(0..=50)).collect())
            .collect();
        let c = CostMatrix::from_rows(&rows)?;
        let (fast, slow, ok) = agree(&c)?;
        checked += 1;
        mismatches += usize::from(!ok);
        let record = json!({"random": index, "seed": seed, "hungarian": fast, "bruteforce": slow, "agree": ok});
        let _ = writeln!(lines, "{record}");
    }
    let summary = json!({"summary": {"theorem": "solver", "m": config.m, "n_max": config.n_max,
        "sigmas": config.sigmas.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "cost": config.kind.as_str(), "seed": seed, "checked": checked, "mismatches": mismatches}});
    let _ = writeln!(lines, "{summary}");
    let table = format!(
        "theorem=solver m={} n<={} cost={} seed={seed}\ntotal: {checked} matrices, {mismatches} mismatches\n",
        config.m,
        config.n_max,
        config.kind.as_str()
    );
    Ok((lines, table, mismatches == 0))
}

struct VerifyArgs<'a> {
    theorem: TheoremArg,
    m: usize,
    n_max: usize,
    sigma: &'a str,
    max_cells: Option<usize>,
    oracle_max: usize,
}

/// Returns the JSONL report, the summary table and whether the sweep passed.
fn cmd_verify(
    args: VerifyArgs,
    kind: CostKind,
    seed: u64,
) -> Result<(String, String, bool), Failure> {
    if args.m == 0 {
        return Err(Error::BadDimension(0).into());
    }
    let mut config = SweepConfig::new(args.m, args.n_max, sigma_set(args.sigma, args.m + 1)?, kind);
    config.guard = guard(args.m, args.max_cells);
    let report = match args.theorem {
        TheoremArg::Main => verify_theorem_main(&config)?,
        TheoremArg::Cor => verify_theorem_cor(&config)?,
        TheoremArg::Solver => return solver_sweep(&config, seed, args.oracle_max),
    };
    Ok((report.to_jsonl(), report.table(), report.passed()))
}

fn cmd_render(
    input: &Path,
    format: FormatArg,
    sigma: Option<&str>,
    cube_size: Option<f64>,
    kind: CostKind,
) -> Outcome {
    let p = read_partition(input)?;
    let format = match format {
        FormatArg::Ascii => Format::Ascii,
        FormatArg::Svg => Format::Svg,
        FormatArg::Tikz => Format::Tikz,
    };
    let mut spec = RenderSpec::new(format);
    if let Some(size) = cube_size {
        if !(size.is_finite() && size > 0.0) {
            return Err(Failure::Input(format!(
                "--cube-size must be positive, got {size}"
            )));
        }
        spec.cube_size = size;
    }
    if let Some(sigma) = sigma {
        let sigma: Permutation = sigma.parse()?;
        let split = decompose(&p, &sigma)?;
        let arrows = if p.m() == 1 {
            let sol = transport_between(&p, &p.symmetrize(&sigma)?, kind)?;
            sol.support_pairs()
                .into_iter()
                .filter(|(a, b)| a != b)
                .collect()
        } else {
            Vec::new()
        };
        spec.highlight = Some(Highlight { split, arrows });
    }
    render::render(&p, &spec).map_err(Failure::Input)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = cli.out.as_deref();
    let text = match cli.command {
        Command::Enumerate {
            m,
            n,
            count,
            max_cells,
        } => cmd_enumerate(m, n, count, max_cells)?,
        Command::Symmetrize {
            input,
            sigma,
            check_self,
        } => cmd_symmetrize(&input, &sigma, check_self)?,
        Command::Wasserstein {
            a,
            b,
            plan,
            certify,
            oracle_max,
        } => cmd_wasserstein(&a, &b, cli.cost, plan, certify, oracle_max)?,
        Command::Verify {
            theorem,
            m,
            n_max,
            sigma,
            max_cells,
            oracle_max,
        } => {
            let args = VerifyArgs {
                theorem,
                m,
                n_max,
                sigma: &sigma,
                max_cells,
                oracle_max,
            };
            let (report, table, passed) = cmd_verify(args, cli.cost, cli.seed)?;
            // with --out the table goes to stdout, otherwise it moves to stderr
            match out {
                Some(_) => print!("{table}"),
                None => eprint!("{table}"),
            }
            emit(out, &report)?;
            if !passed {
                return Err(Failure::Verification("sweep found violations".into()));
            }
            return Ok(());
        }
        Command::Render {
            input,
            format,
            sigma,
            cube_size,
        } => cmd_render(&input, format, sigma.as_deref(), cube_size, cli.cost)?,
    };
    emit(out, &text)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}
