//! Command-line front end. All computation lives in the library; this binary
//! parses arguments, reads files, and formats output.
//!
//! Exit codes: 0 success, 2 input or validation problem, 3 numerical failure,
//! 4 I/O failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pcrank::montecarlo::{parse_d_grid, write_csv};
use pcrank::{
    check_bounds, comp_vectors, estimate_ri, generate_matrix, gmm, inconsistency_report,
    kendall_distance, run_experiment, summarize, BoundCheckReport, Error, EvmOptions,
    ExperimentConfig, FactorMode, GeneratorConfig, PcMatrix, RiTable, WeightMode,
};

#[derive(Parser)]
#[command(name = "pcrank", version, about = "Priority vectors, inconsistency indices, and divergence bounds for pairwise comparison matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Evm,
    Gmm,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Derive a priority vector from a matrix file
    Rank {
        /// Matrix file
        #[arg(short, long)]
        matrix: PathBuf,
        /// Derivation method; `both` also prints distances and bound checks
        #[arg(long, value_enum)]
        method: Method,
        /// Emit JSON at full precision instead of text
        #[arg(long)]
        json: bool,
    },
    /// Report inconsistency indices of a matrix file
    Check {
        /// Matrix file
        #[arg(short, long)]
        matrix: PathBuf,
        /// Random-index table file (`n = value` lines); defaults cover n = 3..10
        #[arg(long)]
        ri: Option<PathBuf>,
    },
    /// Compare two matrix files by their compatibility indices
    Compare {
        /// First matrix file
        #[arg(short)]
        a: PathBuf,
        /// Second matrix file
        #[arg(short)]
        b: PathBuf,
    },
    /// Generate a random disturbed matrix on standard output
    Gen {
        /// Matrix order
        #[arg(short)]
        n: usize,
        /// Disturbance level, >= 1
        #[arg(short)]
        d: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "uniform", value_parser = FactorMode::from_str)]
        factor_mode: FactorMode,
        #[arg(long, default_value = "uniform01", value_parser = WeightMode::from_str)]
        weight_mode: WeightMode,
        /// Clamp disturbed entries to [1/9, 9]
        #[arg(long)]
        clamp: bool,
    },
    /// Run a disturbance-grid experiment; CSV on stdout or --output, summary on stderr
    Experiment {
        /// Config file with `key = value` lines; flags override its values
        #[arg(long)]
        config: Option<PathBuf>,
        /// Matrix order
        #[arg(short)]
        n: Option<usize>,
        /// Grid as `start:step:end` or comma-separated levels
        #[arg(long)]
        d_grid: Option<String>,
        /// Samples per grid level
        #[arg(long)]
        samples: Option<usize>,
        /// Master seed
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = FactorMode::from_str)]
        factor_mode: Option<FactorMode>,
        #[arg(long, value_parser = WeightMode::from_str)]
        weight_mode: Option<WeightMode>,
        /// Clamp disturbed entries to [1/9, 9]
        #[arg(long)]
        clamp: bool,
        /// CSV destination (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Estimate the random consistency index for an order
    EstimateRi {
        /// Matrix order
        #[arg(short)]
        n: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pcrank: {e}");
            ExitCode::from(e.code())
        }
    }
}

enum CliError {
    Lib(Error),
    Io(std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Convergence { .. }) => 3,
            CliError::Lib(_) => 2,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Io(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn read_matrix(path: &PathBuf) -> Result<PcMatrix, CliError> {
    let text = fs::read_to_string(path)?;
    Ok(PcMatrix::parse(&text)?)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Rank {
            matrix,
            method,
            json,
        } => cmd_rank(&matrix, method, json),
        Command::Check { matrix, ri } => cmd_check(&matrix, ri.as_ref()),
        Command::Compare { a, b } => cmd_compare(&a, &b),
        Command::Gen {
            n,
            d,
            seed,
            factor_mode,
            weight_mode,
            clamp,
        } => cmd_gen(n, d, seed, factor_mode, weight_mode, clamp),
        Command::Experiment {
            config,
            n,
            d_grid,
            samples,
            seed,
            factor_mode,
            weight_mode,
            clamp,
            output,
        } => {
            let mut cfg = match config {
                Some(path) => ExperimentConfig::parse(&fs::read_to_string(&path)?)?,
                None => ExperimentConfig::default(),
            };
            if let Some(n) = n {
                cfg.n = n;
                cfg.generator.n = n;
            }
            if let Some(grid) = d_grid {
                cfg.d_grid = parse_d_grid(&grid)?;
            }
            if let Some(s) = samples {
                cfg.samples_per_d = s;
            }
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            if let Some(m) = factor_mode {
                cfg.generator.factor_mode = m;
            }
            if let Some(m) = weight_mode {
                cfg.generator.weight_mode = m;
            }
            if clamp {
                cfg.generator.clamp_to_scale = true;
            }
            cmd_experiment(&cfg, output.as_ref())
        }
        Command::EstimateRi { n, samples, seed } => {
            let ri = estimate_ri(n, samples, seed)?;
            println!("RI({n}) = {ri:.6}  (samples {samples}, seed {seed})");
            Ok(())
        }
    }
}

fn cmd_rank(path: &PathBuf, method: Method, json: bool) -> Result<(), CliError> {
    let c = read_matrix(path)?;
    let n = c.order();

    match method {
        Method::Evm => {
            let ev = pcrank::evm(&c, EvmOptions::default())?;
            if json {
                println!(
                    "{}",
                    json!({
                        "order": n,
                        "method": "evm",
                        "weights": ev.weights.weights(),
                        "lambda_max": ev.lambda_max,
                        "iterations": ev.iterations,
                        "residual": ev.residual,
                    })
                );
            } else {
                println!("order: {n}");
                println!("method: evm  (lambda_max {:.6})", ev.lambda_max);
                print_weights(&[("evm", ev.weights.weights())]);
            }
        }
        Method::Gmm => {
            let gm = gmm(&c);
            if json {
                println!(
                    "{}",
                    json!({"order": n, "method": "gmm", "weights": gm.weights()})
                );
            } else {
                println!("order: {n}");
                println!("method: gmm");
                print_weights(&[("gmm", gm.weights())]);
            }
        }
        Method::Both => {
            let ev = pcrank::evm(&c, EvmOptions::default())?;
            let gm = gmm(&c);
            let compat = comp_vectors(&ev.weights, &gm)?;
            let md = pcrank::manhattan(&ev.weights, &gm)?;
            let cheb = pcrank::chebyshev(&ev.weights, &gm)?;
            let kendall = kendall_distance(&ev.weights, &gm)?;
            let bounds: Option<BoundCheckReport> =
                if n > 2 { Some(check_bounds(&c)?) } else { None };

            if json {
                println!(
                    "{}",
                    json!({
                        "order": n,
                        "method": "both",
                        "evm": {
                            "weights": ev.weights.weights(),
                            "lambda_max": ev.lambda_max,
                            "iterations": ev.iterations,
                            "residual": ev.residual,
                        },
                        "gmm": {"weights": gm.weights()},
                        "distances": {"manhattan": md, "chebyshev": cheb, "kendall": kendall},
                        "compatibility": serde_json::to_value(compat).expect("serializable"),
                        "bounds": bounds.map(|b| serde_json::to_value(b).expect("serializable")),
                    })
                );
            } else {
                println!("order: {n}");
                println!("lambda_max: {:.6}", ev.lambda_max);
                print_weights(&[("evm", ev.weights.weights()), ("gmm", gm.weights())]);
                println!("manhattan: {md:.6}");
                println!("chebyshev: {cheb:.6}");
                println!("kendall: {kendall}");
                println!(
                    "compatibility: comp {:.6}  lower {:.6}  upper {:.6}  max {:.6}",
                    compat.comp, compat.comp_lower, compat.comp_upper, compat.comp_max
                );
                match bounds {
                    Some(b) => {
                        println!(
                            "envelope (kappa {:.6}): compat [{:.6}, {:.6}]  md [{:.6}, {:.6}]  cheb <= {:.6}",
                            b.envelope.kappa,
                            b.envelope.compat_low,
                            b.envelope.compat_high,
                            b.envelope.md_low,
                            b.envelope.md_high,
                            b.envelope.cheb_high
                        );
                        println!(
                            "checks: chain {}  md {}  cheb {}  mean {}",
                            ok(b.chain_ok),
                            ok(b.md_ok),
                            ok(b.cheb_ok),
                            ok(b.mean_ok)
                        );
                    }
                    None => println!("envelope: undefined (order <= 2)"),
                }
            }
        }
    }
    Ok(())
}

fn ok(flag: bool) -> &'static str {
    if flag {
        "ok"
    } else {
        "VIOLATED"
    }
}

fn print_weights(columns: &[(&str, &[f64])]) {
    print!("{:>6}", "");
    for (name, _) in columns {
        print!("  {name:>10}");
    }
    println!();
    let n = columns[0].1.len();
    for i in 0..n {
        print!("a{:<5}", i + 1);
        for (_, w) in columns {
            print!("  {:>10.6}", w[i]);
        }
        println!();
    }
}

fn cmd_check(path: &PathBuf, ri_path: Option<&PathBuf>) -> Result<(), CliError> {
    let c = read_matrix(path)?;
    let ri = match ri_path {
        Some(p) => RiTable::parse(&fs::read_to_string(p)?)?,
        None => RiTable::default(),
    };
    let report = inconsistency_report(&c, &ri, EvmOptions::default())?;

    println!("order: {}", c.order());
    println!("lambda_max: {:.6}", report.lambda_max);
    println!("CI: {:.6}", report.ci);
    match report.cr {
        Some(cr) => {
            let verdict = if cr <= 0.1 {
                "acceptable (CR <= 0.1)"
            } else {
                "not acceptable (CR > 0.1)"
            };
            println!("CR: {cr:.6}  {verdict}");
        }
        None => println!("CR: unavailable (no random index for order {})", c.order()),
    }
    match (report.ki, report.worst_triad) {
        (Some(ki), Some(t)) => {
            println!("KI: {ki:.6}");
            println!(
                "worst triad: (a{}, a{}, a{})  local {:.6}",
                t.i + 1,
                t.k + 1,
                t.j + 1,
                t.local_ki
            );
        }
        _ => println!("KI: undefined (order <= 2)"),
    }
    Ok(())
}

fn cmd_compare(path_a: &PathBuf, path_b: &PathBuf) -> Result<(), CliError> {
    let a = read_matrix(path_a)?;
    let b = read_matrix(path_b)?;
    let report = pcrank::similarity::comp_report_matrices(&a, &b)?;
    println!("order: {}", a.order());
    println!("comp: {:.6}", report.comp);
    println!("comp_lower: {:.6}", report.comp_lower);
    println!("comp_upper: {:.6}", report.comp_upper);
    println!("comp_max: {:.6}", report.comp_max);
    let chain = report.comp_lower <= report.comp + 1e-12
        && report.comp <= report.comp_upper + 1e-12
        && report.comp_upper <= report.comp_max + 1e-12;
    println!("ordering chain: {}", ok(chain));
    Ok(())
}

fn cmd_gen(
    n: usize,
    d: f64,
    seed: u64,
    factor_mode: FactorMode,
    weight_mode: WeightMode,
    clamp: bool,
) -> Result<(), CliError> {
    let cfg = GeneratorConfig {
        n,
        d,
        weight_mode,
        factor_mode,
        clamp_to_scale: clamp,
    };
    let matrix = generate_matrix(&cfg, seed)?;
    print!("{}", matrix.to_text());
    Ok(())
}

fn cmd_experiment(cfg: &ExperimentConfig, output: Option<&PathBuf>) -> Result<(), CliError> {
    let records = run_experiment(cfg)?;
    match output {
        Some(path) => {
            let mut file = fs::File::create(path)?;
            write_csv(&mut file, cfg, &records)?;
            file.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_csv(&mut lock, cfg, &records)?;
            lock.flush()?;
        }
    }

    let summary = summarize(&records, cfg.n)?;
    eprintln!(
        "levels: {}  samples/level: {}  records: {}",
        cfg.d_grid.len(),
        cfg.samples_per_d,
        summary.total_records
    );
    eprintln!("evm failures: {}", summary.evm_failures);
    eprintln!("bound violations: {}", summary.bound_violations);
    eprintln!(
        "min slack: chain {:.3e}  md {:.3e}  cheb {:.3e}  mean {:.3e}",
        summary.min_slack_chain,
        summary.min_slack_md,
        summary.min_slack_cheb,
        summary.min_slack_mean
    );
    eprintln!("spearman(d, mean KI): {:.4}", summary.spearman_d_mean_ki);
    eprintln!(
        "{:>6}  {:>9} {:>9} {:>10} {:>10} {:>12}",
        "d", "mean CI", "mean KI", "max MD", "max ChD", "max comp_up"
    );
    for level in &summary.per_level {
        eprintln!(
            "{:>6.2}  {:>9.6} {:>9.6} {:>10.6} {:>10.6} {:>12.6}",
            level.d, level.mean_ci, level.mean_ki, level.max_md, level.max_cheb,
            level.max_comp_upper
        );
    }
    Ok(())
}
