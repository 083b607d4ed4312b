use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use l2rep::ring::RingKind;
use l2rep::run::{run, set_workers, Command, Format, RunConfig, EXIT_CONFIG};

#[derive(Parser)]
#[command(name = "l2rep", version, about = "Irreducible representations of SL_n over W_2(F_q) and F_q[t]/t^2")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Weyr normal form of --matrix over its splitting field
    Weyr,
    /// Centraliser algebra of --matrix and surjectivity of reduction on its unit group
    Centralizer,
    /// Stabiliser of --matrix + Z under conjugation by SL_n(F_q)
    Stabilizer,
    /// Orbits of SL_n(F_q) on M_n(F_q)/Z
    Orbits,
    /// Character degrees of SL_n or of the group generated by --gen
    CharDegrees,
    /// Extension of psi_(x+Z) to its stabiliser, per orbit
    ExtensionCheck,
    /// Degree distribution of SL_n(O_2)
    CountIrreps,
    /// Degree distributions for both rings, by both methods where feasible
    Compare,
    /// Order-p lifts of e_12
    Splitting,
    /// Full reproduction suite
    Reproduce,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true, env = "L2REP_N", default_value_t = 2)]
    n: usize,
    #[arg(long, global = true, env = "L2REP_P", default_value_t = 2)]
    p: u32,
    #[arg(long, global = true, env = "L2REP_F", default_value_t = 1)]
    f: u32,
    /// Defining polynomial coefficients, constant term first, e.g. 1,1,1
    #[arg(long, global = true, env = "L2REP_MODULUS", value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    /// witt2, dual or both
    #[arg(long, global = true, env = "L2REP_KIND", default_value = "both")]
    kind: String,
    #[arg(long, global = true, env = "L2REP_BUDGET_ELEMENTS", default_value_t = 1 << 22)]
    budget_elements: u64,
    #[arg(long, global = true, env = "L2REP_MAX_FIELD_SIZE", default_value_t = 1 << 12)]
    max_field_size: u64,
    #[arg(long, global = true, env = "L2REP_WORKERS")]
    workers: Option<usize>,
    #[arg(long, global = true, env = "L2REP_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// json or csv
    #[arg(long, global = true, env = "L2REP_FORMAT", default_value = "json")]
    format: String,
    #[arg(long, global = true, env = "L2REP_OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "L2REP_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, env = "L2REP_SAMPLES", default_value_t = 200)]
    samples: usize,
    /// Rows separated by ';', entries by ','; `example7` for the 7x7 nilpotent example
    #[arg(long, global = true, env = "L2REP_MATRIX")]
    matrix: Option<String>,
    /// Group generator, repeatable
    #[arg(long = "gen", global = true)]
    generators: Vec<String>,
    /// Prime for the class-matrix method, repeatable
    #[arg(long = "prime", global = true)]
    primes: Vec<u64>,
    /// Force the sampled extension check
    #[arg(long, global = true)]
    sampled: bool,
    /// Count by enumerating SL_n(O_2)
    #[arg(long, global = true)]
    direct: bool,
    /// Include stabiliser generators in orbit reports
    #[arg(long, global = true)]
    with_generators: bool,
    /// Skip the slow reproduction rows
    #[arg(long, global = true)]
    quick: bool,
}

fn command(c: Cmd) -> Command {
    match c {
        Cmd::Weyr => Command::Weyr,
        Cmd::Centralizer => Command::Centralizer,
        Cmd::Stabilizer => Command::Stabilizer,
        Cmd::Orbits => Command::Orbits,
        Cmd::CharDegrees => Command::CharDegrees,
        Cmd::ExtensionCheck => Command::ExtensionCheck,
        Cmd::CountIrreps => Command::CountIrreps,
        Cmd::Compare => Command::Compare,
        Cmd::Splitting => Command::Splitting,
        Cmd::Reproduce => Command::Reproduce,
    }
}

fn config(cli: &Cli) -> Result<RunConfig, String> {
    let o = &cli.opts;
    let kinds = match o.kind.as_str() {
        "both" | "all" => Vec::new(),
        k => vec![k.parse::<RingKind>().map_err(|e| e.to_string())?],
    };
    let format = match o.format.as_str() {
        "json" => Format::Json,
        "csv" => Format::Csv,
        other => return Err(format!("unknown format {other:?}")),
    };
    let mut c = RunConfig::new(command(cli.command));
    c.n = o.n;
    c.p = o.p;
    c.f = o.f;
    c.modulus = o.modulus.clone();
    c.kinds = kinds;
    c.budget_elements = o.budget_elements;
    c.max_field_size = o.max_field_size;
    c.workers = o.workers;
    c.cache_dir = o.cache_dir.clone();
    c.format = format;
    c.seed = o.seed;
    c.samples = o.samples;
    c.sampled = o.sampled;
    c.direct = o.direct;
    c.matrix = o.matrix.clone();
    c.generators = o.generators.clone();
    c.primes = o.primes.clone();
    c.with_generators = o.with_generators;
    c.quick = o.quick;
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    if let Some(w) = cfg.workers {
        if let Err(e) = set_workers(w) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    }
    let outcome = run(&cfg);
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{}", outcome.rendered),
    }
    ExitCode::from(outcome.exit_code as u8)
}
