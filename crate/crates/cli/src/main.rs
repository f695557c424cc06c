use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use symrect::io::{read_matrix_market, write_matrix_market, PartitionReport, ReadOptions, Target};
use symrect::oracle::OracleLimits;
use symrect::SparseMatrix;
use symrect_cli::{
    cmd_bench, cmd_evaluate, cmd_oracle, cmd_partition, cmd_profile, profile_svg, read_bench_csv, write_bench_csv,
    write_profile_csv, Algorithm, BenchConfig, LoadGrid, Metric, Objectives, RunOptions, Sampling, UsageError,
};

/// Symmetric rectilinear partitioning of square sparse matrices.
#[derive(Parser)]
#[command(name = "symrect", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition a matrix and write a report
    Partition(PartitionArgs),
    /// Report the metrics of given cut vectors
    Evaluate(EvaluateArgs),
    /// Sweep algorithms, objectives and seeds into a CSV
    Bench(BenchArgs),
    /// Performance profiles from a bench CSV
    Profile(ProfileArgs),
    /// Exhaustive optimum for small matrices
    Oracle(OracleArgs),
    /// Write a synthetic matrix in Matrix Market format
    Generate(GenerateArgs),
}

#[derive(Args)]
struct MatrixInput {
    /// Matrix Market coordinate file
    matrix: PathBuf,
    /// Round real-valued weights to integers
    #[arg(long)]
    quantize: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TargetArgs {
    /// Number of intervals
    #[arg(long)]
    p: Option<usize>,
    /// Load bound Z
    #[arg(long)]
    load: Option<u64>,
}

impl TargetArgs {
    fn target(&self) -> Target {
        match (self.p, self.load) {
            (Some(p), _) => Target::P(p),
            (None, Some(z)) => Target::Load(z),
            (None, None) => unreachable!("clap requires one"),
        }
    }
}

#[derive(Args)]
struct SamplingArgs {
    /// Keep each nonzero with this probability
    #[arg(long, conflicts_with = "sparsify_eps")]
    sparsify_factor: Option<f64>,
    /// Pick the keep probability for this relative error
    #[arg(long)]
    sparsify_eps: Option<f64>,
    /// Sampling seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Refinement rounds for rac, nic and bal-rac
    #[arg(long, default_value_t = symrect::partitioners::DEFAULT_TAU)]
    tau: usize,
    /// Scan rows directly instead of building the sparse prefix sum
    #[arg(long)]
    no_bit: bool,
}

impl SamplingArgs {
    fn options(&self) -> RunOptions {
        let sampling = match (self.sparsify_factor, self.sparsify_eps) {
            (Some(s), _) => Sampling::Factor(s),
            (None, Some(e)) => Sampling::Tolerance(e),
            (None, None) => Sampling::Off,
        };
        RunOptions {
            tau: self.tau,
            sampling,
            seed: self.seed,
            use_bit: !self.no_bit,
        }
    }
}

#[derive(Args)]
struct ReportOutput {
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include the tile-load grid
    #[arg(long)]
    tiles: bool,
}

#[derive(Args)]
struct PartitionArgs {
    #[command(flatten)]
    input: MatrixInput,
    #[arg(long, value_enum)]
    alg: Algorithm,
    #[command(flatten)]
    target: TargetArgs,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[command(flatten)]
    output: ReportOutput,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    input: MatrixInput,
    /// Cut vector, e.g. 0,3,5,6
    #[arg(long, value_delimiter = ',', required = true)]
    cuts: Vec<usize>,
    /// Separate column cuts
    #[arg(long, value_delimiter = ',')]
    col_cuts: Option<Vec<usize>>,
    #[command(flatten)]
    output: ReportOutput,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: MatrixInput,
    #[command(flatten)]
    target: TargetArgs,
    #[command(flatten)]
    output: ReportOutput,
}

#[derive(Args)]
struct BenchArgs {
    /// Matrix Market files
    #[arg(required = true)]
    matrices: Vec<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',')]
    alg: Option<Vec<Algorithm>>,
    /// Interval counts [default: 4,8,16,32]
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<usize>>,
    /// Absolute load bounds
    #[arg(long, value_delimiter = ',', conflicts_with = "load_div")]
    load: Option<Vec<u64>>,
    /// Load bounds as total/d [default: 4,9,16,25]
    #[arg(long, value_delimiter = ',')]
    load_div: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    #[arg(long, default_value_t = symrect::partitioners::DEFAULT_TAU)]
    tau: usize,
    #[arg(long, conflicts_with = "sparsify_eps")]
    sparsify_factor: Option<f64>,
    #[arg(long)]
    sparsify_eps: Option<f64>,
    #[arg(long)]
    no_bit: bool,
    #[arg(long)]
    quantize: bool,
    /// CSV destination instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProfileArgs {
    /// Bench CSV
    csv: PathBuf,
    #[arg(long, value_enum, default_value = "imbalance")]
    metric: Metric,
    /// CSV destination instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also draw the curves as SVG
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Toy,
    Rmat,
    Random,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// log2 of the dimension (rmat)
    #[arg(long, default_value_t = 10)]
    scale: u32,
    /// Dimension (random)
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Number of nonzeros (rmat, random)
    #[arg(long, default_value_t = 10_000)]
    nnz: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(input: &MatrixInput) -> Result<(String, SparseMatrix)> {
    let a = read_matrix_market(
        &input.matrix,
        ReadOptions {
            quantize: input.quantize,
        },
    )
    .with_context(|| format!("reading {}", input.matrix.display()))?;
    Ok((matrix_name(&input.matrix), a))
}

fn matrix_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn sink(out: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(report: &PartitionReport, out: &ReportOutput) -> Result<()> {
    let mut w = sink(out.out.as_ref())?;
    w.write_all(report.to_toml()?.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn threads() -> Result<usize> {
    match std::env::var("SYMRECT_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| UsageError(format!("SYMRECT_THREADS must be a positive integer, got '{v}'")).into()),
        Err(_) => Ok(1),
    }
}

fn bench(args: &BenchArgs) -> Result<()> {
    let matrices = args
        .matrices
        .iter()
        .map(|path| {
            load(&MatrixInput {
                matrix: path.clone(),
                quantize: args.quantize,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let defaults = Objectives::default();
    let loads = match (&args.load, &args.load_div) {
        (Some(z), _) => LoadGrid::Absolute(z.clone()),
        (None, Some(d)) => LoadGrid::Divisors(d.clone()),
        (None, None) => defaults.loads,
    };
    let sampling = match (args.sparsify_factor, args.sparsify_eps) {
        (Some(s), _) => Sampling::Factor(s),
        (None, Some(e)) => Sampling::Tolerance(e),
        (None, None) => Sampling::Off,
    };
    sampling.validate()?;
    let cfg = BenchConfig {
        algorithms: args.alg.clone().unwrap_or_else(|| Algorithm::ALL.to_vec()),
        objectives: Objectives {
            counts: args.p.clone().unwrap_or(defaults.counts),
            loads,
        },
        seeds: args.seeds.clone(),
        repetitions: args.reps.max(1),
        run: RunOptions {
            tau: args.tau,
            sampling,
            seed: 0,
            use_bit: !args.no_bit,
        },
        threads: threads()?,
    };
    let rows = cmd_bench(&matrices, &cfg)?;
    let failed = rows.iter().filter(|r| r.failed()).count();
    if failed > 0 {
        log::warn!("{failed} of {} runs failed", rows.len());
    }
    write_bench_csv(sink(args.out.as_ref())?, &rows)
}

fn profile(args: &ProfileArgs) -> Result<()> {
    let file = File::open(&args.csv).with_context(|| format!("opening {}", args.csv.display()))?;
    let rows = read_bench_csv(file)?;
    let curves = cmd_profile(&rows, args.metric)?;
    write_profile_csv(sink(args.out.as_ref())?, &curves)?;
    if let Some(path) = &args.svg {
        std::fs::write(path, profile_svg(&curves, args.metric))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn generate(args: &GenerateArgs) -> Result<()> {
    let a = match args.kind {
        Kind::Toy => symrect::gen::toy_matrix(),
        Kind::Rmat => symrect::gen::rmat(args.scale, args.nnz, args.seed),
        Kind::Random => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
            symrect::gen::random_matrix(&mut rng, args.n, args.nnz, 1)
        }
    };
    write_matrix_market(&a, sink(args.out.as_ref())?)?;
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Partition(args) => {
            let (name, a) = load(&args.input)?;
            let report = cmd_partition(
                &name,
                &a,
                args.alg,
                args.target.target(),
                &args.sampling.options(),
                args.output.tiles,
            )?;
            emit(&report, &args.output)
        }
        Command::Evaluate(args) => {
            let (name, a) = load(&args.input)?;
            let report = cmd_evaluate(&name, &a, &args.cuts, args.col_cuts.as_deref(), args.output.tiles)?;
            emit(&report, &args.output)
        }
        Command::Oracle(args) => {
            let (name, a) = load(&args.input)?;
            let report = cmd_oracle(
                &name,
                &a,
                args.target.target(),
                &OracleLimits::default(),
                args.output.tiles,
            )?;
            emit(&report, &args.output)
        }
        Command::Bench(args) => bench(&args),
        Command::Profile(args) => profile(&args),
        Command::Generate(args) => generate(&args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
