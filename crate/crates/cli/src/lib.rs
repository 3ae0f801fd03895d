//! Command implementations behind the `mfnrel` binary.
//!
//! Each command writes CSV to the supplied writer. Exit codes: 0 success,
//! 2 usage, parse or I/O error, 3 resource limit, 4 invariant violation.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mfnrel::benchlab::generator::{derive_query, generate_instance, suite_seed, GenConfig};
use mfnrel::benchlab::profile::{performance_profile, DEFAULT_GRID_POINTS};
use mfnrel::benchlab::timing::{benchmark_instance, BenchInstance, TimingProtocol, TimingRecord};
use mfnrel::reliability::{DEFAULT_IE_LIMIT, DEFAULT_STATE_LIMIT};
use mfnrel::scalar::format_fixed;
use mfnrel::{
    brute_force_reliability, parse_instance, reliability, solve, write_instance, Algorithm, Instance, Probability,
    Query, Rational, SolutionSet,
};
use rayon::prelude::*;

pub const DEFAULT_SEED: u64 = 2022;
pub const SEED_ENV: &str = "MFNREL_SEED";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] mfnrel::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(mfnrel::Error::ResourceLimit { .. } | mfnrel::Error::Generation(_)) => 3,
            CliError::Lib(mfnrel::Error::Correctness(_)) => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Lib(e.into())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "mfnrel", version, about = "Time- and budget-constrained reliability of multistate flow networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the minimal paths of an instance
    Mps {
        file: PathBuf,
    },
    /// Minimal state vectors meeting the demand, time and budget limits
    Solve {
        file: PathBuf,
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, default_value = "a1")]
        algorithm: Algorithm,
    },
    /// Reliability via the minimal vectors and inclusion-exclusion
    Rel {
        file: PathBuf,
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, default_value = "a1")]
        algorithm: Algorithm,
        /// Evaluate in exact rational arithmetic
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = DEFAULT_IE_LIMIT)]
        ie_limit: usize,
    },
    /// Reliability by enumerating every state vector
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
        state_limit: u64,
    },
    /// Generate random benchmark instances
    Gen(GenArgs),
    /// Time the algorithms over a directory of instances
    Bench(BenchArgs),
    /// Performance profile from a bench times file
    Profile {
        #[arg(long)]
        times: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        points: usize,
    },
}

/// Falls back to the instance's `query` line for any flag not given.
#[derive(Debug, Clone, Copy, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long = "T")]
    pub t: Option<u64>,
    #[arg(long)]
    pub b: Option<u64>,
}

impl QueryArgs {
    pub fn resolve(&self, file_query: Option<Query>) -> CliResult<Query> {
        let pick = |flag: Option<u64>, from_file: Option<u64>, name: &str| {
            flag.or(from_file).ok_or_else(|| CliError::Usage(format!("--{name} is required (no query line in file)")))
        };
        let q = Query {
            d: pick(self.d, file_query.map(|q| q.d), "d")?,
            t: pick(self.t, file_query.map(|q| q.t), "T")?,
            b: pick(self.b, file_query.map(|q| q.b), "b")?,
        };
        Ok(Query::new(q.d, q.t, q.b)?)
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Node count, or an inclusive range such as `11..30`
    #[arg(long, value_parser = parse_node_range)]
    pub n: RangeInclusive<usize>,
    /// Instances per node count
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Base seed; defaults to $MFNREL_SEED, then 2022
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub dir: PathBuf,
    /// Comma-separated algorithm list
    #[arg(long, value_delimiter = ',', default_value = "a1,a2")]
    pub algorithms: Vec<Algorithm>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; each instance is timed on one worker
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
}

pub fn parse_node_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid node count `{t}`"));
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => num(s)?..=num(s)?,
    };
    if range.is_empty() {
        return Err(format!("empty node range `{s}`"));
    }
    Ok(range)
}

pub fn base_seed(flag: Option<u64>) -> CliResult<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_ENV}=`{v}` is not an integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn read_instance<P: Probability>(path: &Path) -> CliResult<Instance<P>> {
    let text = fs::read_to_string(path).map_err(|e| mfnrel::Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| match e {
        mfnrel::Error::Parse { line, message } => {
            CliError::Usage(format!("{}:{line}: {message}", path.display()))
        }
        other => other.into(),
    })
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Mps { file } => cmd_mps(&file, out),
        Command::Solve { file, query, algorithm } => cmd_solve(&file, query, algorithm, out),
        Command::Rel { file, query, algorithm, exact, ie_limit } => {
            if exact {
                cmd_rel::<Rational>(&file, query, algorithm, ie_limit, out)
            } else {
                cmd_rel::<f64>(&file, query, algorithm, ie_limit, out)
            }
        }
        Command::Oracle { file, query, exact, state_limit } => {
            if exact {
                cmd_oracle::<Rational>(&file, query, state_limit, out)
            } else {
                cmd_oracle::<f64>(&file, query, state_limit, out)
            }
        }
        Command::Gen(args) => cmd_gen(&args, out),
        Command::Bench(args) => cmd_bench(&args, out),
        Command::Profile { times, out: dest, points } => cmd_profile(&times, dest.as_deref(), points, out),
    }
}

pub fn cmd_mps(file: &Path, out: &mut dyn Write) -> CliResult {
    let inst: Instance = read_instance(file)?;
    let cat = inst.catalog()?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["mp", "arcs", "lp", "cp", "kp_max"])?;
    for (j, p) in cat.paths().iter().enumerate() {
        w.write_record([
            (j + 1).to_string(),
            join_ids(p.arc_ids()),
            p.lp().to_string(),
            p.cp().to_string(),
            p.kp_max().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn counter_fields(s: &SolutionSet) -> [String; 6] {
    let c = &s.counters;
    [c.q, c.k, c.sigma, c.removed_cost, c.removed_time, c.removed_capacity].map(|v| v.to_string())
}

const COUNTER_HEADER: [&str; 6] = ["q", "k", "sigma", "removed_cost", "removed_time", "removed_capacity"];

pub fn cmd_solve(file: &Path, qa: QueryArgs, algorithm: Algorithm, out: &mut dyn Write) -> CliResult {
    let inst: Instance = read_instance(file)?;
    let query = qa.resolve(inst.query)?;
    let cat = inst.catalog()?;
    let set = solve(&inst.network, &cat, &query, algorithm);

    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(COUNTER_HEADER)?;
    w.write_record(counter_fields(&set))?;
    w.flush()?;
    drop(w);
    writeln!(out)?;

    let m = inst.network.arc_count();
    let mut w = csv::Writer::from_writer(&mut *out);
    let header: Vec<String> =
        ["mp".to_string(), "alpha".to_string()].into_iter().chain((1..=m).map(|i| format!("x_{i}"))).collect();
    w.write_record(&header)?;
    for s in &set.solutions {
        let row: Vec<String> =
            [s.mp.to_string(), s.level.to_string()].into_iter().chain(s.vector.iter().map(|v| v.to_string())).collect();
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_rel<P: Probability>(
    file: &Path,
    qa: QueryArgs,
    algorithm: Algorithm,
    ie_limit: usize,
    out: &mut dyn Write,
) -> CliResult {
    let inst: Instance<P> = read_instance(file)?;
    let query = qa.resolve(inst.query)?;
    let cat = inst.catalog()?;
    let report = reliability(&inst.network, &cat, &query, algorithm, ie_limit)?;
    let mut w = csv::Writer::from_writer(out);
    let header: Vec<&str> = ["reliability"].into_iter().chain(COUNTER_HEADER).chain(["ie_terms"]).collect();
    w.write_record(&header)?;
    let row: Vec<String> = [format_fixed(&report.reliability, 12)]
        .into_iter()
        .chain(counter_fields(&report.solutions))
        .chain([report.ie_terms.to_string()])
        .collect();
    w.write_record(&row)?;
    w.flush()?;
    Ok(())
}

pub fn cmd_oracle<P: Probability>(file: &Path, qa: QueryArgs, state_limit: u64, out: &mut dyn Write) -> CliResult {
    let inst: Instance<P> = read_instance(file)?;
    let query = qa.resolve(inst.query)?;
    let cat = inst.catalog()?;
    let res = brute_force_reliability(&inst.network, &cat, &query, state_limit)?;

    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(["reliability", "states", "feasible_states", "omega_min"])?;
    w.write_record([
        format_fixed(&res.probability, 12),
        res.states.to_string(),
        res.feasible_states.to_string(),
        res.omega_min.len().to_string(),
    ])?;
    w.flush()?;
    drop(w);
    writeln!(out)?;

    let m = inst.network.arc_count();
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record((1..=m).map(|i| format!("x_{i}")))?;
    for v in &res.omega_min {
        w.write_record(v.iter().map(|x| x.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> CliResult {
    let base = base_seed(args.seed)?;
    fs::create_dir_all(&args.out)?;
    let mut written = 0usize;
    for n in args.n.clone() {
        for k in 0..args.count {
            let cfg = GenConfig::new(n, suite_seed(base, n, k))?;
            let g = generate_instance::<f64>(&cfg)?;
            let mut inst = Instance::new(g.network);
            inst.query = Some(g.query);
            let path = args.out.join(format!("n{n}_{k:02}.txt"));
            let body = format!("# n = {n}, seed = {}, q = {}\n{}", cfg.seed, g.catalog.q(), write_instance(&inst));
            fs::write(&path, body)?;
            written += 1;
        }
    }
    writeln!(out, "wrote {written} instances to {}", args.out.display())?;
    Ok(())
}

fn load_bench_dir(dir: &Path) -> CliResult<Vec<BenchInstance>> {
    let entries = fs::read_dir(dir).map_err(|e| mfnrel::Error::Io(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::Usage(format!("no .txt instances in {}", dir.display())));
    }
    paths
        .iter()
        .map(|p| {
            let inst: Instance = read_instance(p)?;
            let catalog = inst.catalog()?;
            let query = match inst.query {
                Some(q) => q,
                None => derive_query(&catalog)?,
            };
            Ok(BenchInstance {
                name: p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
                group: inst.network.node_count(),
                network: inst.network,
                catalog,
                query,
            })
        })
        .collect()
}

fn write_times(records: &[TimingRecord], out: &mut dyn Write) -> CliResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["instance", "algorithm", "seconds", "sigma", "k", "q"])?;
    for r in records {
        w.write_record([
            r.instance.clone(),
            r.algorithm.to_string(),
            format!("{:e}", r.seconds),
            r.sigma.to_string(),
            r.k.to_string(),
            r.q.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> CliResult {
    if args.algorithms.is_empty() {
        return Err(CliError::Usage("--algorithms must name at least one algorithm".into()));
    }
    let instances = load_bench_dir(&args.dir)?;
    let protocol = TimingProtocol { repetitions: args.reps.max(1), ..TimingProtocol::default() };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let per_instance: Vec<mfnrel::Result<Vec<TimingRecord>>> = pool.install(|| {
        instances.par_iter().map(|inst| benchmark_instance(inst, &args.algorithms, &protocol)).collect()
    });
    let mut records = Vec::with_capacity(instances.len() * args.algorithms.len());
    for r in per_instance {
        records.extend(r?);
    }
    match &args.out {
        Some(path) => write_times(&records, &mut fs::File::create(path)?),
        None => write_times(&records, out),
    }
}

/// Reads a bench times file into `(labels, times[instance][algorithm])`.
pub fn read_times(path: &Path) -> CliResult<(Vec<String>, Vec<Vec<f64>>)> {
    let file = fs::File::open(path).map_err(|e| mfnrel::Error::Io(format!("{}: {e}", path.display())))?;
    let mut rdr = csv::Reader::from_reader(file);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| CliError::Usage(format!("times file lacks `{name}` column")))
    };
    let (ci, ca, cs) = (col("instance")?, col("algorithm")?, col("seconds")?);

    let mut labels: Vec<String> = Vec::new();
    let mut order: Vec<String> = Vec::new();
    let mut table: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec?;
        let (inst, alg, secs) = (&rec[ci], &rec[ca], &rec[cs]);
        let secs: f64 = secs.parse().map_err(|_| CliError::Usage(format!("invalid seconds `{secs}`")))?;
        if !labels.iter().any(|l| l == alg) {
            labels.push(alg.to_string());
        }
        if !table.contains_key(inst) {
            order.push(inst.to_string());
        }
        table.entry(inst.to_string()).or_default().insert(alg.to_string(), secs);
    }
    let times = order
        .iter()
        .map(|inst| {
            let row = &table[inst];
            labels
                .iter()
                .map(|l| row.get(l).copied().ok_or_else(|| CliError::Usage(format!("instance {inst} has no time for {l}"))))
                .collect()
        })
        .collect::<CliResult<Vec<Vec<f64>>>>()?;
    Ok((labels, times))
}

pub fn cmd_profile(times: &Path, dest: Option<&Path>, points: usize, out: &mut dyn Write) -> CliResult {
    let (labels, matrix) = read_times(times)?;
    let prof = performance_profile(&matrix, &labels, points)?;
    let emit = |sink: &mut dyn Write| -> CliResult {
        let mut w = csv::Writer::from_writer(sink);
        w.write_record(["algorithm", "tau", "pr"])?;
        for (j, label) in prof.labels.iter().enumerate() {
            for (tau, pr) in prof.taus.iter().zip(&prof.curves[j]) {
                w.write_record([label.clone(), tau.to_string(), pr.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    };
    match dest {
        Some(path) => emit(&mut fs::File::create(path)?),
        None => emit(out),
    }
}
