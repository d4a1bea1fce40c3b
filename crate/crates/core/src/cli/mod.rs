//! Command-line front end.
//!
//! Every subcommand writes its artifacts atomically into an output location
//! together with a manifest of the resolved configuration and input digests.

mod output;

use std::collections::HashMap;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{DegreeWeighting, RunConfig, RunConfigBuilder};
use crate::engine::{ConvergenceTrace, RankResult};
use crate::error::{Error, Result};
use crate::eval::{benchmark, Ordering};
use crate::graph::{
    ingest_edge_list, read_edge_list, split_by_resource, write_edge_list, EdgeRow, Mode, Network,
};
use crate::hits::{hits, hits_accelerated};
use crate::netanalysis::{
    degree_profile, generate_directed_scale_free, generate_er, generate_trade, grow, pa_test, Attachment,
    Direction, GrowthHistory, GrowthOptions,
};
use crate::pagerank::pagerank;
use crate::traderank::{blend_reserved, buyer_seller, traderank, BlendInput};

pub use output::{significant, write_atomic, Manifest, NumberFormat, SIGNIFICANT_DIGITS};

#[derive(Debug, Parser)]
#[command(name = "linkrank", version, about = "Link-structure ranking for weighted directed networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an edge list and write the normalized network(s).
    Ingest(IngestArgs),
    /// Write a synthetic network.
    Generate(GenerateArgs),
    /// Rank the vertices of a network.
    Rank(RankArgs),
    /// Degree distribution or preferential-attachment analysis.
    Analyze(AnalyzeArgs),
    /// Iteration counts and similarities over a directory of networks.
    Benchmark(BenchmarkArgs),
    /// Residual traces of several algorithms on one network.
    CompareConvergence(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Www,
    Trading,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Www => Mode::Www,
            ModeArg::Trading => Mode::Trading,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// key=value configuration file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    zeta: Option<f64>,
    /// Blend weight for reserved resources.
    #[arg(long = "c")]
    blend_c: Option<f64>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// volume | count
    #[arg(long)]
    degree_weighting: Option<String>,
    /// Print numbers with full precision instead of 6 significant digits.
    #[arg(long)]
    full_precision: bool,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig> {
        let mut b = RunConfig::builder();
        if let Some(path) = &self.config {
            b = apply_config_file(b, path)?;
        }
        if let Some(v) = self.alpha {
            b = b.alpha(v);
        }
        if let Some(v) = self.beta {
            b = b.beta(v);
        }
        if let Some(v) = self.zeta {
            b = b.zeta(v);
        }
        if let Some(v) = self.blend_c {
            b = b.blend_c(v);
        }
        if let Some(v) = self.tolerance {
            b = b.tolerance(v);
        }
        if let Some(v) = self.max_iterations {
            b = b.max_iterations(v);
        }
        if let Some(v) = self.seed {
            b = b.rng_seed(v);
        }
        if let Some(v) = &self.degree_weighting {
            b = b.degree_weighting(v.parse::<DegreeWeighting>()?);
        }
        b.build()
    }

    fn format(&self) -> NumberFormat {
        NumberFormat { full_precision: self.full_precision }
    }
}

fn apply_config_file(mut b: RunConfigBuilder, path: &Path) -> Result<RunConfigBuilder> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: i + 1,
            reason: format!("{}: expected key=value", path.display()),
        })?;
        b = b.set(k.trim(), v.trim())?;
    }
    Ok(b)
}

#[derive(Debug, Args)]
struct IngestArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "trading")]
    mode: ModeArg,
    /// Write one network per resource label.
    #[arg(long)]
    split_by_resource: bool,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Ba,
    Er,
    Trade,
    Crawl,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    n: usize,
    /// Links per new vertex (ba).
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Edge probability (er).
    #[arg(long)]
    p: Option<f64>,
    /// Number of links (trade).
    #[arg(long)]
    links: Option<usize>,
    /// Links per page (crawl).
    #[arg(long)]
    avg_degree: Option<f64>,
    /// Attach uniformly instead of preferentially (ba).
    #[arg(long)]
    uniform: bool,
    /// Emit both directions of every edge (ba).
    #[arg(long)]
    symmetric: bool,
    /// Also write growth snapshots every this many vertices (ba).
    #[arg(long)]
    snapshot_every: Option<usize>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Pagerank,
    Hits,
    HitsAccel,
    Traderank,
    BuyerSeller,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Pagerank => "pagerank",
            Algo::Hits => "hits",
            Algo::HitsAccel => "hits-accel",
            Algo::Traderank => "traderank",
            Algo::BuyerSeller => "buyer-seller",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Tab-separated table with a header row.
    Tsv,
    /// One JSON object per line.
    Jsonl,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    input: PathBuf,
    /// Defaults to www for pagerank and hits, trading otherwise.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Reserved-resource amounts, one `id amount` record per line (traderank).
    #[arg(long)]
    reserved: Option<PathBuf>,
    /// Only list vertices whose id contains this substring.
    #[arg(long)]
    query: Option<String>,
    /// Print the top K records to stdout.
    #[arg(long)]
    top: Option<usize>,
    /// Layout of the ranking files.
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    In,
    Out,
    Total,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Degree distribution of one network.
    #[arg(long, conflicts_with = "pa_test", required_unless_present = "pa_test")]
    degree_dist: bool,
    /// Growth exponent from a directory of snapshots (sorted by name).
    #[arg(long)]
    pa_test: bool,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "total")]
    direction: DirectionArg,
    #[arg(long, value_enum, default_value = "www")]
    mode: ModeArg,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct BenchmarkArgs {
    /// Directory of edge-list files, one dataset each.
    #[arg(long)]
    datasets: PathBuf,
    #[arg(long, value_enum, default_value = "trading")]
    mode: ModeArg,
    #[arg(long, default_value = "report.csv")]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Comma-separated: pagerank, hits, hits-accel, traderank.
    #[arg(long, value_delimiter = ',', default_value = "hits,hits-accel")]
    algos: Vec<Algo>,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "www")]
    mode: ModeArg,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

/// Failure tagged with the stage it happened in.
struct StageError {
    stage: &'static str,
    error: Error,
}

trait Stage<T> {
    fn stage(self, stage: &'static str) -> std::result::Result<T, StageError>;
}

impl<T> Stage<T> for Result<T> {
    fn stage(self, stage: &'static str) -> std::result::Result<T, StageError> {
        self.map_err(|error| StageError { stage, error })
    }
}

type CliResult = std::result::Result<(), StageError>;

/// Run the CLI on `args` (including the program name) and return the exit
/// status.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Ingest(a) => ingest_cmd(a),
        Command::Generate(a) => generate_cmd(a),
        Command::Rank(a) => rank_cmd(a),
        Command::Analyze(a) => analyze_cmd(a),
        Command::Benchmark(a) => benchmark_cmd(a),
        Command::CompareConvergence(a) => compare_cmd(a),
    };
    match outcome {
        Ok(()) => 0,
        Err(StageError { stage, error }) => {
            eprintln!("error: {stage}: {error}");
            1
        }
    }
}

fn read_rows(path: &Path) -> Result<Vec<EdgeRow>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_edge_list(BufReader::new(file)).map_err(|e| match e {
        Error::Parse { line, reason } => {
            Error::Parse { line, reason: format!("{}: {reason}", path.display()) }
        }
        other => other,
    })
}

fn load(path: &Path, mode: Mode) -> Result<Network> {
    ingest_edge_list(&read_rows(path)?, mode)
}

fn base_manifest(sub: &str, cfg: &RunConfig, fmt: NumberFormat) -> Manifest {
    let mut m = Manifest::new(sub);
    for (k, v) in cfg.entries() {
        m.setting(k, v);
    }
    m.setting("full_precision", fmt.full_precision);
    m
}

fn write_network(path: &Path, net: &Network) -> Result<()> {
    write_atomic(path, |w| write_edge_list(&net.to_rows(), w))
}

fn ingest_cmd(a: IngestArgs) -> CliResult {
    let cfg = a.common.resolve().stage("config")?;
    let fmt = a.common.format();
    let mut manifest = base_manifest("ingest", &cfg, fmt);
    manifest.setting("mode", format!("{:?}", a.mode).to_lowercase());
    manifest.setting("split_by_resource", a.split_by_resource);
    manifest.input(&a.input).stage("read input")?;
    let rows = read_rows(&a.input).stage("parse")?;

    let networks: Vec<(String, Network)> = if a.split_by_resource {
        split_by_resource(&rows).stage("split")?.into_iter().collect()
    } else {
        vec![("network".into(), ingest_edge_list(&rows, a.mode.into()).stage("ingest")?)]
    };
    for (name, net) in &networks {
        write_network(&a.out.join(format!("{name}.tsv")), net).stage("write")?;
    }
    write_atomic(&a.out.join("summary.tsv"), |w| {
        writeln!(w, "network\tvertices\tlinks\ttotal_weight")?;
        for (name, net) in &networks {
            let total: f64 = net.edges().iter().map(|e| e.weight).sum();
            writeln!(w, "{name}\t{}\t{}\t{}", net.vertex_count(), net.link_count(), fmt.format(total))?;
        }
        Ok(())
    })
    .stage("write")?;
    manifest.write(&a.out.join("manifest.txt")).stage("write")
}

fn generate_cmd(a: GenerateArgs) -> CliResult {
    let cfg = a.common.resolve().stage("config")?;
    let seed = cfg.rng_seed();
    let mut manifest = base_manifest("generate", &cfg, a.common.format());
    manifest.setting("model", format!("{:?}", a.model).to_lowercase());
    manifest.setting("n", a.n);

    let mut history: Option<GrowthHistory> = None;
    let net = match a.model {
        Model::Ba => {
            let mut opts = GrowthOptions::new(a.n, a.m, seed).symmetric(a.symmetric);
            if a.uniform {
                opts = opts.attachment(Attachment::Uniform);
            }
            if let Some(k) = a.snapshot_every {
                opts = opts.snapshot_every(k);
            }
            manifest.setting("m", a.m);
            manifest.setting("uniform", a.uniform);
            manifest.setting("symmetric", a.symmetric);
            let h = grow(&opts).stage("generate")?;
            let last = h.last().clone();
            if a.snapshot_every.is_some() {
                history = Some(h);
            }
            last
        }
        Model::Er => {
            let p = a.p.ok_or_else(|| Error::InvalidArgument("--p is required for er".into()));
            let p = p.stage("config")?;
            manifest.setting("p", p);
            generate_er(a.n, p, seed).stage("generate")?
        }
        Model::Trade => {
            let links = a.links.unwrap_or(a.n * a.n.saturating_sub(1).min(16));
            manifest.setting("links", links);
            generate_trade(a.n, links, seed).stage("generate")?
        }
        Model::Crawl => {
            let d = a.avg_degree.unwrap_or(10.0);
            manifest.setting("avg_degree", d);
            generate_directed_scale_free(a.n, d, seed).stage("generate")?
        }
    };
    write_network(&a.out.join("edges.tsv"), &net).stage("write")?;
    if let Some(h) = history {
        let width = h.snapshots.len().to_string().len().max(3);
        for (i, snap) in h.snapshots.iter().enumerate() {
            let path = a.out.join("snapshots").join(format!("snapshot_{i:0width$}.tsv"));
            write_network(&path, snap).stage("write")?;
        }
    }
    manifest.write(&a.out.join("manifest.txt")).stage("write")
}

fn write_ranking(
    path: &Path,
    net: &Network,
    scores: &[f64],
    query: Option<&str>,
    fmt: NumberFormat,
    layout: Format,
) -> Result<()> {
    let order = Ordering::from_scores(scores);
    write_atomic(path, |w| {
        if layout == Format::Tsv {
            writeln!(w, "id\tscore\trank")?;
        }
        for v in order.descending() {
            let id = &net.ids()[v];
            if query.is_some_and(|q| !id.contains(q)) {
                continue;
            }
            let score = fmt.format(scores[v]);
            match layout {
                Format::Tsv => writeln!(w, "{id}\t{score}\t{}", order.ranks[v])?,
                Format::Jsonl => {
                    // the rounded value, so both layouts carry the same digits
                    let rounded: f64 = score.parse().unwrap_or(scores[v]);
                    let record = serde_json::json!({ "id": id, "score": rounded, "rank": order.ranks[v] });
                    writeln!(w, "{record}")?;
                }
            }
        }
        Ok(())
    })
}

fn write_trace(path: &Path, trace: &ConvergenceTrace) -> Result<()> {
    write_atomic(path, |w| trace.write_plot_data(w))
}

fn print_top(label: &str, net: &Network, scores: &[f64], query: Option<&str>, k: usize, fmt: NumberFormat) {
    println!("# {label}");
    let order = Ordering::from_scores(scores);
    order
        .descending()
        .into_iter()
        .filter(|&v| query.is_none_or(|q| net.ids()[v].contains(q)))
        .take(k)
        .for_each(|v| println!("{}\t{}\t{}", order.ranks[v], net.ids()[v], fmt.format(scores[v])));
}

fn read_reserved(path: &Path, net: &Network) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut u = vec![0.0; net.vertex_count()];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = if line.contains('\t') {
            line.split('\t').collect()
        } else if line.contains(',') {
            line.split(',').collect()
        } else {
            line.split_whitespace().collect()
        };
        let parse_err =
            |reason: String| Error::Parse { line: i + 1, reason: format!("{}: {reason}", path.display()) };
        if fields.len() != 2 {
            return Err(parse_err(format!("expected `id amount`, found {} fields", fields.len())));
        }
        let id = fields[0].trim();
        let amount: f64 = fields[1]
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("amount `{}` is not a number", fields[1].trim())))?;
        let v = net.index_of(id).ok_or_else(|| parse_err(format!("unknown agent `{id}`")))?;
        u[v] += amount;
    }
    Ok(u)
}

fn rank_cmd(a: RankArgs) -> CliResult {
    let cfg = a.common.resolve().stage("config")?;
    let fmt = a.common.format();
    let mode = a.mode.map(Mode::from).unwrap_or(match a.algo {
        Algo::Pagerank | Algo::Hits | Algo::HitsAccel => Mode::Www,
        Algo::Traderank | Algo::BuyerSeller => Mode::Trading,
    });
    let mut manifest = base_manifest("rank", &cfg, fmt);
    manifest.setting("algo", a.algo.name());
    manifest.setting("mode", format!("{mode:?}").to_lowercase());
    manifest.setting("format", format!("{:?}", a.format).to_lowercase());
    if let Some(q) = &a.query {
        manifest.setting("query", q);
    }
    manifest.input(&a.input).stage("read input")?;
    let net = load(&a.input, mode).stage("ingest")?;
    let query = a.query.as_deref();

    let mut outputs: Vec<(String, RankResult)> = Vec::new();
    match a.algo {
        Algo::Pagerank => outputs.push(("pagerank".into(), pagerank(&net, &cfg).stage("rank")?)),
        Algo::Hits | Algo::HitsAccel => {
            let r = if a.algo == Algo::Hits { hits(&net, &cfg) } else { hits_accelerated(&net, &cfg) };
            let r = r.stage("rank")?;
            outputs.push((format!("{}_authority", a.algo.name()), r.authority));
            outputs.push((format!("{}_hub", a.algo.name()), r.hub));
        }
        Algo::Traderank => {
            let mut r = traderank(&net, &cfg).stage("rank")?;
            if let Some(path) = &a.reserved {
                manifest.input(path).stage("read reserved")?;
                let u = read_reserved(path, &net).stage("read reserved")?;
                let blend = BlendInput::new(u, cfg.blend_c()).stage("blend")?;
                r = blend_reserved(&r, &blend).stage("blend")?;
            }
            outputs.push(("traderank".into(), r));
        }
        Algo::BuyerSeller => {
            let (b, s) = buyer_seller(&net, &cfg).stage("rank")?;
            outputs.push(("buyer".into(), b));
            outputs.push(("seller".into(), s));
        }
    }

    for (name, r) in &outputs {
        let ext = match a.format {
            Format::Tsv => "tsv",
            Format::Jsonl => "jsonl",
        };
        write_ranking(&a.out.join(format!("{name}.{ext}")), &net, &r.scores, query, fmt, a.format)
            .stage("write")?;
        write_trace(&a.out.join(format!("{name}_trace.tsv")), &r.trace).stage("write")?;
        if !r.converged {
            eprintln!("warning: {name} did not converge within {} iterations", r.iterations);
        }
        if let Some(k) = a.top {
            print_top(name, &net, &r.scores, query, k, fmt);
        }
    }
    manifest.write(&a.out.join("manifest.txt")).stage("write")
}

fn snapshot_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && !p.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.')))
        .collect();
    files.sort();
    Ok(files)
}

fn analyze_cmd(a: AnalyzeArgs) -> CliResult {
    let cfg = a.common.resolve().stage("config")?;
    let fmt = a.common.format();
    let mut manifest = base_manifest("analyze", &cfg, fmt);
    if a.pa_test {
        manifest.setting("analysis", "pa-test");
        let files = snapshot_files(&a.input).stage("read input")?;
        let mut snapshots = Vec::with_capacity(files.len());
        for f in &files {
            manifest.input(f).stage("read input")?;
            snapshots.push(load(f, a.mode.into()).stage("ingest")?);
        }
        let t = pa_test(&GrowthHistory { snapshots }).stage("pa-test")?;
        write_atomic(&a.out.join("pa_test.tsv"), |w| {
            writeln!(w, "k\tdelta_k")?;
            for (k, dk) in &t.bins {
                writeln!(w, "{}\t{}", fmt.format(*k), fmt.format(*dk))?;
            }
            Ok(())
        })
        .stage("write")?;
        write_atomic(&a.out.join("pa_fit.txt"), |w| writeln!(w, "v={}", fmt.format(t.v))).stage("write")?;
        println!("v={}", fmt.format(t.v));
    } else {
        let direction = match a.direction {
            DirectionArg::In => Direction::In,
            DirectionArg::Out => Direction::Out,
            DirectionArg::Total => Direction::Total,
        };
        manifest.setting("analysis", "degree-dist");
        manifest.setting("direction", format!("{direction:?}").to_lowercase());
        manifest.input(&a.input).stage("read input")?;
        let net = load(&a.input, a.mode.into()).stage("ingest")?;
        let p = degree_profile(&net, direction).stage("degree-dist")?;
        write_atomic(&a.out.join("degree_dist.tsv"), |w| p.write_plot_data(w, |x| fmt.format(x)))
            .stage("write")?;
        let (pl_ll, pl_gamma) = p.power_law_log_likelihood(1);
        write_atomic(&a.out.join("degree_fit.txt"), |w| {
            writeln!(w, "mean_degree={}", fmt.format(p.mean_degree))?;
            match &p.power_law {
                Some(f) => {
                    writeln!(w, "gamma={}", fmt.format(f.gamma))?;
                    writeln!(w, "fit_range={}..{}", f.k_min, f.k_max)?;
                }
                None => writeln!(w, "gamma=undefined")?,
            }
            writeln!(w, "poisson_mean={}", fmt.format(p.poisson_mean))?;
            writeln!(w, "poisson_loglik={}", fmt.format(p.poisson_log_likelihood(1)))?;
            writeln!(w, "power_law_loglik={}", fmt.format(pl_ll))?;
            writeln!(w, "power_law_mle_gamma={}", fmt.format(pl_gamma))
        })
        .stage("write")?;
    }
    manifest.write(&a.out.join("manifest.txt")).stage("write")
}

fn benchmark_cmd(a: BenchmarkArgs) -> CliResult {
    let cfg = a.common.resolve().stage("config")?;
    let fmt = a.common.format();
    let mut manifest = base_manifest("benchmark", &cfg, fmt);
    manifest.setting("mode", format!("{:?}", a.mode).to_lowercase());
    let files = snapshot_files(&a.datasets).stage("read datasets")?;
    if files.is_empty() {
        return Err(Error::InvalidArgument(format!("no datasets in {}", a.datasets.display())))
            .stage("read datasets");
    }
    let mut datasets = Vec::with_capacity(files.len());
    for f in &files {
        manifest.input(f).stage("read datasets")?;
        let name =
            f.file_stem().map_or_else(|| f.display().to_string(), |s| s.to_string_lossy().into_owned());
        datasets.push((name, load(f, a.mode.into()).stage("ingest")?));
    }
    let report = benchmark(&datasets, &cfg);
    write_atomic(&a.out, |w| report.write_csv(w, |x| fmt.format(x))).stage("write")?;
    let mut manifest_path = a.out.clone().into_os_string();
    manifest_path.push(".manifest");
    manifest.write(Path::new(&manifest_path)).stage("write")
}

fn compare_cmd(a: CompareArgs) -> CliResult {
    let cfg = a.common.resolve().stage("config")?;
    let fmt = a.common.format();
    let mut manifest = base_manifest("compare-convergence", &cfg, fmt);
    let names: Vec<&str> = a.algos.iter().map(|x| x.name()).collect();
    manifest.setting("algos", names.join(","));
    manifest.input(&a.input).stage("read input")?;
    let net = load(&a.input, a.mode.into()).stage("ingest")?;

    let mut traces: Vec<(&str, ConvergenceTrace)> = Vec::new();
    let mut seen = HashMap::new();
    for algo in &a.algos {
        if seen.insert(algo.name(), ()).is_some() {
            continue;
        }
        let trace = match algo {
            Algo::Pagerank => pagerank(&net, &cfg).map(|r| r.trace),
            Algo::Hits => hits(&net, &cfg).map(|r| r.authority.trace),
            Algo::HitsAccel => hits_accelerated(&net, &cfg).map(|r| r.authority.trace),
            Algo::Traderank => traderank(&net, &cfg).map(|r| r.trace),
            Algo::BuyerSeller => {
                Err(Error::InvalidArgument("buyer-seller has two traces; compare traderank instead".into()))
            }
        }
        .stage("rank")?;
        traces.push((algo.name(), trace));
    }
    let rows = traces.iter().map(|(_, t)| t.residuals.len()).max().unwrap_or(0);
    write_atomic(&a.out.join("convergence.tsv"), |w| {
        writeln!(w, "iteration\t{}", traces.iter().map(|t| t.0).collect::<Vec<_>>().join("\t"))?;
        for k in 0..rows {
            let cols: Vec<String> = traces
                .iter()
                .map(|(_, t)| t.residuals.get(k).map_or_else(String::new, |r| format!("{r:e}")))
                .collect();
            writeln!(w, "{}\t{}", k + 1, cols.join("\t"))?;
        }
        Ok(())
    })
    .stage("write")?;
    for (name, t) in &traces {
        println!(
            "{name}\t{} iterations\tfinal residual {}",
            t.residuals.len(),
            fmt.format(t.last().unwrap_or(f64::NAN))
        );
    }
    manifest.write(&a.out.join("manifest.txt")).stage("write")
}
