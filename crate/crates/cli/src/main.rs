//! `rainbow-embed` — command-line front end for bounded edge colorings,
//! local-lemma certificates, randomized colored embedding, and the extremal
//! constructions that show the thresholds are tight.
//!
//! Conventions shared by every subcommand:
//!
//! * results are JSON on stdout (or `--output FILE`); diagnostics go to
//!   stderr;
//! * document inputs read a file path, with `-` (or an omitted flag where
//!   noted) meaning stdin, so subcommands compose into pipelines;
//! * every randomized subcommand echoes its 64-bit seed in the output; a
//!   missing `--seed` falls back to `RAINBOW_EMBED_SEED`, then to a fresh
//!   random seed;
//! * exit codes: 0 success / affirmative answer, 2 honest negative answer
//!   (a failed certificate, an exhausted embedder, no copy, no transversal,
//!   a rejected embedding, a dependency violation), 3 degenerate or
//!   unsupported inputs, 64 usage errors, 74 I/O or malformed-document
//!   errors.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Mutex;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use rainbow_embed::certify::{
    certify, graph_threshold_k, hyper_threshold_k, ColorMode, EventFamilySpec, FamilyShape,
    GraphFamily, HyperFamily,
};
use rainbow_embed::construct::{
    block_coloring, design, fan_coloring, first_ell_coloring, plane_incidence_pattern,
    plane_pattern, projective_plane, tree_pattern, truncated_tree_pattern,
};
use rainbow_embed::embed::{
    default_budget, embed, embed_attempt, AttemptOutcome, EmbedConfig, EmbedOutcome, EmbedStats,
    ScanOrder,
};
use rainbow_embed::io::{
    embedding_images_from_json, embedding_to_json, host_from_text, host_to_text, CertificateDoc, HostDoc,
    PatternDoc,
};
use rainbow_embed::negdep::{
    all_single_pair_events, verify_negative_dependency, CanonicalEvent, InjectionSpace,
};
use rainbow_embed::oracle::{exists_colored_copy, validate_images};
use rainbow_embed::{BoundMode, ColoredHost, Error, HostShape, LatinSquare, Pattern};

const SEED_ENV: &str = "RAINBOW_EMBED_SEED";

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

/// A command that could not produce an answer, mapped to its exit code.
enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

/// Library errors are domain errors (exit 3), except malformed input
/// documents, which count as I/O (exit 74).
fn lib(e: Error) -> Failure {
    match e {
        Error::Parse(msg) => Failure::Io(msg),
        other => Failure::Domain(other),
    }
}

type CmdResult = Result<u8, Failure>;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code as i32);
        }
    };
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            EXIT_DOMAIN
        }
        Err(Failure::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            EXIT_IO
        }
    };
    std::process::exit(code as i32);
}

#[derive(Parser)]
#[command(
    name = "rainbow-embed",
    version,
    about = "Bounded edge colorings: measurement, local-lemma certificates, \
             seeded colored embedding, exhaustive oracles, and extremal \
             constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random k-bounded edge coloring of a complete host.
    GenHost(GenHostArgs),
    /// Measure the local and global boundedness of a coloring.
    Measure(MeasureArgs),
    /// Evaluate the exact local-lemma certificate for an event family.
    Certify(CertifyArgs),
    /// Print the certified boundedness threshold k for a theorem family.
    Threshold(ThresholdArgs),
    /// Search for a properly colored or rainbow embedding by resampling.
    Embed(EmbedArgs),
    /// Exhaustively decide whether any colored copy exists.
    Oracle(OracleArgs),
    /// Validate an embedding against its pattern and host.
    Verify(VerifyArgs),
    /// Emit a deterministic pattern or coloring.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Check the negative-dependency inequality on a small injection space.
    VerifyNegdep(VerifyNegdepArgs),
    /// Latin-square utilities.
    #[command(subcommand)]
    Latin(LatinCmd),
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::GenHost(args) => run_gen_host(args),
        Command::Measure(args) => run_measure(args),
        Command::Certify(args) => run_certify(args),
        Command::Threshold(args) => run_threshold(args),
        Command::Embed(args) => run_embed(args),
        Command::Oracle(args) => run_oracle(args),
        Command::Verify(args) => run_verify(args),
        Command::Construct(cmd) => run_construct(cmd),
        Command::VerifyNegdep(args) => run_verify_negdep(args),
        Command::Latin(cmd) => run_latin(cmd),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShapeKind {
    Multipartite,
    Hypergraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Proper,
    Rainbow,
}

impl From<ModeArg> for ColorMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Proper => ColorMode::Proper,
            ModeArg::Rainbow => ColorMode::Rainbow,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundArg {
    Local,
    Global,
}

impl From<BoundArg> for BoundMode {
    fn from(b: BoundArg) -> Self {
        match b {
            BoundArg::Local => BoundMode::Local,
            BoundArg::Global => BoundMode::Global,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanArg {
    FirstFound,
    Random,
}

impl From<ScanArg> for ScanOrder {
    fn from(s: ScanArg) -> Self {
        match s {
            ScanArg::FirstFound => ScanOrder::FirstFound,
            ScanArg::Random => ScanOrder::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    /// Properly colored copies in K_{m(x)n} under local boundedness.
    Proper,
    /// Rainbow copies in K_{m(x)n} under global boundedness.
    Rainbow,
    /// Properly colored copies in K_n^(r) under local boundedness.
    HyperProper,
    /// Rainbow copies in K_n^(r) under global boundedness.
    HyperRainbow,
}

/// Reads a document from a file, with `-` (or an omitted path) meaning
/// stdin.
fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Io(format!("invalid {what} JSON: {e}")))
}

fn write_output(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(p) if p.as_os_str() != "-" => {
            fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        _ => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}

fn emit<T: Serialize>(value: &T, output: Option<&PathBuf>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("output types serialize");
    text.push('\n');
    write_output(&text, output)
}

/// `--seed`, then `RAINBOW_EMBED_SEED`, then a fresh random seed.
fn resolve_seed(cli_seed: Option<u64>) -> Result<u64, Failure> {
    if let Some(seed) = cli_seed {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            Failure::Usage(format!(
                "{SEED_ENV} must be an unsigned 64-bit integer, got {text:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(rand::random()),
        Err(e) => Err(Failure::Usage(format!("{SEED_ENV}: {e}"))),
    }
}

fn require<T>(value: Option<T>, flag: &str, context: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required {context}")))
}

fn build_shape(
    kind: ShapeKind,
    m: Option<u32>,
    n: Option<u32>,
    r: Option<u32>,
) -> Result<HostShape, Failure> {
    let n = require(n, "n", "for every host shape")?;
    match kind {
        ShapeKind::Multipartite => {
            let m = require(m, "m", "for multipartite hosts")?;
            if r.is_some() {
                return Err(Failure::Usage(
                    "--r only applies to hypergraph hosts".into(),
                ));
            }
            Ok(HostShape::Multipartite { m, n })
        }
        ShapeKind::Hypergraph => {
            let r = require(r, "r", "for hypergraph hosts")?;
            if m.is_some() {
                return Err(Failure::Usage(
                    "--m only applies to multipartite hosts".into(),
                ));
            }
            Ok(HostShape::Hypergraph { n, r })
        }
    }
}

fn read_pattern(path: &PathBuf) -> Result<Pattern, Failure> {
    let doc: PatternDoc = parse_json(&read_input(Some(path))?, "pattern")?;
    doc.into_pattern().map_err(lib)
}

fn read_host(path: &PathBuf) -> Result<ColoredHost, Failure> {
    let doc: HostDoc = parse_json(&read_input(Some(path))?, "host")?;
    doc.into_host().map_err(lib)
}

/// At most one `-` among document inputs: otherwise they would race on
/// stdin.
fn at_most_one_stdin(paths: &[&PathBuf]) -> Result<(), Failure> {
    if paths.iter().filter(|p| p.as_os_str() == "-").count() > 1 {
        return Err(Failure::Usage(
            "at most one document input may read stdin (\"-\")".into(),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// gen-host
// ---------------------------------------------------------------------------

#[derive(Args)]
struct GenHostArgs {
    /// Host kind.
    #[arg(long, value_enum)]
    shape: ShapeKind,
    /// Number of parts (multipartite only).
    #[arg(long)]
    m: Option<u32>,
    /// Part size (multipartite) or vertex count (hypergraph).
    #[arg(long)]
    n: Option<u32>,
    /// Edge uniformity (hypergraph only).
    #[arg(long)]
    r: Option<u32>,
    /// Boundedness target: every class (global) or star restriction (local)
    /// gets at most k edges.
    #[arg(long)]
    k: u64,
    /// Boundedness discipline of the generated coloring.
    #[arg(long, value_enum, default_value_t = BoundArg::Global)]
    mode: BoundArg,
    /// RNG seed (default: RAINBOW_EMBED_SEED, else fresh).
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the line-oriented text format instead of JSON.
    #[arg(long)]
    text: bool,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct SeededHostOut {
    seed: u64,
    #[serde(flatten)]
    host: HostDoc,
}

fn run_gen_host(args: GenHostArgs) -> CmdResult {
    let shape = build_shape(args.shape, args.m, args.n, args.r)?;
    let seed = resolve_seed(args.seed)?;
    let host = ColoredHost::random_bounded(shape, args.k, args.mode.into(), seed).map_err(lib)?;
    if args.text {
        let text = format!("# seed {seed}\n{}", host_to_text(&host));
        write_output(&text, args.output.as_ref())?;
    } else {
        let out = SeededHostOut { seed, host: HostDoc::from_host(&host) };
        emit(&out, args.output.as_ref())?;
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

#[derive(Args)]
struct MeasureArgs {
    /// Input coloring; omit or pass "-" to read stdin.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Parse the line-oriented text format (requires the shape flags).
    #[arg(long)]
    text: bool,
    /// Host kind of a text input.
    #[arg(long, value_enum)]
    shape: Option<ShapeKind>,
    /// Number of parts of a text input (multipartite only).
    #[arg(long)]
    m: Option<u32>,
    /// Part size or vertex count of a text input.
    #[arg(long)]
    n: Option<u32>,
    /// Edge uniformity of a text input (hypergraph only).
    #[arg(long)]
    r: Option<u32>,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn run_measure(args: MeasureArgs) -> CmdResult {
    let raw = read_input(args.input.as_ref())?;
    let host = if args.text {
        let kind = require(args.shape, "shape", "for text input")?;
        let shape = build_shape(kind, args.m, args.n, args.r)?;
        host_from_text(shape, &raw).map_err(lib)?
    } else {
        parse_json::<HostDoc>(&raw, "host")?.into_host().map_err(lib)?
    };
    emit(&host.measure_boundedness(), args.output.as_ref())?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// certify / threshold
// ---------------------------------------------------------------------------

#[derive(Args)]
struct CertifyArgs {
    /// Coloring discipline the certificate targets.
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// How the coloring is k-bounded (default: local for proper, global for
    /// rainbow).
    #[arg(long, value_enum)]
    bound: Option<BoundArg>,
    /// Boundedness parameter of the coloring.
    #[arg(long)]
    k: u64,
    /// Number of host parts (graph families; documentation only).
    #[arg(long)]
    m: Option<u64>,
    /// Host part size (graphs) or vertex count (hypergraphs).
    #[arg(long)]
    n: u64,
    /// Maximum pattern degree (graph families).
    #[arg(long)]
    delta: Option<u64>,
    /// Edge uniformity (hypergraph families).
    #[arg(long)]
    r: Option<u64>,
    /// Linearity parameter: pattern edges pairwise share at most ell
    /// vertices (hypergraph families).
    #[arg(long)]
    ell: Option<u64>,
    /// Maximum vertex degree (hypergraph families).
    #[arg(long)]
    delta1: Option<u64>,
    /// Maximum ell-degree (hypergraph families).
    #[arg(long = "delta-ell")]
    delta_ell: Option<u64>,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn build_family(
    n: u64,
    m: Option<u64>,
    delta: Option<u64>,
    r: Option<u64>,
    ell: Option<u64>,
    delta1: Option<u64>,
    delta_ell: Option<u64>,
) -> Result<FamilyShape, Failure> {
    if let Some(r) = r {
        if delta.is_some() || m.is_some() {
            return Err(Failure::Usage(
                "--m/--delta describe graph families; hypergraph families take --delta1 and --delta-ell".into(),
            ));
        }
        Ok(FamilyShape::Hypergraph(HyperFamily {
            n,
            r,
            ell: require(ell, "ell", "for hypergraph families")?,
            delta1: require(delta1, "delta1", "for hypergraph families")?,
            delta_ell: require(delta_ell, "delta-ell", "for hypergraph families")?,
        }))
    } else {
        if ell.is_some() || delta1.is_some() || delta_ell.is_some() {
            return Err(Failure::Usage(
                "--ell/--delta1/--delta-ell require --r (hypergraph families)".into(),
            ));
        }
        Ok(FamilyShape::Graph(GraphFamily {
            m: m.unwrap_or(2),
            n,
            delta: require(delta, "delta", "for graph families")?,
        }))
    }
}

fn run_certify(args: CertifyArgs) -> CmdResult {
    let mode: ColorMode = args.mode.into();
    let bound = args.bound.map(BoundMode::from).unwrap_or(match mode {
        ColorMode::Proper => BoundMode::Local,
        ColorMode::Rainbow => BoundMode::Global,
    });
    let family = build_family(
        args.n, args.m, args.delta, args.r, args.ell, args.delta1, args.delta_ell,
    )?;
    let spec = EventFamilySpec { mode, bound, k: args.k, family };
    let cert = certify(&spec).map_err(lib)?;
    let doc = CertificateDoc::from_certificate(&cert);
    emit(&doc, args.output.as_ref())?;
    Ok(if cert.passes { EXIT_OK } else { EXIT_NEGATIVE })
}

#[derive(Args)]
struct ThresholdArgs {
    /// Which embedding theorem's threshold to evaluate.
    #[arg(long, value_enum)]
    theorem: TheoremArg,
    /// Host part size (graphs) or vertex count (hypergraphs).
    #[arg(long)]
    n: u64,
    /// Maximum pattern degree (graph theorems).
    #[arg(long)]
    delta: Option<u64>,
    /// Edge uniformity (hypergraph theorems).
    #[arg(long)]
    r: Option<u64>,
    /// Linearity parameter (hypergraph theorems).
    #[arg(long)]
    ell: Option<u64>,
    /// Maximum vertex degree (hypergraph theorems).
    #[arg(long)]
    delta1: Option<u64>,
    /// Maximum ell-degree (hypergraph theorems).
    #[arg(long = "delta-ell")]
    delta_ell: Option<u64>,
    /// Exact rational coefficient override "num/den" (hypergraph theorems).
    #[arg(long)]
    coefficient: Option<String>,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn run_threshold(args: ThresholdArgs) -> CmdResult {
    let k = match args.theorem {
        TheoremArg::Proper | TheoremArg::Rainbow => {
            if args.r.is_some()
                || args.ell.is_some()
                || args.delta1.is_some()
                || args.delta_ell.is_some()
                || args.coefficient.is_some()
            {
                return Err(Failure::Usage(
                    "graph theorems take only --n and --delta".into(),
                ));
            }
            let mode = match args.theorem {
                TheoremArg::Proper => ColorMode::Proper,
                _ => ColorMode::Rainbow,
            };
            let delta = require(args.delta, "delta", "for graph theorems")?;
            graph_threshold_k(mode, args.n, delta).map_err(lib)?
        }
        TheoremArg::HyperProper | TheoremArg::HyperRainbow => {
            if args.delta.is_some() {
                return Err(Failure::Usage(
                    "hypergraph theorems take --delta1/--delta-ell, not --delta".into(),
                ));
            }
            let mode = match args.theorem {
                TheoremArg::HyperProper => ColorMode::Proper,
                _ => ColorMode::Rainbow,
            };
            let coefficient = args
                .coefficient
                .as_deref()
                .map(|text| {
                    text.parse::<BigRational>().map_err(|e| {
                        Failure::Usage(format!("--coefficient must be \"num/den\": {e}"))
                    })
                })
                .transpose()?;
            hyper_threshold_k(
                mode,
                args.n,
                require(args.r, "r", "for hypergraph theorems")?,
                require(args.ell, "ell", "for hypergraph theorems")?,
                require(args.delta1, "delta1", "for hypergraph theorems")?,
                require(args.delta_ell, "delta-ell", "for hypergraph theorems")?,
                coefficient.as_ref(),
            )
            .map_err(lib)?
        }
    };
    write_output(&format!("{k}\n"), args.output.as_ref())?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// embed
// ---------------------------------------------------------------------------

#[derive(Args)]
struct EmbedArgs {
    /// Pattern document (JSON); "-" reads stdin.
    #[arg(long)]
    pattern: PathBuf,
    /// Host document (JSON); "-" reads stdin.
    #[arg(long)]
    host: PathBuf,
    /// Coloring discipline the embedding must satisfy.
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// RNG seed (default: RAINBOW_EMBED_SEED, else fresh).
    #[arg(long)]
    seed: Option<u64>,
    /// Resampling budget per attempt (default: 100·(vertices + edges)).
    #[arg(long)]
    max_resamples: Option<u64>,
    /// Independent restart attempts.
    #[arg(long, default_value_t = 10)]
    restarts: u32,
    /// Which violation the resampler fires on.
    #[arg(long, value_enum, default_value_t = ScanArg::FirstFound)]
    scan: ScanArg,
    /// Evaluate restart attempts on worker threads; the output is identical
    /// to the serial run.
    #[arg(long)]
    parallel: bool,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Runs attempts `0..restarts` across worker threads and recombines them
/// into exactly the serial outcome: the lowest successful attempt wins and
/// the stats aggregate the attempts a serial run would have consumed.
fn embed_parallel(
    pattern: &Pattern,
    host: &ColoredHost,
    config: &EmbedConfig,
) -> Result<EmbedOutcome, Error> {
    let restarts = config.restarts;
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(restarts.max(1) as usize);
    let slots: Vec<Mutex<Option<Result<AttemptOutcome, Error>>>> =
        (0..restarts).map(|_| Mutex::new(None)).collect();
    let next = AtomicU32::new(0);
    let best = AtomicU32::new(u32::MAX);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let attempt = next.fetch_add(1, Ordering::Relaxed);
                // The counter is claimed in order, so everything past the
                // best success (or the end) is no longer needed.
                if attempt >= restarts || attempt > best.load(Ordering::Acquire) {
                    break;
                }
                let outcome = embed_attempt(pattern, host, config, attempt);
                if matches!(&outcome, Ok(o) if o.embedding.is_some()) {
                    best.fetch_min(attempt, Ordering::AcqRel);
                }
                *slots[attempt as usize].lock().expect("no panics hold the lock") = Some(outcome);
            });
        }
    });

    let winner = best.load(Ordering::Acquire);
    let budget = config.max_resamples.unwrap_or_else(|| default_budget(pattern));
    let consumed = if winner == u32::MAX { restarts } else { winner + 1 };
    let mut total_resamples = 0u64;
    let mut last_violation = None;
    for attempt in 0..consumed {
        let outcome = slots[attempt as usize]
            .lock()
            .expect("no panics hold the lock")
            .take()
            .expect("attempts up to the first success were computed")?;
        total_resamples += outcome.resamples;
        if let Some(embedding) = outcome.embedding {
            return Ok(EmbedOutcome::Success {
                embedding,
                stats: EmbedStats {
                    seed: config.seed,
                    attempts: attempt + 1,
                    resamples: total_resamples,
                    max_resamples: budget,
                    restarts,
                },
            });
        }
        last_violation = outcome.last_violation.or(last_violation);
    }
    Ok(EmbedOutcome::Failure {
        stats: EmbedStats {
            seed: config.seed,
            attempts: restarts,
            resamples: total_resamples,
            max_resamples: budget,
            restarts,
        },
        last_violation: last_violation.expect("failure implies a violation was observed"),
    })
}

fn run_embed(args: EmbedArgs) -> CmdResult {
    at_most_one_stdin(&[&args.pattern, &args.host])?;
    let pattern = read_pattern(&args.pattern)?;
    let host = read_host(&args.host)?;
    let seed = resolve_seed(args.seed)?;
    let mut config = EmbedConfig::new(args.mode.into(), seed);
    config.max_resamples = args.max_resamples;
    config.restarts = args.restarts;
    config.scan_order = args.scan.into();
    let outcome = if args.parallel {
        embed_parallel(&pattern, &host, &config).map_err(lib)?
    } else {
        embed(&pattern, &host, &config).map_err(lib)?
    };
    match outcome {
        EmbedOutcome::Success { embedding, stats } => {
            let out = json!({
                "seed": seed,
                "embedding": embedding_to_json(&embedding),
                "stats": stats,
            });
            emit(&out, args.output.as_ref())?;
            Ok(EXIT_OK)
        }
        EmbedOutcome::Failure { stats, last_violation } => {
            let out = json!({
                "seed": seed,
                "embedding": null,
                "stats": stats,
                "lastViolation": last_violation,
            });
            emit(&out, args.output.as_ref())?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

// ---------------------------------------------------------------------------
// oracle / verify
// ---------------------------------------------------------------------------

#[derive(Args)]
struct OracleArgs {
    /// Pattern document (JSON); "-" reads stdin.
    #[arg(long)]
    pattern: PathBuf,
    /// Host document (JSON); "-" reads stdin.
    #[arg(long)]
    host: PathBuf,
    /// Coloring discipline the copy must satisfy.
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn run_oracle(args: OracleArgs) -> CmdResult {
    at_most_one_stdin(&[&args.pattern, &args.host])?;
    let pattern = read_pattern(&args.pattern)?;
    let host = read_host(&args.host)?;
    match exists_colored_copy(&pattern, &host, args.mode.into()).map_err(lib)? {
        Some(witness) => {
            let out = json!({ "exists": true, "witness": embedding_to_json(&witness) });
            emit(&out, args.output.as_ref())?;
            Ok(EXIT_OK)
        }
        None => {
            let out = json!({ "exists": false, "witness": null });
            emit(&out, args.output.as_ref())?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Embedding document (JSON array); "-" reads stdin.
    #[arg(long)]
    embedding: PathBuf,
    /// Pattern document (JSON); "-" reads stdin.
    #[arg(long)]
    pattern: PathBuf,
    /// Host document (JSON); "-" reads stdin.
    #[arg(long)]
    host: PathBuf,
    /// Discipline the embedding is expected to satisfy.
    #[arg(long, value_enum, default_value_t = ModeArg::Proper)]
    mode: ModeArg,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn run_verify(args: VerifyArgs) -> CmdResult {
    at_most_one_stdin(&[&args.embedding, &args.pattern, &args.host])?;
    let value: serde_json::Value = parse_json(&read_input(Some(&args.embedding))?, "embedding")?;
    let images = embedding_images_from_json(&value).map_err(lib)?;
    let pattern = read_pattern(&args.pattern)?;
    let host = read_host(&args.host)?;
    let report = validate_images(&images, &pattern, &host);
    let accepted = report.accepted(args.mode.into());
    emit(&report, args.output.as_ref())?;
    Ok(if accepted { EXIT_OK } else { EXIT_NEGATIVE })
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

#[derive(Subcommand)]
enum ConstructCmd {
    /// Chain of q+1 pairwise-intersecting (m-1)-cliques threaded through a
    /// projective plane of prime order q.
    PlanePattern(PlanePatternArgs),
    /// Clustered fan coloring of K_{m(x)n}: globally ceil(n/(q²+q))-bounded
    /// yet with no properly colored plane pattern.
    FanColoring(FanColoringArgs),
    /// Color every r-set of K_n^(r) by its first ell vertices.
    FirstEll(FirstEllArgs),
    /// Sparse design hypergraph D(r, ell, m): every ell-set lies in exactly
    /// (m-ell)/(r-ell) edges.
    Design(DesignArgs),
    /// Two-level hypergraph tree (optionally truncated to a vertex budget).
    Tree(TreeArgs),
    /// Block coloring of K_n^(r) by the multiset of blocks an edge meets.
    Block(BlockArgs),
}

fn run_construct(cmd: ConstructCmd) -> CmdResult {
    match cmd {
        ConstructCmd::PlanePattern(args) => run_plane_pattern(args),
        ConstructCmd::FanColoring(args) => {
            let coloring = fan_coloring(args.q, args.m, args.n).map_err(lib)?;
            emit(&HostDoc::from_host(&coloring.host), args.output.as_ref())?;
            Ok(EXIT_OK)
        }
        ConstructCmd::FirstEll(args) => {
            let host = first_ell_coloring(args.n, args.r, args.ell).map_err(lib)?;
            emit(&HostDoc::from_host(&host), args.output.as_ref())?;
            Ok(EXIT_OK)
        }
        ConstructCmd::Design(args) => {
            let d = design(args.r, args.ell, args.m).map_err(lib)?;
            if args.csv {
                write_output(&d.incidence_csv(), args.output.as_ref())?;
            } else {
                let pattern = d.pattern().map_err(lib)?;
                emit(&PatternDoc::from_pattern(&pattern), args.output.as_ref())?;
            }
            Ok(EXIT_OK)
        }
        ConstructCmd::Tree(args) => {
            let pattern = match args.vertices {
                Some(total) => truncated_tree_pattern(args.r, args.n1, total).map_err(lib)?,
                None => tree_pattern(args.r, args.n1).map_err(lib)?,
            };
            emit(&PatternDoc::from_pattern(&pattern), args.output.as_ref())?;
            Ok(EXIT_OK)
        }
        ConstructCmd::Block(args) => {
            let host = block_coloring(args.n, args.r).map_err(lib)?;
            emit(&HostDoc::from_host(&host), args.output.as_ref())?;
            Ok(EXIT_OK)
        }
    }
}

#[derive(Args)]
struct PlanePatternArgs {
    /// Prime order of the projective plane.
    #[arg(long)]
    q: u32,
    /// Clique order parameter (each chained clique has m-1 vertices).
    #[arg(long)]
    m: Option<u32>,
    /// Emit only the bipartite point–line incidence subpattern.
    #[arg(long)]
    incidence_only: bool,
    /// Emit the plane's point–line incidence matrix as CSV instead.
    #[arg(long)]
    csv: bool,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PlanePatternOut {
    #[serde(flatten)]
    pattern: PatternDoc,
    /// Largest part of the pattern's partition (what a multipartite host's
    /// part size must reach).
    max_part_size: u32,
    /// Maximum vertex degree.
    max_degree: u64,
}

fn run_plane_pattern(args: PlanePatternArgs) -> CmdResult {
    if args.csv {
        let plane = projective_plane(args.q).map_err(lib)?;
        write_output(&plane.incidence_csv(), args.output.as_ref())?;
        return Ok(EXIT_OK);
    }
    if args.incidence_only {
        let pattern = plane_incidence_pattern(args.q).map_err(lib)?;
        emit(&PatternDoc::from_pattern(&pattern), args.output.as_ref())?;
        return Ok(EXIT_OK);
    }
    let m = require(args.m, "m", "for the full plane pattern")?;
    let built = plane_pattern(args.q, m).map_err(lib)?;
    let out = PlanePatternOut {
        max_part_size: built.max_part_size(),
        max_degree: built.pattern.degree_profile().delta(),
        pattern: PatternDoc::from_pattern(&built.pattern),
    };
    emit(&out, args.output.as_ref())?;
    Ok(EXIT_OK)
}

#[derive(Args)]
struct FanColoringArgs {
    /// Prime order of the underlying plane (gives q²+q clusters per part).
    #[arg(long)]
    q: u32,
    /// Number of host parts.
    #[arg(long)]
    m: u32,
    /// Host part size (at least q²+q).
    #[arg(long)]
    n: u32,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FirstEllArgs {
    /// Host vertex count.
    #[arg(long)]
    n: u32,
    /// Edge uniformity.
    #[arg(long)]
    r: u32,
    /// How many leading vertices determine the color.
    #[arg(long)]
    ell: u32,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DesignArgs {
    /// Edge uniformity.
    #[arg(long)]
    r: u32,
    /// Linearity parameter.
    #[arg(long)]
    ell: u32,
    /// Number of vertices.
    #[arg(long)]
    m: u32,
    /// Emit the vertex–edge incidence matrix as CSV instead of pattern JSON.
    #[arg(long)]
    csv: bool,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TreeArgs {
    /// Edge uniformity.
    #[arg(long)]
    r: u32,
    /// First-level size: the root edge count and per-tuple branching.
    #[arg(long)]
    n1: u32,
    /// Truncate to exactly this many vertices (level order); omit for the
    /// full two-level tree.
    #[arg(long)]
    vertices: Option<u32>,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BlockArgs {
    /// Host vertex count (must be divisible by r+1).
    #[arg(long)]
    n: u32,
    /// Edge uniformity.
    #[arg(long)]
    r: u32,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// verify-negdep
// ---------------------------------------------------------------------------

#[derive(Args)]
struct VerifyNegdepArgs {
    /// Comma-separated domain part sizes, e.g. 2,2.
    #[arg(long, value_delimiter = ',', required = true)]
    domain: Vec<u32>,
    /// Comma-separated image part sizes, aligned with --domain.
    #[arg(long, value_delimiter = ',', required = true)]
    image: Vec<u32>,
    /// JSON file of events, each an array of [domain, image] pairs
    /// (default: every single-pair canonical event of the space).
    #[arg(long)]
    events: Option<PathBuf>,
    /// Cap on conditioning subsets examined per event.
    #[arg(long, default_value_t = 1_000_000)]
    limit: u64,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn run_verify_negdep(args: VerifyNegdepArgs) -> CmdResult {
    let space = InjectionSpace::new(args.domain, args.image).map_err(lib)?;
    let events = match &args.events {
        None => all_single_pair_events(&space),
        Some(path) => {
            let raw: Vec<Vec<(u32, u32)>> =
                parse_json(&read_input(Some(path))?, "events")?;
            raw.into_iter()
                .map(CanonicalEvent::new)
                .collect::<Result<Vec<_>, _>>()
                .map_err(lib)?
        }
    };
    let report = verify_negative_dependency(&space, &events, args.limit).map_err(lib)?;
    let clean = report.violation_count == 0;
    emit(&report, args.output.as_ref())?;
    Ok(if clean { EXIT_OK } else { EXIT_NEGATIVE })
}

// ---------------------------------------------------------------------------
// latin
// ---------------------------------------------------------------------------

#[derive(Subcommand)]
enum LatinCmd {
    /// Convert a Latin-square CSV into a host coloring of K_{n,n}.
    Import(LatinImportArgs),
    /// Search for a transversal (n cells, one per row/column/symbol).
    Transversal(LatinTransversalArgs),
}

#[derive(Args)]
struct LatinImportArgs {
    /// CSV input; omit or pass "-" to read stdin.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LatinTransversalArgs {
    /// Use the cyclic square of Z_n instead of reading a CSV.
    #[arg(long)]
    cyclic: bool,
    /// Order of the cyclic square (with --cyclic).
    #[arg(long)]
    order: Option<usize>,
    /// CSV input; "-" reads stdin.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn run_latin(cmd: LatinCmd) -> CmdResult {
    match cmd {
        LatinCmd::Import(args) => {
            let square = LatinSquare::from_csv(&read_input(args.input.as_ref())?).map_err(lib)?;
            emit(&HostDoc::from_host(&square.to_coloring()), args.output.as_ref())?;
            Ok(EXIT_OK)
        }
        LatinCmd::Transversal(args) => {
            let square = if args.cyclic {
                let order = require(args.order, "order", "with --cyclic")?;
                if args.input.is_some() {
                    return Err(Failure::Usage(
                        "--cyclic and --input are mutually exclusive".into(),
                    ));
                }
                LatinSquare::cyclic(order).map_err(lib)?
            } else {
                if args.order.is_some() {
                    return Err(Failure::Usage("--order requires --cyclic".into()));
                }
                LatinSquare::from_csv(&read_input(args.input.as_ref())?).map_err(lib)?
            };
            match square.transversal().map_err(lib)? {
                Some(columns) => {
                    let out = json!({ "order": square.order(), "columns": columns });
                    emit(&out, args.output.as_ref())?;
                    Ok(EXIT_OK)
                }
                None => {
                    emit(&json!("none"), args.output.as_ref())?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
    }
}
