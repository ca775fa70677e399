use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use hext::brenner::{report as brenner_report, BrennerReport};
use hext::corpus::{run_corpus, thread_pool, CorpusConfig};
use hext::cycles::{classify_cycle, completeness_bound, nonzero_cycles_at, Enumeration};
use hext::job::{Job, JobError, Mode};
use hext::scalar::parse_scalar;
use hext::suite::{run_suite, Injection, SuiteOptions};
use hext::HochschildExtension;

mod document;

use document::{socle_listing, ConfigEcho, CycleDoc, ExtQuiverDoc, ResultDocument, Validation, VertexCycles};

#[derive(Parser)]
#[command(name = "hext", version, about = "Nonzero cycles and Brenner counts for Hochschild extensions of truncated quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebra hypotheses and the cocycle data.
    Validate(JobArgs),
    /// Socle, extension quiver, non-zero cycles and class counts.
    Analyze(JobArgs),
    /// List cycles with their classes.
    Cycles {
        #[command(flatten)]
        job: JobArgs,
        /// Only cycles at this vertex.
        #[arg(long)]
        origin: Option<String>,
        /// List every cycle up to this length, zero ones included.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Per-vertex class counts and the Brenner oracle.
    Brenner(JobArgs),
    /// Run every consistency check; exit 3 if one fails.
    Verify {
        #[command(flatten)]
        job: JobArgs,
        /// Longest cycle compared against the extension product.
        #[arg(long)]
        bound: Option<usize>,
        /// Longest path whose factorizations are checked (default 2n).
        #[arg(long)]
        product_bound: Option<usize>,
        /// Enumerate every cycle instead of skipping subtrees that are zero on both sides.
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, hide = true, default_value = "none")]
        inject: InjectArg,
    },
    /// Verify a seeded corpus of random instances.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Job document (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Override the document's mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Override the cocycle scalar, e.g. `7/3`.
    #[arg(long)]
    k: Option<String>,
    /// Also write the result document here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[arg(long, default_value_t = 8)]
    max_vertices: usize,
    #[arg(long, default_value_t = 14)]
    max_arrows: usize,
    /// Truncation degrees to draw from.
    #[arg(long, value_delimiter = ',', default_value = "3,4")]
    n: Vec<usize>,
    /// Where minimized failing instances are written.
    #[arg(long, default_value = "corpus-failures")]
    archive: PathBuf,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, value_enum, hide = true, default_value = "none")]
    inject: InjectArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Trivial,
    Cocycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum InjectArg {
    None,
    SkipWeightTest,
    DropFullCycle,
}

impl From<InjectArg> for Injection {
    fn from(i: InjectArg) -> Self {
        match i {
            InjectArg::None => Injection::None,
            InjectArg::SkipWeightTest => Injection::SkipWeightTest,
            InjectArg::DropFullCycle => Injection::DropFullCycle,
        }
    }
}

enum Failure {
    Input(String),
    CheckFailed,
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

type Outcome = Result<(), Failure>;

/// Human-readable text, replaced by the result document under `--json -`.
#[derive(Default)]
struct Output {
    text: String,
    json: Option<String>,
}

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out.text, $($arg)*).expect("writing to a string")
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Output::default();
    let result = run(cli.command, &mut out);
    let shown = out.json.as_ref().unwrap_or(&out.text);
    // a closed pipe downstream is not an error
    match io::stdout().lock().write_all(shown.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            eprintln!("error: writing output: {e}");
            return ExitCode::from(1);
        }
        _ => {}
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("invalid input: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::CheckFailed) => ExitCode::from(3),
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, out: &mut Output) -> Outcome {
    match command {
        Command::Validate(args) => validate(&args, out),
        Command::Analyze(args) => analyze(&args, out),
        Command::Cycles { job, origin, bound } => cycles(&job, origin.as_deref(), bound, out),
        Command::Brenner(args) => brenner(&args, out),
        Command::Verify { job, bound, product_bound, full, inject } => {
            let opts = SuiteOptions {
                cycle_bound: bound,
                enumeration: if full { Enumeration::Full } else { Enumeration::ZeroPruned },
                product_bound,
                injection: inject.into(),
            };
            verify(&job, opts, out)
        }
        Command::Corpus(args) => corpus(&args, out),
    }
}

fn load(args: &JobArgs) -> Result<Job, Failure> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", args.input.display())))?;
    let mut job = Job::parse(&text).map_err(|e| Failure::Input(e.to_string()))?;
    if let Some(mode) = args.mode {
        job = job.with_mode(match mode {
            ModeArg::Trivial => Mode::Trivial,
            ModeArg::Cocycle => Mode::Cocycle,
        });
    }
    if let Some(k) = &args.k {
        job.k = parse_scalar(k).map_err(|e| Failure::Input(e.to_string()))?;
    }
    Ok(job)
}

fn echo(args: &JobArgs, job: &Job) -> ConfigEcho {
    ConfigEcho::new(Some(&args.input.display().to_string()), job)
}

/// Builds the pipeline, writing a failed-validation document on the way out.
fn build(command: &str, args: &JobArgs, job: &Job, out: &mut Output) -> Result<HochschildExtension, Failure> {
    job.build().map_err(|e| {
        let problems = match &e {
            JobError::Algebra(invalid) => invalid.0.violations.iter().map(ToString::to_string).collect(),
            other => vec![other.to_string()],
        };
        let doc = ResultDocument::new(command, Some(echo(args, job)), Validation::failed(problems));
        match write_json(out, args.json.as_deref(), &doc) {
            Ok(()) => Failure::Input(e.to_string()),
            Err(io) => Failure::Internal(io),
        }
    })
}

fn write_json<T: serde::Serialize>(stdout: &mut Output, path: Option<&FsPath>, value: &T) -> anyhow::Result<()> {
    let Some(path) = path else { return Ok(()) };
    let mut text = serde_json::to_string_pretty(value).context("serializing result")?;
    text.push('\n');
    if path == FsPath::new("-") {
        stdout.json = Some(text);
    } else {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn validate(args: &JobArgs, out: &mut Output) -> Outcome {
    let job = load(args)?;
    let ext = build("validate", args, &job, out)?;
    let alg = ext.algebra();
    outln!(
            out,
        "valid: {} vertices, {} arrows, n = {}, dim A = {}, {}",
        alg.quiver().vertex_count(),
        alg.quiver().arrow_count(),
        alg.n(),
        alg.dim(),
        describe_mode(&ext)
    );
    let doc = ResultDocument::new("validate", Some(echo(args, &job)), Validation::ok());
    Ok(write_json(out, args.json.as_deref(), &doc)?)
}

fn describe_mode(ext: &HochschildExtension) -> String {
    let c = ext.cocycle();
    match (c.gamma(), c.k()) {
        (Some(gamma), Some(k)) => {
            let q = ext.algebra().quiver();
            let names: Vec<&str> = gamma.iter().map(|&a| q.arrow_name(a)).collect();
            format!("cocycle from {} with k = {k}", names.join("·"))
        }
        _ => "trivial extension".into(),
    }
}

fn cycle_listing(ext: &HochschildExtension) -> Vec<VertexCycles> {
    let q = ext.quiver();
    q.vertices()
        .map(|h| VertexCycles {
            vertex: q.vertex_name(h).to_string(),
            cycles: nonzero_cycles_at(ext, h).iter().map(|(c, class)| CycleDoc::new(ext, c, class)).collect(),
        })
        .collect()
}

fn print_cycles(out: &mut Output, listing: &[VertexCycles]) {
    for v in listing {
        outln!(out, "vertex {}: {} cycles", v.vertex, v.cycles.len());
        for c in &v.cycles {
            match &c.weight {
                Some(w) => outln!(out, "  {}  {}  w = {w}", c.class, c.cycle),
                None => outln!(out, "  {}  {}", c.class, c.cycle),
            }
        }
    }
}

fn print_brenner(out: &mut Output, report: &BrennerReport) {
    outln!(out, "vertex  C/≡  A/≈  N  n  summands  projective  radP/socP");
    for r in &report.vertices {
        outln!(
            out,
            "{:>6}  {:>3}  {:>3}  {}  {}  {:>8}  {:>10}  {:>9}{}",
            r.vertex,
            r.card_c,
            r.card_a,
            r.oracle_max_total,
            r.oracle_min_blocks,
            r.middle_term_summands,
            r.middle_term_projective_summands,
            r.rad_soc_summands,
            if r.consistent() { "" } else { "  INCONSISTENT" }
        );
    }
}

fn analyze(args: &JobArgs, out: &mut Output) -> Outcome {
    let job = load(args)?;
    let ext = build("analyze", args, &job, out)?;
    let socle = socle_listing(&ext);
    outln!(out, "{}", describe_mode(&ext));
    outln!(out, "socle ({}): {}", socle.len(), socle.join(", "));
    outln!(out, "extension quiver: {} vertices, {} arrows", ext.quiver().vertex_count(), ext.quiver().arrow_count());
    let listing = cycle_listing(&ext);
    print_cycles(out, &listing);
    let report = brenner_report(&ext);
    print_brenner(out, &report);
    let mut doc = ResultDocument::new("analyze", Some(echo(args, &job)), Validation::ok());
    doc.socle = Some(socle);
    doc.extension_quiver = Some(ExtQuiverDoc::new(&ext));
    doc.cycles = Some(listing);
    doc.brenner = Some(report);
    Ok(write_json(out, args.json.as_deref(), &doc)?)
}

fn cycles(args: &JobArgs, origin: Option<&str>, bound: Option<usize>, out: &mut Output) -> Outcome {
    let job = load(args)?;
    let ext = build("cycles", args, &job, out)?;
    let q = ext.quiver();
    let vertices = match origin {
        Some(name) => vec![q.vertex_id(name).ok_or_else(|| Failure::Input(format!("no vertex `{name}`")))?],
        None => q.vertices().collect(),
    };
    let listing: Vec<VertexCycles> = vertices
        .into_iter()
        .map(|h| {
            let cycles = match bound {
                Some(b) => q
                    .enumerate_cycles_at(h, b)
                    .into_iter()
                    .map(|c| {
                        let class = classify_cycle(&ext, &c);
                        CycleDoc::new(&ext, &c, &class)
                    })
                    .collect(),
                None => nonzero_cycles_at(&ext, h).iter().map(|(c, class)| CycleDoc::new(&ext, c, class)).collect(),
            };
            VertexCycles { vertex: q.vertex_name(h).to_string(), cycles }
        })
        .collect();
    if bound.is_none() {
        outln!(out, "non-zero cycles (length ≤ {})", completeness_bound(&ext));
    }
    print_cycles(out, &listing);
    let mut doc = ResultDocument::new("cycles", Some(echo(args, &job)), Validation::ok());
    doc.cycles = Some(listing);
    Ok(write_json(out, args.json.as_deref(), &doc)?)
}

fn brenner(args: &JobArgs, out: &mut Output) -> Outcome {
    let job = load(args)?;
    let ext = build("brenner", args, &job, out)?;
    let report = brenner_report(&ext);
    print_brenner(out, &report);
    let consistent = report.consistent();
    let mut doc = ResultDocument::new("brenner", Some(echo(args, &job)), Validation::ok());
    doc.brenner = Some(report);
    write_json(out, args.json.as_deref(), &doc)?;
    if consistent {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}

fn verify(args: &JobArgs, opts: SuiteOptions, out: &mut Output) -> Outcome {
    let job = load(args)?;
    let ext = build("verify", args, &job, out)?;
    let report = run_suite(&ext, opts);
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        match &c.counterexample {
            Some(x) => outln!(out, "{status} {} ({} checked): {x}", c.name, c.checked),
            None => outln!(out, "{status} {} ({} checked)", c.name, c.checked),
        }
    }
    let passed = report.passed();
    let mut doc = ResultDocument::new("verify", Some(echo(args, &job)), Validation::ok());
    doc.verification = Some(report);
    write_json(out, args.json.as_deref(), &doc)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}

fn corpus(args: &CorpusArgs, out: &mut Output) -> Outcome {
    let config = CorpusConfig {
        seed: args.seed,
        instances: args.instances,
        max_vertices: args.max_vertices,
        max_arrows: args.max_arrows,
        truncations: args.n.clone(),
    };
    let base = SuiteOptions { injection: args.inject.into(), ..SuiteOptions::default() };
    let summary = thread_pool()
        .install(|| run_corpus(&config, base))
        .map_err(|e| Failure::Input(e.to_string()))?;
    for o in &summary.instances {
        if !o.passed {
            outln!(
            out,
                "instance {} (n = {}, s = {}, {} vertices, {} arrows) failed: {}",
                o.index,
                o.n,
                o.s,
                o.vertices,
                o.arrows,
                o.failed_checks.join(", ")
            );
        }
    }
    outln!(out, "seed {}: {} instances, {} passed, {} failed", config.seed, summary.instances.len(), summary.passed, summary.failed);
    if summary.failed > 0 {
        fs::create_dir_all(&args.archive).with_context(|| format!("creating {}", args.archive.display()))?;
        for o in summary.instances.iter().filter(|o| !o.passed) {
            let path = args.archive.join(format!("seed{}-instance{}.json", config.seed, o.index));
            write_json(out, Some(&path), &o.minimized)?;
            outln!(out, "  wrote {}", path.display());
        }
    }
    write_json(out, args.json.as_deref(), &summary)?;
    if summary.all_passed() {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}
