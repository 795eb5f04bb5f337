//! Command-line entry point. Every command writes its result to the given
//! writer; `--format structured` output is byte-identical to the matching
//! HTTP response body.

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use profilelint_core::corpus::{ingest_files, load_snapshot, save_snapshot, CohortCriterion, CorpusSnapshot};
use profilelint_core::evaluator::evaluate;
use profilelint_core::matcher::{analyze, FieldAnalysis};
use profilelint_core::profile::{parse_profile, FieldKind, SourceTag};
use profilelint_core::synth::{generate, paper_scenario_spec, GeneratorSpec};

use crate::api::{self, AppState};
use crate::config::AppConfig;
use crate::error::CliError;
use crate::render;

/// Name accepted by `gen-corpus --spec` for the built-in demonstration scenario.
pub const PAPER_SCENARIO: &str = "paper-scenario";

#[derive(Debug, Parser)]
#[command(name = "profilelint", version, about = "Corpus-backed quality suggestions for structured profiles")]
pub struct Cli {
    /// TOML configuration file. Flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Log filter written to stderr, e.g. `debug` or `profilelint=trace`.
    #[arg(long, global = true, value_name = "FILTER")]
    pub log: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a snapshot from newline-delimited profile files.
    Ingest {
        #[arg(long = "in", required = true, num_args = 1.., value_name = "FILE")]
        inputs: Vec<PathBuf>,
        #[arg(long, value_name = "SNAPSHOT")]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        criterion: Option<Criterion>,
        #[arg(long, value_name = "N")]
        min_cohort_size: Option<u64>,
    },
    /// Evaluate one profile document against a snapshot.
    Evaluate {
        #[command(flatten)]
        snapshot: SnapshotArg,
        /// Profile document file, or `-` for stdin.
        #[arg(long, value_name = "DOC")]
        profile: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        eval: EvalArgs,
        #[command(flatten)]
        matching: MatchArgs,
    },
    /// Recommend corpus values for one field value.
    Suggest {
        #[command(flatten)]
        snapshot: SnapshotArg,
        #[arg(long, value_name = "FIELD_KIND")]
        kind: FieldKind,
        #[arg(long, value_name = "VALUE", allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        matching: MatchArgs,
    },
    /// Find stored profiles by name.
    Search {
        #[command(flatten)]
        snapshot: SnapshotArg,
        #[arg(long)]
        first: String,
        #[arg(long)]
        last: String,
        #[arg(long)]
        institution: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a stored profile document.
    Profile {
        #[command(flatten)]
        snapshot: SnapshotArg,
        #[arg(long)]
        source: SourceTag,
        #[arg(long)]
        id: String,
    },
    /// Print the effective configuration.
    Config {
        #[command(flatten)]
        eval: EvalArgs,
        #[command(flatten)]
        matching: MatchArgs,
    },
    /// Generate a synthetic corpus with its ground-truth manifest.
    GenCorpus {
        /// Generator spec file, or `paper-scenario`.
        #[arg(long, value_name = "FILE")]
        spec: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Serve the HTTP API over a snapshot.
    Serve {
        #[command(flatten)]
        snapshot: SnapshotArg,
        #[arg(long, value_name = "ADDR")]
        listen: Option<String>,
        #[arg(long, value_name = "DIR")]
        static_dir: Option<PathBuf>,
        #[command(flatten)]
        eval: EvalArgs,
        #[command(flatten)]
        matching: MatchArgs,
    },
}

#[derive(Debug, Args)]
pub struct SnapshotArg {
    #[arg(long, value_name = "FILE")]
    snapshot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Completeness threshold in [0, 1].
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long, value_enum)]
    criterion: Option<Criterion>,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    /// Maximum recommendations per field.
    #[arg(long)]
    k: Option<usize>,
    /// Minimum support for a recommendation.
    #[arg(long)]
    s_min: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    LastSchool,
    DegreeLevel,
    Global,
}

impl From<Criterion> for CohortCriterion {
    fn from(c: Criterion) -> Self {
        match c {
            Criterion::LastSchool => CohortCriterion::LastSchool,
            Criterion::DegreeLevel => CohortCriterion::DegreeLevel,
            Criterion::Global => CohortCriterion::Global,
        }
    }
}

impl SnapshotArg {
    fn apply(&self, cfg: &mut AppConfig) {
        if let Some(p) = &self.snapshot {
            cfg.snapshot = p.clone();
        }
    }
}

impl EvalArgs {
    fn apply(&self, cfg: &mut AppConfig) {
        if let Some(t) = self.threshold {
            cfg.eval.completeness_threshold = t;
        }
        if let Some(c) = self.criterion {
            cfg.eval.cohort_criterion = Some(c.into());
        }
    }
}

impl MatchArgs {
    fn apply(&self, cfg: &mut AppConfig) {
        if let Some(k) = self.k {
            cfg.match_params.k = k;
        }
        if let Some(s) = self.s_min {
            cfg.match_params.s_min = s;
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write!(out, "{e}")?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.render().to_string())),
    };
    execute(cli, out)
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => AppConfig::load(path)?,
        None => AppConfig::default(),
    };
    if let Some(log) = &cli.log {
        cfg.log = log.clone();
    }
    apply_overrides(&cli.command, &mut cfg);
    cfg.validate().map_err(CliError::Usage)?;
    init_logging(&cfg.log);

    match cli.command {
        Command::Ingest { inputs, out: dest, .. } => {
            let dest = dest.unwrap_or_else(|| cfg.snapshot.clone());
            ingest_cmd(&inputs, &dest, &cfg, out)
        }
        Command::Evaluate { profile, format, .. } => {
            let snapshot = open_snapshot(&cfg.snapshot)?;
            let text = read_document(&profile)?;
            let parsed = parse_profile(&text)?;
            let report = evaluate(&snapshot, &parsed.profile, &cfg.eval_config());
            match format {
                Format::Text => out.write_all(report.to_text().as_bytes())?,
                Format::Structured => out.write_all(render::report(&report).as_bytes())?,
            }
            Ok(())
        }
        Command::Suggest { kind, q, format, .. } => {
            let snapshot = open_snapshot(&cfg.snapshot)?;
            let analysis = analyze(&snapshot, kind, &q, &cfg.match_params)?;
            match format {
                Format::Text => out.write_all(suggest_text(&analysis).as_bytes())?,
                Format::Structured => out.write_all(render::suggestions(&analysis).as_bytes())?,
            }
            Ok(())
        }
        Command::Search { first, last, institution, format, .. } => {
            let snapshot = open_snapshot(&cfg.snapshot)?;
            let hits = snapshot.search_profiles(&first, &last, institution.as_deref());
            match format {
                Format::Text => {
                    writeln!(out, "{} matches", hits.len())?;
                    for h in &hits {
                        write!(out, "{}/{}  {}", h.source, h.id, h.display_name)?;
                        if let Some(inst) = &h.last_institution {
                            write!(out, "  ({inst})")?;
                        }
                        writeln!(out)?;
                    }
                }
                Format::Structured => out.write_all(render::matches(&hits).as_bytes())?,
            }
            Ok(())
        }
        Command::Profile { source, id, .. } => {
            let snapshot = open_snapshot(&cfg.snapshot)?;
            let p = snapshot
                .profile(source, &id)
                .ok_or_else(|| CliError::Data(format!("no profile {source}/{id} in snapshot")))?;
            out.write_all(render::profile(p).as_bytes())?;
            Ok(())
        }
        Command::Config { .. } => {
            out.write_all(render::config(&cfg).as_bytes())?;
            Ok(())
        }
        Command::GenCorpus { spec, seed, out: dir } => gen_corpus_cmd(&spec, seed, &dir, out),
        Command::Serve { .. } => serve_cmd(cfg, out),
    }
}

fn apply_overrides(cmd: &Command, cfg: &mut AppConfig) {
    match cmd {
        Command::Ingest { criterion, min_cohort_size, .. } => {
            if let Some(c) = criterion {
                cfg.build.cohort_criterion = (*c).into();
            }
            if let Some(n) = min_cohort_size {
                cfg.build.min_cohort_size = *n;
            }
        }
        Command::Evaluate { snapshot, eval, matching, .. } => {
            snapshot.apply(cfg);
            eval.apply(cfg);
            matching.apply(cfg);
        }
        Command::Suggest { snapshot, matching, .. } => {
            snapshot.apply(cfg);
            matching.apply(cfg);
        }
        Command::Search { snapshot, .. } | Command::Profile { snapshot, .. } => snapshot.apply(cfg),
        Command::Config { eval, matching } => {
            eval.apply(cfg);
            matching.apply(cfg);
        }
        Command::GenCorpus { .. } => {}
        Command::Serve { snapshot, listen, static_dir, eval, matching } => {
            snapshot.apply(cfg);
            eval.apply(cfg);
            matching.apply(cfg);
            if let Some(l) = listen {
                cfg.listen = l.clone();
            }
            if let Some(d) = static_dir {
                cfg.static_dir = Some(d.clone());
            }
        }
    }
}

fn init_logging(filter: &str) {
    let filter =
        tracing_subscriber::EnvFilter::try_new(filter).unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("warn"));
    let _ = tracing_subscriber::fmt()
        .with_env_filter(filter)
        .with_writer(std::io::stderr)
        .with_ansi(std::io::stderr().is_terminal())
        .try_init();
}

fn open_snapshot(path: &Path) -> Result<CorpusSnapshot, CliError> {
    load_snapshot(path).map_err(|e| match CliError::from(e) {
        CliError::Io(msg) => CliError::Io(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn read_document(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn ingest_cmd(inputs: &[PathBuf], dest: &Path, cfg: &AppConfig, out: &mut dyn Write) -> Result<(), CliError> {
    for p in inputs {
        if !p.is_file() {
            return Err(CliError::io(format!("{}: no such file", p.display())));
        }
    }
    let snapshot = ingest_files(inputs, &cfg.build)?;
    save_snapshot(&snapshot, dest)?;
    let stats = snapshot.ingest_stats();
    tracing::info!(profiles = snapshot.profile_count(), path = %dest.display(), "snapshot written");
    writeln!(out, "profiles: {}", snapshot.profile_count())?;
    writeln!(
        out,
        "parse warnings: {} ({} failed records, {} blank instances dropped)",
        stats.failed + stats.dropped_instances,
        stats.failed,
        stats.dropped_instances
    )?;
    writeln!(out, "digest: {}", snapshot.content_digest())?;
    writeln!(out, "snapshot: {}", dest.display())?;
    Ok(())
}

fn gen_corpus_cmd(spec: &str, seed: Option<u64>, dir: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let mut spec = if spec == PAPER_SCENARIO {
        paper_scenario_spec()
    } else {
        let text = std::fs::read_to_string(spec).map_err(|e| CliError::io(format!("{spec}: {e}")))?;
        GeneratorSpec::from_json(&text).map_err(|e| CliError::Data(format!("{spec}: {e}")))?
    };
    if let Some(seed) = seed {
        spec.seed = seed;
    }
    let corpus = generate(&spec)?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("{}: {e}", dir.display())))?;
    corpus.write_to(dir).map_err(|e| CliError::io(format!("{}: {e}", dir.display())))?;
    writeln!(out, "profiles: {}", corpus.ground_truth.profile_count)?;
    writeln!(out, "seed: {}", spec.seed)?;
    for f in &corpus.files {
        writeln!(out, "wrote {}", dir.join(&f.name).display())?;
    }
    Ok(())
}

fn serve_cmd(cfg: AppConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let snapshot = open_snapshot(&cfg.snapshot)?;
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(&cfg.listen)
            .await
            .map_err(|e| CliError::io(format!("{}: {e}", cfg.listen)))?;
        writeln!(out, "listening on http://{}", listener.local_addr()?)?;
        out.flush()?;
        api::serve(AppState::new(snapshot, cfg), listener).await.map_err(CliError::from)
    })
}

fn suggest_text(a: &FieldAnalysis) -> String {
    let mut s = format!("{} \"{}\" (key support {})\n", a.field, a.query, a.key_support);
    if a.recommendations.is_empty() {
        s.push_str("no recommendations\n");
    }
    for (i, r) in a.recommendations.iter().enumerate() {
        s.push_str(&format!("{}. {} ({})\n", i + 1, r.surface, r.support));
    }
    if !a.flags.is_empty() {
        let flags: Vec<String> = a.flags.iter().map(|f| f.to_string()).collect();
        s.push_str(&format!("flags: {}\n", flags.join(", ")));
    }
    s
}
