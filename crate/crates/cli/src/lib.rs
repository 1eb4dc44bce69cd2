//! Batch front end over the `spatconf` library.
//!
//! Data goes to the output stream (or `--out`), diagnostics to the error stream.
//! Exit status: 0 success, 1 hard error (unreadable or malformed input, bad flags),
//! 2 validation failure under `--strict` and failed fixture checks.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use spatconf::extract::{extract_entry, WarningCode};
use spatconf::fixtures::verify_fixtures;
use spatconf::model::{
    deserialize_annotations, render_table, serialize_annotations, validate, SentenceAnnotation,
};
use spatconf::penman::parse_document;
use spatconf::qsr::{
    algebraic_closure, network_from_annotation, CompositionTable, NetworkFile, QtConstraintNetwork,
};
use spatconf::registry::Registry;
use spatconf::score::{aggregate, pair_by_id, score_with, ScoreOptions, SentenceScore};
use spatconf::stats::corpus_stats;

#[derive(Debug, Parser)]
#[command(name = "spatconf", version, about = "Spatial configurations from AMR graphs")]
pub struct Cli {
    /// Registry file; the bundled seed registry when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub registry: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write data here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Seed for scorer restarts.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Exit 2 when any input fails validation.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Worker threads; all cores when omitted.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// AMR document to annotations.
    Extract { input: PathBuf },
    /// Check annotations against the schema rules.
    Validate { input: PathBuf },
    /// Annotations to relational tables (always plain text).
    Render { input: PathBuf },
    /// Triple-matching P/R/F1 of predicted against gold annotations.
    Score {
        gold: PathBuf,
        pred: PathBuf,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
    },
    /// RCC8 path consistency over a network file or the topological QT of annotations.
    Reason { input: PathBuf },
    /// Spatial trigger counts and the trigger/token ratio of a corpus.
    Stats { input: PathBuf },
    /// Run every fixture case listed in `<root>/manifest.json`.
    Verify {
        #[arg(default_value = "fixtures")]
        root: PathBuf,
    },
}

#[derive(Debug)]
struct Failure(String);

#[derive(Debug, Default)]
struct Output {
    data: String,
    diagnostics: Vec<String>,
    code: u8,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return 1;
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure(format!("cannot start workers: {e}")))
        .and_then(|pool| pool.install(|| dispatch(cli)));
    match result {
        Ok(output) => {
            for d in &output.diagnostics {
                let _ = writeln!(err, "{d}");
            }
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &output.data)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(output.data.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => output.code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    1
                }
            }
        }
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Extract { input } => cmd_extract(cli, input),
        Command::Validate { input } => cmd_validate(cli, input),
        Command::Render { input } => cmd_render(cli, input),
        Command::Score {
            gold,
            pred,
            restarts,
        } => cmd_score(cli, gold, pred, *restarts),
        Command::Reason { input } => cmd_reason(cli, input),
        Command::Stats { input } => cmd_stats(cli, input),
        Command::Verify { root } => cmd_verify(cli, root),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn registry(cli: &Cli) -> Result<Registry, Failure> {
    match &cli.registry {
        Some(path) => Registry::load(path).map_err(|e| Failure(format!("{}: {e}", path.display()))),
        None => Ok(Registry::seed()),
    }
}

fn annotations(path: &Path) -> Result<Vec<SentenceAnnotation>, Failure> {
    deserialize_annotations(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

fn strict_code(cli: &Cli, failed: bool) -> u8 {
    if cli.strict && failed {
        2
    } else {
        0
    }
}

fn tables(annotations: &[SentenceAnnotation], diagnostics: &mut Vec<String>) -> (String, bool) {
    let mut data = String::new();
    let mut failed = false;
    for a in annotations {
        match render_table(a) {
            Ok(t) => {
                if !data.is_empty() {
                    data.push('\n');
                }
                data.push_str(&t);
            }
            Err(e) => {
                failed = true;
                diagnostics.push(format!("{}: {e}", a.sentence_id));
            }
        }
    }
    (data, failed)
}

fn cmd_extract(cli: &Cli, input: &Path) -> Result<Output, Failure> {
    let text = read(input)?;
    let entries = parse_document(&text).map_err(|e| Failure(format!("{}: {e}", input.display())))?;
    let registry = registry(cli)?;
    let results: Vec<_> = entries.par_iter().map(|e| extract_entry(e, &registry)).collect();

    let mut out = Output::default();
    let mut failed = false;
    for x in &results {
        let id = &x.annotation.sentence_id;
        for w in &x.warnings {
            failed |= w.code == WarningCode::DroppedConfiguration;
            out.diagnostics.push(format!("{id}: warning: {w}"));
        }
        for v in validate(&x.annotation) {
            failed = true;
            out.diagnostics.push(format!("{id}: {v}"));
        }
    }
    let annotations: Vec<SentenceAnnotation> = results.into_iter().map(|x| x.annotation).collect();
    if !annotations.is_empty() {
        out.data = match cli.format {
            Format::Json => serialize_annotations(&annotations) + "\n",
            Format::Table => {
                let (data, bad) = tables(&annotations, &mut out.diagnostics);
                failed |= bad;
                data
            }
        };
    }
    out.code = strict_code(cli, failed);
    Ok(out)
}

fn cmd_validate(cli: &Cli, input: &Path) -> Result<Output, Failure> {
    let annotations = annotations(input)?;
    let reports: Vec<_> = annotations
        .par_iter()
        .map(|a| (a.sentence_id.clone(), validate(a)))
        .collect();
    let failed = reports.iter().any(|(_, v)| !v.is_empty());
    let data = match cli.format {
        Format::Json => pretty(
            &reports
                .iter()
                .map(|(id, v)| json!({ "sentence_id": id, "violations": v }))
                .collect::<Vec<_>>(),
        ),
        Format::Table => {
            let mut s = String::new();
            for (id, violations) in &reports {
                if violations.is_empty() {
                    let _ = writeln!(s, "{id}: OK");
                }
                for v in violations {
                    let _ = writeln!(s, "{id}: {v}");
                }
            }
            s
        }
    };
    Ok(Output {
        data,
        diagnostics: Vec::new(),
        code: strict_code(cli, failed),
    })
}

fn cmd_render(cli: &Cli, input: &Path) -> Result<Output, Failure> {
    let annotations = annotations(input)?;
    let mut out = Output::default();
    let (data, failed) = tables(&annotations, &mut out.diagnostics);
    out.data = data;
    out.code = strict_code(cli, failed);
    Ok(out)
}

fn cmd_score(cli: &Cli, gold: &Path, pred: &Path, restarts: usize) -> Result<Output, Failure> {
    let gold = annotations(gold)?;
    let pred = annotations(pred)?;
    let options = ScoreOptions {
        restarts,
        seed: cli.seed,
        ..ScoreOptions::default()
    };
    let results: Vec<_> = pair_by_id(&gold, &pred)
        .par_iter()
        .map(|(g, p)| {
            score_with(g, p, &options).map(|report| SentenceScore {
                sentence_id: g.sentence_id.clone(),
                report,
            })
        })
        .collect();
    let mut out = Output::default();
    let mut scores = Vec::new();
    for r in results {
        match r {
            Ok(s) => scores.push(s),
            Err(e) => out.diagnostics.push(format!("skipped: {e}")),
        }
    }
    let failed = !out.diagnostics.is_empty();
    let report = aggregate(scores);
    out.data = match cli.format {
        Format::Json => pretty(&report),
        Format::Table => {
            let mut s = String::from("sentence | matched | gold | pred | P | R | F1\n");
            for x in &report.sentences {
                let r = &x.report;
                let _ = writeln!(
                    s,
                    "{} | {} | {} | {} | {:.4} | {:.4} | {:.4}",
                    x.sentence_id, r.matched, r.gold_total, r.pred_total, r.precision, r.recall, r.f1
                );
            }
            for (name, p) in [("micro", report.micro), ("macro", report.macro_avg)] {
                let _ = writeln!(
                    s,
                    "{name} | {} | {} | {} | {:.4} | {:.4} | {:.4}",
                    report.matched, report.gold_total, report.pred_total, p.precision, p.recall, p.f1
                );
            }
            s
        }
    };
    out.code = strict_code(cli, failed);
    Ok(out)
}

fn reason_one(name: &str, network: &QtConstraintNetwork, table: &CompositionTable) -> (Value, String) {
    let c = algebraic_closure(network, table);
    let verdict = if c.consistent { "CONSISTENT" } else { "INCONSISTENT" };
    let mut text = format!("{name}: {verdict}");
    if let Some((x, y)) = &c.witness {
        let _ = write!(text, " witness {x} {y}");
    }
    text.push('\n');
    for r in &c.trace {
        let _ = writeln!(text, "  refine {} {} via {}: {} -> {}", r.x, r.z, r.y, r.before, r.after);
    }
    for (x, y, r) in c.network.constraints() {
        let _ = writeln!(text, "  {x} {r} {y}");
    }
    let value = json!({
        "name": name,
        "verdict": verdict,
        "consistent": c.consistent,
        "witness": c.witness,
        "trace": c.trace,
        "network": NetworkFile::from_network(&c.network),
    });
    (value, text)
}

fn cmd_reason(cli: &Cli, input: &Path) -> Result<Output, Failure> {
    let text = read(input)?;
    let parsed: Value =
        serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", input.display())))?;
    let mut out = Output::default();
    let mut networks = Vec::new();
    if parsed.get("constraints").is_some() {
        let name = input.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        let n = NetworkFile::parse(&text).map_err(|e| Failure(format!("{}: {e}", input.display())))?;
        networks.push((name, n));
    } else {
        let annotations = deserialize_annotations(&text)
            .map_err(|e| Failure(format!("{}: {e}", input.display())))?;
        for a in &annotations {
            let (n, notices) = network_from_annotation(a)
                .map_err(|e| Failure(format!("{}: {e}", a.sentence_id)))?;
            for notice in notices {
                out.diagnostics.push(format!("{}: note: {notice}", a.sentence_id));
            }
            networks.push((a.sentence_id.clone(), n));
        }
    }
    let table = CompositionTable::standard();
    let results: Vec<_> = networks
        .par_iter()
        .map(|(name, n)| reason_one(name, n, &table))
        .collect();
    out.data = match cli.format {
        Format::Json => pretty(&results.iter().map(|r| &r.0).collect::<Vec<_>>()),
        Format::Table => results.into_iter().map(|r| r.1).collect(),
    };
    Ok(out)
}

fn cmd_stats(cli: &Cli, input: &Path) -> Result<Output, Failure> {
    let text = read(input)?;
    let registry = registry(cli)?;
    let stats =
        corpus_stats(&text, &registry).map_err(|e| Failure(format!("{}: {e}", input.display())))?;
    let data = match cli.format {
        Format::Json => pretty(&stats),
        Format::Table => {
            let mut s = String::new();
            for (concept, n) in &stats.per_concept {
                let _ = writeln!(s, "{concept} | {n}");
            }
            let _ = writeln!(s, "sentences | {}", stats.sentences);
            let _ = writeln!(s, "triggers | {}", stats.triggers);
            let _ = writeln!(s, "tokens | {}", stats.tokens);
            let _ = writeln!(s, "ratio | {:.4}", stats.ratio);
            s
        }
    };
    Ok(Output {
        data,
        ..Output::default()
    })
}

fn cmd_verify(cli: &Cli, root: &Path) -> Result<Output, Failure> {
    let report = verify_fixtures(root, &registry(cli)?);
    let data = match cli.format {
        Format::Json => pretty(&report),
        Format::Table => report.to_string(),
    };
    Ok(Output {
        data,
        diagnostics: Vec::new(),
        code: if report.all_passed() { 0 } else { 2 },
    })
}
