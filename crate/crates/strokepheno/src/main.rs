use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use strokepheno::{
    classify_report, evaluate_detailed, extract_frames, load_gold, load_phenotypes,
    load_raw_reports, load_reports_lenient, write_phenotypes, EvalOptions, Lexicon, Phenotype,
    ReportDocument, Sentence, Variant,
};

#[derive(Parser)]
#[command(
    name = "strokepheno",
    version,
    about = "Classify ischemic stroke phenotypes from spatial frames in radiology report text"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify reports and write a phenotype file
    Extract(ExtractArgs),
    /// Score predicted phenotypes against gold annotations
    Evaluate(EvaluateArgs),
    /// Check a frame corpus against the structural invariants
    Validate {
        /// Frame corpus (JSON Lines)
        #[arg(long)]
        frames: PathBuf,
    },
    /// Inspect the keyword tables
    Lexicon {
        #[command(subcommand)]
        command: LexiconCommand,
    },
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    input: ExtractInput,
    /// Lexicon overrides applied on top of the builtin tables
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Output phenotype file
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExtractInput {
    /// Frame corpus (JSON Lines)
    #[arg(long)]
    frames: Option<PathBuf>,
    /// Raw-text corpus (JSON Lines); frames come from the pattern extractor
    #[arg(long)]
    from_text: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Gold phenotype file (JSON Lines)
    #[arg(long)]
    gold: PathBuf,
    /// Predicted phenotype file (JSON Lines)
    #[arg(long)]
    pred: PathBuf,
    /// Variant to score (repeatable); defaults to all seven
    #[arg(long = "variant")]
    variants: Vec<String>,
    /// Drop tuples whose stage is cant_determine before scoring
    /// stage-bearing variants
    #[arg(long)]
    exclude_unknown_stage: bool,
    /// Add a per-report count breakdown to each result line
    #[arg(long)]
    per_report: bool,
}

#[derive(Subcommand)]
enum LexiconCommand {
    /// Print the effective lexicon (defaults merged with overrides) in the
    /// config format
    Dump {
        /// Lexicon overrides applied on top of the builtin tables
        #[arg(long)]
        lexicon: Option<PathBuf>,
    },
}

enum CliError {
    /// Bad input data or I/O: exit 1.
    Input(String),
    /// Bad invocation: exit 2.
    Usage(String),
}

impl CliError {
    fn input(context: &str, err: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{context}: {err}"))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Extract(args) => cmd_extract(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Validate { frames } => cmd_validate(&frames),
        Command::Lexicon {
            command: LexiconCommand::Dump { lexicon },
        } => cmd_lexicon_dump(lexicon.as_deref()),
    }
}

fn open(path: &Path) -> Result<File, CliError> {
    File::open(path).map_err(|e| CliError::input(&path.display().to_string(), e))
}

fn load_lexicon(override_path: Option<&Path>) -> Result<Lexicon, CliError> {
    let base = Lexicon::builtin();
    match override_path {
        None => Ok(base),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::input(&path.display().to_string(), e))?;
            base.with_overrides(&text)
                .map_err(|e| CliError::input(&path.display().to_string(), e))
        }
    }
}

fn load_frame_corpus(path: &Path) -> Result<Vec<ReportDocument>, CliError> {
    let loaded = load_reports_lenient(open(path)?)
        .map_err(|e| CliError::input(&path.display().to_string(), e))?;
    let mut reports = Vec::with_capacity(loaded.len());
    let mut finding_count = 0;
    for (report, findings) in loaded {
        for finding in &findings {
            eprintln!("report {:?}: {finding}", report.report_id);
        }
        finding_count += findings.len();
        reports.push(report);
    }
    if finding_count > 0 {
        return Err(CliError::Input(format!(
            "{}: {finding_count} validation finding(s)",
            path.display()
        )));
    }
    Ok(reports)
}

fn cmd_extract(args: ExtractArgs) -> Result<(), CliError> {
    let lexicon = load_lexicon(args.lexicon.as_deref())?;
    let reports: Vec<ReportDocument> = match (&args.input.frames, &args.input.from_text) {
        (Some(path), None) => load_frame_corpus(path)?,
        (None, Some(path)) => {
            let raw = load_raw_reports(open(path)?)
                .map_err(|e| CliError::input(&path.display().to_string(), e))?;
            raw.into_iter()
                .map(|r| {
                    let sentences = r
                        .sentences
                        .iter()
                        .map(|text| {
                            Sentence::new(text.clone(), extract_frames(text, r.modality, &lexicon))
                        })
                        .collect();
                    ReportDocument::new(r.report_id, r.modality, sentences)
                })
                .collect()
        }
        _ => unreachable!("clap enforces exactly one input"),
    };

    let records: Vec<(String, BTreeSet<Phenotype>)> = reports
        .iter()
        .map(|report| (report.report_id.clone(), classify_report(report, &lexicon)))
        .collect();
    for (report_id, phenotypes) in &records {
        eprintln!("report {report_id:?}: {} phenotype(s)", phenotypes.len());
    }

    let out =
        File::create(&args.out).map_err(|e| CliError::input(&args.out.display().to_string(), e))?;
    write_phenotypes(&records, BufWriter::new(out))
        .map_err(|e| CliError::input(&args.out.display().to_string(), e))?;
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let variants: Vec<Variant> = if args.variants.is_empty() {
        Variant::ALL.to_vec()
    } else {
        args.variants
            .iter()
            .map(|name| name.parse::<Variant>().map_err(CliError::Usage))
            .collect::<Result<_, _>>()?
    };

    let gold = load_gold(open(&args.gold)?)
        .map_err(|e| CliError::input(&args.gold.display().to_string(), e))?;
    for warning in &gold.warnings {
        eprintln!("warning: {}: {warning}", args.gold.display());
    }
    let predicted = load_phenotypes(open(&args.pred)?)
        .map_err(|e| CliError::input(&args.pred.display().to_string(), e))?;
    for warning in &predicted.warnings {
        eprintln!("warning: {}: {warning}", args.pred.display());
    }
    let predicted: Vec<(String, BTreeSet<Phenotype>)> = predicted
        .records
        .into_iter()
        .map(|r| (r.report_id, r.phenotypes))
        .collect();

    #[derive(serde::Serialize)]
    struct EvalLine<'a> {
        #[serde(flatten)]
        result: &'a strokepheno::EvalResult,
        #[serde(skip_serializing_if = "Option::is_none")]
        per_report: Option<&'a [strokepheno::eval::ReportCounts]>,
    }

    let options = EvalOptions {
        exclude_unknown_stage: args.exclude_unknown_stage,
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for variant in variants {
        let report = evaluate_detailed(&gold.records, &predicted, variant, options)
            .map_err(|e| CliError::Input(e.to_string()))?;
        if report.result.has_zero_denominator() {
            eprintln!("warning: {variant}: zero denominator, affected metrics reported as 0");
        }
        let line = serde_json::to_string(&EvalLine {
            result: &report.result,
            per_report: args.per_report.then_some(report.per_report.as_slice()),
        })
        .map_err(|e| CliError::Input(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| CliError::input("stdout", e))?;
    }
    Ok(())
}

fn cmd_validate(path: &Path) -> Result<(), CliError> {
    let loaded = load_reports_lenient(open(path)?)
        .map_err(|e| CliError::input(&path.display().to_string(), e))?;
    let mut finding_count = 0;
    for (report, findings) in &loaded {
        for finding in findings {
            println!("report {:?}: {finding}", report.report_id);
        }
        finding_count += findings.len();
    }
    if finding_count > 0 {
        return Err(CliError::Input(format!(
            "{}: {finding_count} validation finding(s) in {} report(s)",
            path.display(),
            loaded.iter().filter(|(_, f)| !f.is_empty()).count()
        )));
    }
    eprintln!(
        "{}: {} report(s), no findings",
        path.display(),
        loaded.len()
    );
    Ok(())
}

fn cmd_lexicon_dump(override_path: Option<&Path>) -> Result<(), CliError> {
    let lexicon = load_lexicon(override_path)?;
    print!("{}", lexicon.to_config_string());
    Ok(())
}
