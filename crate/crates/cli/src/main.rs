//! `newsform`: extract NewsForms from text, validate them, and query a corpus.

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use newsform::padoof::{build_index, corpus_files, geo_distribution, parse_query, query, stats, Bucket, CorpusIndex};
use newsform::pipeline::debug_dump;
use newsform::rules::{Extraction, KbError, ResourceError, Resources};
use newsform::xmlcodec::write_node;
use newsform::{parse_newsform, serialize_newsform, EventKind};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "newsform", version, about = "Structured news events from text")]
struct Cli {
    /// Resource root holding lexicons/, rules/ and kb/.
    #[arg(long, global = true, env = "NEWSFORM_DATA", value_name = "DIR")]
    data: Option<PathBuf>,
    #[arg(long, global = true, value_name = "DIR")]
    lexicons: Option<PathBuf>,
    #[arg(long, global = true, value_name = "DIR")]
    rules: Option<PathBuf>,
    #[arg(long, global = true, value_name = "DIR")]
    kb: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert text stories into NewsForm XML. `-` reads standard input.
    Extract {
        /// Print the token, noun group and mention dump before the XML.
        #[arg(long)]
        debug: bool,
        /// Print diagnostics and rule fragments to standard error.
        #[arg(long)]
        review: bool,
        #[arg(default_value = "-")]
        inputs: Vec<String>,
    },
    /// Check NewsForm XML files against the schema.
    Validate {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Run a field query over a directory of `.newsform.xml` files.
    Query { corpus: PathBuf, query: String },
    /// Count events of one variant per day or week.
    Stats {
        corpus: PathBuf,
        variant: String,
        #[arg(default_value = "day")]
        bucket: String,
    },
    /// Positive/negative/other tallies per country.
    Geo {
        corpus: PathBuf,
        #[arg(default_value = "*")]
        query: String,
    },
}

/// A run that ended early, with its exit status.
enum Failure {
    Findings,
    Resource(anyhow::Error),
    Syntax(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Findings => 1,
            Failure::Resource(_) => 2,
            Failure::Syntax(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Resource(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Resource(e.into())
    }
}

type Run = Result<(), Failure>;

fn default_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn load_resources(cli: &Cli) -> Result<Resources, Failure> {
    let root = cli.data.clone().unwrap_or_else(default_root);
    let dirs = [
        ("lexicon", cli.lexicons.clone().unwrap_or_else(|| root.join("lexicons"))),
        ("rules", cli.rules.clone().unwrap_or_else(|| root.join("rules"))),
        ("kb", cli.kb.clone().unwrap_or_else(|| root.join("kb"))),
    ];
    for (what, dir) in &dirs {
        if !dir.is_dir() {
            return Err(Failure::Resource(anyhow::anyhow!("{what} directory not found: {}", dir.display())));
        }
    }
    Resources::load(&dirs[0].1, &dirs[1].1, &dirs[2].1).map_err(|e| match e {
        ResourceError::Rule(_) | ResourceError::Kb(KbError::Line { .. }) => Failure::Syntax(e.to_string()),
        other => Failure::Resource(other.into()),
    })
}

fn read_input(name: &str) -> anyhow::Result<String> {
    if name == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(name).with_context(|| format!("reading {name}"))
    }
}

fn review_lines(run: &Extraction) -> String {
    let mut out = String::new();
    for d in &run.diagnostics {
        out.push_str(&format!("{d}\n"));
    }
    for f in &run.fragments {
        let xml = write_node(&f.event.to_node());
        let xml: String = xml.lines().map(str::trim).collect();
        out.push_str(&format!(
            "fragment\t{}\tsentence {}\ttokens {}..{}\t{}\n",
            f.rule_id,
            f.sentence_index,
            f.tokens.start,
            f.tokens.end,
            xml
        ));
    }
    out
}

fn cmd_extract(cli: &Cli, debug: bool, review: bool, inputs: &[String]) -> Run {
    let res = load_resources(cli)?;
    let texts = inputs.iter().map(|n| read_input(n)).collect::<anyhow::Result<Vec<_>>>()?;
    let outputs: Vec<(String, String)> = texts
        .par_iter()
        .map(|text| {
            let run = res.extract(text);
            let mut out = String::new();
            if debug {
                out.push_str(&debug_dump(&run.parses));
            }
            out.push_str(&serialize_newsform(&run.form).expect("extracted forms validate"));
            let err = if review { review_lines(&run) } else { String::new() };
            (out, err)
        })
        .collect();
    let mut stdout = io::stdout().lock();
    for (out, err) in outputs {
        eprint!("{err}");
        stdout.write_all(out.as_bytes())?;
    }
    Ok(())
}

fn cmd_validate(files: &[String]) -> Run {
    let mut stdout = io::stdout().lock();
    let mut findings = false;
    for name in files {
        let text = read_input(name)?;
        let (errors, warnings) = match parse_newsform(&text) {
            Ok(doc) => {
                let report = doc.validate();
                for w in &report.warnings {
                    eprintln!("{name}: warning: {w}");
                }
                for e in &report.errors {
                    eprintln!("{name}: {e}");
                }
                (report.errors.len(), report.warnings.len())
            }
            Err(e) => {
                eprintln!("{name}: {e}");
                (1, 0)
            }
        };
        findings |= errors > 0;
        let status = if errors > 0 { "invalid" } else { "ok" };
        writeln!(stdout, "{name}\t{status}\t{errors} errors\t{warnings} warnings")?;
    }
    if findings {
        Err(Failure::Findings)
    } else {
        Ok(())
    }
}

fn load_corpus(dir: &Path) -> Result<CorpusIndex, Failure> {
    let files = corpus_files(dir).with_context(|| format!("reading corpus {}", dir.display()))?;
    let (ix, diags) = build_index(&files);
    for d in diags {
        eprintln!("skipped {d}");
    }
    Ok(ix)
}

fn parse(q: &str) -> Result<newsform::Query, Failure> {
    parse_query(q).map_err(|e| Failure::Syntax(e.to_string()))
}

fn cmd_query(corpus: &Path, q: &str) -> Run {
    let q = parse(q)?;
    let ix = load_corpus(corpus)?;
    let mut stdout = io::stdout().lock();
    for hit in query(&ix, &q) {
        writeln!(stdout, "{}", hit.line())?;
    }
    Ok(())
}

fn cmd_stats(corpus: &Path, variant: &str, bucket: &str) -> Run {
    let kind: EventKind = variant.parse().map_err(|_| Failure::Syntax(format!("unknown event variant `{variant}`")))?;
    let bucket: Bucket = bucket.parse().map_err(Failure::Syntax)?;
    let ix = load_corpus(corpus)?;
    let s = stats(&ix, kind, bucket);
    let mut stdout = io::stdout().lock();
    for (day, n) in &s.buckets {
        writeln!(stdout, "{day}\t{n}")?;
    }
    writeln!(stdout, "UNDATED\t{}", s.undated)?;
    Ok(())
}

fn cmd_geo(corpus: &Path, q: &str) -> Run {
    let q = parse(q)?;
    let ix = load_corpus(corpus)?;
    write!(io::stdout().lock(), "{}", geo_distribution(&ix, &q))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Extract { debug, review, inputs } => cmd_extract(&cli, *debug, *review, inputs),
        Command::Validate { files } => cmd_validate(files),
        Command::Query { corpus, query } => cmd_query(corpus, query),
        Command::Stats { corpus, variant, bucket } => cmd_stats(corpus, variant, bucket),
        Command::Geo { corpus, query } => cmd_geo(corpus, query),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Findings => {}
                Failure::Resource(e) => eprintln!("error: {e:#}"),
                Failure::Syntax(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
