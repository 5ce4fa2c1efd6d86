//! The `subfact` command-line tool.
//!
//! Exit codes: 0 success (or equivalent languages for `diff`), 1 languages
//! differ, 2 unreadable or malformed input, 3 semantic error.

pub mod corpus;
pub mod manifest;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use subfact::{
    learn, oracle, subfactors_k, Factor, FeatureSystem, Grammar, LearnConfig, LearnStats,
    OrderType, TraceEvent, WordModel,
};

use crate::corpus::{read_corpus, word_lines};
use crate::manifest::{RunManifest, FORMAT_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIFFERENT: i32 = 1;
pub const EXIT_SYNTAX: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "subfact",
    version,
    about = "Learn forbidden-factor grammars from positive data"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct LearnArgs {
    /// Feature table file.
    table: PathBuf,
    /// Corpus file, one word per line.
    corpus: PathBuf,
    #[arg(long, default_value = "successor")]
    order: OrderType,
    /// Maximum factor size in positions.
    #[arg(long)]
    k: usize,
    /// Also consider factors whose positions no symbol can realize.
    #[arg(long)]
    no_prune_unrealizable: bool,
    /// Write the grammar here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Learn the most general grammar covering a corpus.
    Learn {
        #[command(flatten)]
        args: LearnArgs,
        /// Print every queue event to standard error.
        #[arg(long)]
        trace: bool,
    },
    /// Compute the same grammar by exhaustive enumeration.
    OracleLearn {
        #[command(flatten)]
        args: LearnArgs,
    },
    /// Read words from standard input and report ACCEPT or REJECT for each.
    Check { table: PathBuf, grammar: PathBuf },
    /// List the subfactors of a word up to size k.
    Factors {
        table: PathBuf,
        word: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "successor")]
        order: OrderType,
    },
    /// Compare two grammars by forbidden factors and bounded languages.
    Diff {
        table: PathBuf,
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 6)]
        upto: usize,
    },
}

/// A failed command: exit code plus message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn syntax(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_SYNTAX,
            message: message.into(),
        }
    }

    fn semantic(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_SEMANTIC,
            message: message.into(),
        }
    }

    fn from_core(context: &Path, e: subfact::Error) -> Self {
        let message = format!("{}: {e}", context.display());
        if e.is_syntax() {
            Failure::syntax(message)
        } else {
            Failure::semantic(message)
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        Failure::syntax(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the tool with explicit streams and returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_SYNTAX
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Learn { args, trace } => cmd_learn(&args, trace, stdout, stderr),
        Command::OracleLearn { args } => cmd_oracle_learn(&args, stdout),
        Command::Check { table, grammar } => cmd_check(&table, &grammar, stdin, stdout),
        Command::Factors {
            table,
            word,
            k,
            order,
        } => cmd_factors(&table, &word, k, order, stdout),
        Command::Diff {
            table,
            first,
            second,
            upto,
        } => cmd_diff(&table, &first, &second, upto, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(stderr, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::syntax(format!("{}: {e}", path.display())))
}

fn load_table(path: &Path) -> Result<Arc<FeatureSystem>, Failure> {
    let text = read(path)?;
    FeatureSystem::from_table(&text)
        .map(Arc::new)
        .map_err(|e| Failure::from_core(path, e))
}

fn load_corpus(
    path: &Path,
    fs: &FeatureSystem,
    stderr: &mut dyn Write,
) -> Result<Vec<subfact::Word>, Failure> {
    let text = read(path)?;
    let words = read_corpus(&text, fs).map_err(|e| {
        let message = format!("{}: {e}", path.display());
        if e.source.is_syntax() {
            Failure::syntax(message)
        } else {
            Failure::semantic(message)
        }
    })?;
    if words.is_empty() {
        writeln!(
            stderr,
            "warning: {} contains no words; the learned grammar rejects everything",
            path.display()
        )?;
    }
    Ok(words)
}

fn load_grammar(path: &Path, fs: Arc<FeatureSystem>) -> Result<Grammar, Failure> {
    let text = read(path)?;
    Grammar::from_json(&text, fs).map_err(|e| Failure::from_core(path, e))
}

fn emit(text: &str, output: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::syntax(format!("{}: {e}", path.display())))
        }
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn render_or_empty(f: &Factor, fs: &FeatureSystem) -> String {
    let text = f.render(fs);
    if text.is_empty() {
        "ε".to_string()
    } else {
        text
    }
}

#[derive(Serialize)]
struct StatsBlock<'a> {
    manifest: &'a RunManifest,
    stats: &'a LearnStats,
}

fn cmd_learn(
    args: &LearnArgs,
    trace: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CmdResult {
    let manifest = RunManifest {
        format_version: FORMAT_VERSION.to_string(),
        feature_table: args.table.display().to_string(),
        corpus: args.corpus.display().to_string(),
        order: args.order,
        k: args.k,
        prune_unrealizable: !args.no_prune_unrealizable,
        trace,
        output: args.output.as_ref().map(|p| p.display().to_string()),
    };
    manifest.validate().map_err(Failure::syntax)?;

    let fs = load_table(&args.table)?;
    let data = load_corpus(&args.corpus, &fs, stderr)?;
    let cfg = LearnConfig::new(args.k)
        .with_pruning(manifest.prune_unrealizable)
        .with_trace(trace);
    let learned = learn(&data, fs.clone(), args.order, cfg)
        .map_err(|e| Failure::from_core(&args.corpus, e))?;

    emit(&learned.grammar.to_json(), args.output.as_deref(), stdout)?;

    for event in &learned.trace {
        let (tag, f) = match event {
            TraceEvent::Enqueue(f) => ("enqueue", f),
            TraceEvent::Dequeue(f) => ("dequeue", f),
            TraceEvent::Forbid(f) => ("forbid", f),
        };
        writeln!(stderr, "{tag}\t{}", render_or_empty(f, &fs))?;
    }
    let block = StatsBlock {
        manifest: &manifest,
        stats: &learned.stats,
    };
    let json = serde_json::to_string_pretty(&block).expect("stats serialize");
    writeln!(stderr, "{json}")?;
    Ok(EXIT_OK)
}

fn cmd_oracle_learn(args: &LearnArgs, stdout: &mut dyn Write) -> CmdResult {
    let fs = load_table(&args.table)?;
    let data = load_corpus(&args.corpus, &fs, &mut std::io::sink())?;
    let grammar = oracle::naive_learn(&data, fs, args.order, args.k, !args.no_prune_unrealizable)
        .map_err(|e| Failure::from_core(&args.corpus, e))?;
    emit(&grammar.to_json(), args.output.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

fn cmd_check(
    table: &Path,
    grammar: &Path,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
) -> CmdResult {
    let fs = load_table(table)?;
    let grammar = load_grammar(grammar, fs.clone())?;
    let mut input = String::new();
    stdin.read_to_string(&mut input)?;

    let mut code = EXIT_OK;
    for (_, line) in word_lines(&input) {
        match fs.parse_word(line) {
            Ok(word) => match grammar.violation(&word) {
                None => writeln!(stdout, "{line}\tACCEPT")?,
                Some(f) => writeln!(stdout, "{line}\tREJECT\t{}", render_or_empty(f, &fs))?,
            },
            Err(e) => {
                writeln!(stdout, "{line}\tERROR\t{e}")?;
                code = EXIT_SEMANTIC;
            }
        }
    }
    Ok(code)
}

fn cmd_factors(
    table: &Path,
    word: &str,
    k: usize,
    order: OrderType,
    stdout: &mut dyn Write,
) -> CmdResult {
    let fs = load_table(table)?;
    let word = fs
        .parse_word(word)
        .map_err(|e| Failure::semantic(e.to_string()))?;
    let model = WordModel::new(&fs, &word, order);
    let mut factors: Vec<(usize, String)> = subfactors_k(&model, k)
        .iter()
        .map(|f| f.sort_key(&fs))
        .collect();
    factors.sort();
    for (_, text) in factors {
        writeln!(stdout, "{}", if text.is_empty() { "ε" } else { &text })?;
    }
    Ok(EXIT_OK)
}

fn cmd_diff(
    table: &Path,
    first: &Path,
    second: &Path,
    upto: usize,
    stdout: &mut dyn Write,
) -> CmdResult {
    let fs = load_table(table)?;
    let a = load_grammar(first, fs.clone())?;
    let b = load_grammar(second, fs.clone())?;

    let texts = |g: &Grammar| -> BTreeSet<(usize, String)> {
        g.forbidden().iter().map(|f| f.sort_key(&fs)).collect()
    };
    let (fa, fb) = (texts(&a), texts(&b));
    let language = |g: &Grammar| -> Result<BTreeSet<Vec<subfact::SymbolId>>, Failure> {
        Ok(g.language_up_to(upto)
            .map_err(|e| Failure::semantic(e.to_string()))?
            .into_iter()
            .collect())
    };
    let (la, lb) = (language(&a)?, language(&b)?);

    let mut section = |title: &str, items: Vec<String>| -> std::io::Result<()> {
        writeln!(stdout, "{title}: {}", items.len())?;
        for item in items {
            writeln!(stdout, "  {item}")?;
        }
        Ok(())
    };
    let only = |x: &BTreeSet<(usize, String)>, y: &BTreeSet<(usize, String)>| {
        x.difference(y)
            .map(|(_, t)| {
                if t.is_empty() {
                    "ε".to_string()
                } else {
                    t.clone()
                }
            })
            .collect::<Vec<_>>()
    };
    let words_only = |x: &BTreeSet<Vec<subfact::SymbolId>>,
                      y: &BTreeSet<Vec<subfact::SymbolId>>| {
        let mut ws: Vec<&Vec<subfact::SymbolId>> = x.difference(y).collect();
        ws.sort_by_key(|w| (w.len(), (*w).clone()));
        ws.into_iter()
            .map(|w| {
                let t = fs.render_word(w);
                if t.is_empty() {
                    "λ".to_string()
                } else {
                    t
                }
            })
            .collect::<Vec<_>>()
    };
    section("forbidden factors only in first", only(&fa, &fb))?;
    section("forbidden factors only in second", only(&fb, &fa))?;
    section(
        &format!("words up to length {upto} accepted only by first"),
        words_only(&la, &lb),
    )?;
    section(
        &format!("words up to length {upto} accepted only by second"),
        words_only(&lb, &la),
    )?;
    if la == lb {
        writeln!(stdout, "languages agree up to length {upto}")?;
        Ok(EXIT_OK)
    } else {
        writeln!(stdout, "languages differ up to length {upto}")?;
        Ok(EXIT_DIFFERENT)
    }
}
