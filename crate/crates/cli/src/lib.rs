//! The `emlex` command line: one subcommand per analysis step, TSV or JSON
//! on stdout, diagnostics on stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use emlex::analytics::{
    annotate_with, length_distribution, pronoun_census, punctuation_census, suffix_table, unknown_words,
    AnnotationIndex, Report, TABLE6_SUFFIXES,
};
use emlex::config::{unescape_marker, AnalysisConfig, ConfigError};
use emlex::corpus::{load_document_with, strip_catchwords, tokenize_with_contractions, CorpusError, LoadOptions, SourceDocument, Token};
use emlex::lexicon::{format_entry, Lexicon, LexiconError};
use emlex::morphology::{Confidence, Normalizer, RuleConfig, TokenNormalization};
use emlex::pattern::{
    affix_query, affix_query_normalized, compile_pattern, format_kwic, kwic, locate_with, AffixKind, MatchOn,
    PatternError,
};
use emlex::{bundled_data_dir, file_digest, BASE_FILE, CONTRACTIONS_FILE, OVERLAY_FILE};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// Directories searched for dictionaries not given on the command line.
pub const DICT_PATH_VAR: &str = "EMLEX_DICT_PATH";

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("config {0}")]
    Config(#[from] ConfigError),
    #[error("pattern: {0}")]
    Pattern(#[from] PatternError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn io(path: impl AsRef<Path>, e: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            message: e.to_string(),
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_INPUT,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "emlex",
    about = "Tokenize, normalize and count 17th-century printed English",
    disable_version_flag = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Print tool and dictionary versions
    #[arg(short = 'V', long, global = true)]
    version: bool,
    /// `key = value` configuration file
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Contemporary base dictionary
    #[arg(long, global = true, value_name = "FILE")]
    dict: Option<PathBuf>,
    /// 17th-century overlay dictionary
    #[arg(long, global = true, value_name = "FILE")]
    overlay: Option<PathBuf>,
    /// Contraction dictionary
    #[arg(long, global = true, value_name = "FILE")]
    contractions: Option<PathBuf>,
    /// Strip catchwords around this page-break marker (`\f` escapes allowed)
    #[arg(long, global = true, value_name = "MARKER")]
    catchwords: Option<String>,
    /// Read invalid UTF-8 input as Latin-1
    #[arg(long, global = true)]
    latin1: bool,
}

#[derive(Debug, Args, Clone, Copy)]
struct TableFormat {
    /// Tab-separated output (default)
    #[arg(long, conflicts_with = "json")]
    tsv: bool,
    /// JSON output
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatsKind {
    Pronouns,
    Lengths,
    Punct,
    Suffixes,
    Unknown,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Split documents into tokens with byte spans and flags
    Tokenize {
        #[arg(required = true, value_name = "CORPUS")]
        corpus: Vec<PathBuf>,
        #[command(flatten)]
        format: TableFormat,
    },
    /// Check, merge or reformat dictionaries
    Dict {
        #[command(subcommand)]
        action: DictCommand,
    },
    /// Contemporary form, candidate, rule and confidence for every token
    Normalize {
        #[arg(required = true, value_name = "CORPUS")]
        corpus: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "tsv")]
        emit: Emit,
    },
    /// Concordance of a token pattern
    Locate {
        /// e.g. `you`, `<N> of`, `<LETTERS+16>`, `<^dis>`, `<ness$>`
        #[arg(long)]
        pattern: String,
        /// Context tokens on each side
        #[arg(long, value_name = "N")]
        kwic: Option<usize>,
        /// Match literals and affixes against normalized forms
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        format: TableFormat,
        #[arg(required = true, value_name = "CORPUS")]
        corpus: Vec<PathBuf>,
    },
    /// Word forms sharing a prefix or suffix
    #[command(group = clap::ArgGroup::new("affix").required(true))]
    Affix {
        #[arg(long, group = "affix")]
        prefix: Option<String>,
        #[arg(long, group = "affix")]
        suffix: Option<String>,
        /// Query normalized forms instead of surfaces
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        format: TableFormat,
        #[arg(required = true, value_name = "CORPUS")]
        corpus: Vec<PathBuf>,
    },
    /// Census reports
    Stats {
        #[arg(value_enum)]
        kind: StatsKind,
        #[arg(required = true, value_name = "CORPUS")]
        corpus: Vec<PathBuf>,
        #[command(flatten)]
        format: TableFormat,
        /// Unknown words against the base dictionary alone, without rules
        #[arg(long)]
        base_only: bool,
        /// Shortest word counted by `lengths`
        #[arg(long, default_value_t = 7)]
        min_letters: usize,
        /// Suffixes for `suffixes` (default: the built-in noun and adjective list)
        #[arg(long = "suffix", value_name = "SUFFIX")]
        suffixes: Vec<String>,
    },
    /// Every analysis of every token, with its provenance
    Annotate {
        #[arg(required = true, value_name = "CORPUS")]
        corpus: Vec<PathBuf>,
        #[command(flatten)]
        format: TableFormat,
    },
}

#[derive(Debug, Subcommand)]
enum DictCommand {
    /// Parse and validate dictionaries
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Merge dictionaries left to right into OUT
    Merge {
        out: PathBuf,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Print a dictionary in canonical form
    Fmt { file: PathBuf },
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let mut text = e.render().to_string();
            if !text.contains("Usage:") {
                text.push_str(&format!("\n{}\n", synopsis(&args)));
            }
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "emlex: {e}");
            if let CliError::Usage(_) = e {
                let _ = writeln!(err, "{}", Cli::command().render_usage());
            }
            e.code()
        }
    }
}

/// Usage line of the subcommand named in `args`, or of the tool.
fn synopsis(args: &[OsString]) -> String {
    let mut cmd = Cli::command();
    cmd.build();
    let found = args
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .find_map(|a| cmd.find_subcommand(a).cloned());
    match found {
        Some(mut sub) => sub.render_usage().to_string(),
        None => cmd.render_usage().to_string(),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let session = Session::new(&cli.global)?;
    if cli.global.version {
        return write(out, &session.version());
    }
    let Some(command) = cli.command else {
        return Err(CliError::Usage("no subcommand given".into()));
    };
    match command {
        Command::Tokenize { corpus, format } => {
            let docs = session.documents(&corpus)?;
            let contractions = session.contractions()?;
            let hash = session.hash()?;
            let reports = docs
                .iter()
                .map(|doc| token_report(doc, &tokenize_with_contractions(doc, &contractions)).with_provenance(&doc.id, &hash))
                .collect::<Vec<_>>();
            emit_all(out, &reports, format)
        }
        Command::Dict { action } => dict(action, out),
        Command::Normalize { corpus, emit } => {
            let docs = session.documents(&corpus)?;
            let (normalizer, contractions) = session.normalizer(false)?;
            let hash = session.hash()?;
            let reports = docs
                .iter()
                .map(|doc| {
                    let tokens = tokenize_with_contractions(doc, &contractions);
                    normalization_report(&normalizer.normalize(&tokens)).with_provenance(&doc.id, &hash)
                })
                .collect::<Vec<_>>();
            let format = TableFormat {
                tsv: emit == Emit::Tsv,
                json: emit == Emit::Json,
            };
            emit_all(out, &reports, format)
        }
        Command::Annotate { corpus, format } => {
            let docs = session.documents(&corpus)?;
            let (normalizer, contractions) = session.normalizer(false)?;
            let hash = session.hash()?;
            let reports = docs
                .iter()
                .map(|doc| {
                    let tokens = tokenize_with_contractions(doc, &contractions);
                    let index = annotate_with(&tokens, &normalizer, "xvii", "contractions");
                    annotation_report(&index).with_provenance(&doc.id, &hash)
                })
                .collect::<Vec<_>>();
            emit_all(out, &reports, format)
        }
        Command::Locate {
            pattern,
            kwic: width,
            normalized,
            format,
            corpus,
        } => {
            let pattern = compile_pattern(&pattern)?;
            let docs = session.documents(&corpus)?;
            let on = if normalized { MatchOn::Normalized } else { MatchOn::Surface };
            let needs_annotations = pattern.uses_pos() || normalized;
            let (normalizer, contractions) = if needs_annotations {
                let (n, c) = session.normalizer(false)?;
                (Some(n), c)
            } else {
                (None, session.contractions()?)
            };
            let width = width.unwrap_or(session.config.kwic_width);
            let mut lines = Vec::new();
            for doc in &docs {
                let tokens = tokenize_with_contractions(doc, &contractions);
                let index = normalizer
                    .as_ref()
                    .map(|n| annotate_with(&tokens, n, "xvii", "contractions"));
                for m in locate_with(&pattern, &tokens, index.as_ref(), on)? {
                    lines.push(kwic(doc, &tokens, m, width));
                }
            }
            if !format.tsv && !format.json {
                return write(out, &format_kwic(&lines));
            }
            let mut report = Report::new(&format!("Concordance of {pattern}"), &["document", "index", "left", "key", "right"])
                .with_provenance(&corpus_id(&docs), &session.hash()?);
            for line in &lines {
                push(
                    &mut report,
                    vec![
                        line.doc_id.clone().into(),
                        line.token_index.into(),
                        line.left_trimmed().into(),
                        line.key.split_whitespace().collect::<Vec<_>>().join(" ").into(),
                        line.right_trimmed().into(),
                    ],
                );
            }
            emit(out, &report, format)
        }
        Command::Affix {
            prefix,
            suffix,
            normalized,
            format,
            corpus,
        } => {
            let (kind, affix) = match (prefix, suffix) {
                (Some(p), None) => (AffixKind::Prefix, p),
                (None, Some(s)) => (AffixKind::Suffix, s),
                _ => return Err(CliError::Usage("give exactly one of --prefix and --suffix".into())),
            };
            let docs = session.documents(&corpus)?;
            let found = if normalized {
                let (normalizer, contractions) = session.normalizer(false)?;
                let (tokens, index) = annotated_corpus(&docs, &normalizer, &contractions);
                affix_query_normalized(kind, &affix, &tokens, &index)?
            } else {
                let tokens = corpus_tokens(&docs, &session.contractions()?);
                affix_query(kind, &affix, &tokens)?
            };
            let title = format!(
                "{} {}: {} forms, {} occurrences",
                kind.as_str(),
                found.affix,
                found.distinct(),
                found.total
            );
            let mut report = Report::new(&title, &["form", "occurrences"]).with_provenance(&corpus_id(&docs), &session.hash()?);
            for (form, n) in &found.forms {
                push(&mut report, vec![form.clone().into(), (*n).into()]);
            }
            push(&mut report, vec!["Total".into(), found.total.into()]);
            emit(out, &report, format)
        }
        Command::Stats {
            kind,
            corpus,
            format,
            base_only,
            min_letters,
            suffixes,
        } => {
            let docs = session.documents(&corpus)?;
            let hash = session.hash()?;
            let report = match kind {
                StatsKind::Punct => {
                    let text = docs.iter().map(|d| d.text.as_str()).collect::<Vec<_>>().join("\n");
                    punctuation_census(&SourceDocument::new(corpus_id(&docs), text))
                }
                StatsKind::Pronouns => pronoun_census(&corpus_tokens(&docs, &session.contractions()?)),
                StatsKind::Lengths => length_distribution(&corpus_tokens(&docs, &session.contractions()?), min_letters),
                StatsKind::Suffixes => {
                    let overlay = session.overlay()?;
                    let tokens = corpus_tokens(&docs, &session.contractions()?);
                    if suffixes.is_empty() {
                        suffix_table(&tokens, &TABLE6_SUFFIXES, &overlay)
                    } else {
                        let list: Vec<&str> = suffixes.iter().map(String::as_str).collect();
                        suffix_table(&tokens, &list, &overlay)
                    }
                }
                StatsKind::Unknown => {
                    let (normalizer, contractions) = session.normalizer(base_only)?;
                    let (_, index) = annotated_corpus(&docs, &normalizer, &contractions);
                    unknown_words(&index)
                }
            };
            emit(out, &report.with_provenance(&corpus_id(&docs), &hash), format)
        }
    }
}

/// Resolved configuration and dictionary locations for one invocation.
struct Session {
    config: AnalysisConfig,
    base: PathBuf,
    overlay: PathBuf,
    contractions: PathBuf,
    latin1: bool,
}

impl Session {
    fn new(opts: &GlobalOpts) -> Result<Self> {
        let mut config = match &opts.config {
            Some(path) => AnalysisConfig::load(path)?,
            None => AnalysisConfig::default(),
        };
        if let Some(marker) = &opts.catchwords {
            config.catchword_marker = (!marker.is_empty()).then(|| unescape_marker(marker));
        }
        let session = Session {
            config,
            base: resolve(opts.dict.as_deref(), BASE_FILE),
            overlay: resolve(opts.overlay.as_deref(), OVERLAY_FILE),
            contractions: resolve(opts.contractions.as_deref(), CONTRACTIONS_FILE),
            latin1: opts.latin1,
        };
        for path in [&session.base, &session.overlay, &session.contractions] {
            if !path.is_file() {
                return Err(CliError::io(path, "dictionary not found"));
            }
        }
        Ok(session)
    }

    fn version(&self) -> String {
        let digest = |p: &Path| file_digest(p).unwrap_or_else(|_| "unreadable".into());
        format!(
            "emlex {}\ndata {} {}\ndata {} {}\ndata {} {}\n",
            env!("CARGO_PKG_VERSION"),
            BASE_FILE,
            digest(&self.base),
            OVERLAY_FILE,
            digest(&self.overlay),
            CONTRACTIONS_FILE,
            digest(&self.contractions)
        )
    }

    /// Configuration hash over the canonical settings and the contents of
    /// the dictionaries, so equal hashes mean equal analyses.
    fn hash(&self) -> Result<String> {
        let mut extra = String::new();
        for path in [&self.base, &self.overlay, &self.contractions] {
            extra.push_str(&file_digest(path).map_err(|e| CliError::io(path, e))?);
            extra.push(' ');
        }
        Ok(self.config.hash(&extra))
    }

    /// Loads every corpus path, checking them all before reading any.
    fn documents(&self, paths: &[PathBuf]) -> Result<Vec<SourceDocument>> {
        if let Some(missing) = paths.iter().find(|p| !p.is_file()) {
            return Err(CorpusError::FileNotFound(missing.display().to_string()).into());
        }
        let options = LoadOptions {
            latin1_fallback: self.latin1,
        };
        paths
            .iter()
            .map(|p| {
                let doc = load_document_with(p, &p.display().to_string(), options)?;
                Ok(match &self.config.catchword_marker {
                    Some(marker) => strip_catchwords(&doc, marker),
                    None => doc,
                })
            })
            .collect()
    }

    fn contractions(&self) -> Result<Lexicon> {
        Ok(Lexicon::load(&self.contractions, "contractions")?)
    }

    fn overlay(&self) -> Result<Lexicon> {
        if self.config.overlay {
            Ok(Lexicon::load(&self.overlay, "xvii")?)
        } else {
            Ok(Lexicon::new("xvii"))
        }
    }

    /// The cascade over the configured dictionaries; `base_only` drops the
    /// overlay, the contraction entries and every rule.
    fn normalizer(&self, base_only: bool) -> Result<(Normalizer, Lexicon)> {
        let base = Lexicon::load(&self.base, "base")?;
        let contractions = self.contractions()?;
        if base_only {
            let empty = Lexicon::new("contractions");
            let n = Normalizer::new(&base, &Lexicon::new("xvii"), &empty, RuleConfig::lookup_only())?;
            return Ok((n, contractions));
        }
        let n = Normalizer::new(&base, &self.overlay()?, &contractions, self.config.rules.clone())?;
        Ok((n, contractions))
    }
}

/// A dictionary flag wins; otherwise the first `EMLEX_DICT_PATH` directory
/// holding the file, then the bundled data.
fn resolve(flag: Option<&Path>, file: &str) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(dirs) = std::env::var_os(DICT_PATH_VAR) {
        if let Some(found) = std::env::split_paths(&dirs).map(|d| d.join(file)).find(|p| p.is_file()) {
            return found;
        }
    }
    bundled_data_dir().join(file)
}

fn corpus_id(docs: &[SourceDocument]) -> String {
    docs.iter().map(|d| d.id.as_str()).collect::<Vec<_>>().join(",")
}

fn corpus_tokens(docs: &[SourceDocument], contractions: &Lexicon) -> Vec<Token> {
    docs.iter().flat_map(|d| tokenize_with_contractions(d, contractions)).collect()
}

/// Tokens of all documents with one annotation index over them.
fn annotated_corpus(docs: &[SourceDocument], normalizer: &Normalizer, contractions: &Lexicon) -> (Vec<Token>, AnnotationIndex) {
    let tokens = corpus_tokens(docs, contractions);
    let index = annotate_with(&tokens, normalizer, "xvii", "contractions");
    (tokens, index)
}

fn push(report: &mut Report, row: Vec<emlex::analytics::Cell>) {
    report.push_row(row).expect("row width matches the columns");
}

fn token_report(doc: &SourceDocument, tokens: &[Token]) -> Report {
    let mut r = Report::new(&format!("Tokens of {}", doc.id), &["index", "start", "end", "kind", "flags", "surface"]);
    for (i, t) in tokens.iter().enumerate() {
        push(
            &mut r,
            vec![
                i.into(),
                t.start.into(),
                t.end.into(),
                t.kind.as_str().into(),
                t.flags.names().into(),
                t.surface.clone().into(),
            ],
        );
    }
    r
}

fn normalization_report(rows: &[TokenNormalization]) -> Report {
    let mut r = Report::new(
        "Normalization",
        &["index", "surface", "normalized", "candidate", "rule", "confidence"],
    );
    for n in rows {
        let (candidate, rule, confidence) = if n.absorbed {
            ("-".to_string(), "Absorbed", "-")
        } else if let Some(best) = n.best() {
            (best.result.clone(), best.rule.as_str(), best.confidence.as_str())
        } else if n.known {
            (emlex::lexicon::fold(&n.surface), "Lookup", Confidence::Lexical.as_str())
        } else if let Some(noise) = n.fusion.iter().chain(&n.candidates).next() {
            (noise.result.clone(), noise.rule.as_str(), noise.confidence.as_str())
        } else if n.surface.chars().any(char::is_alphabetic) {
            ("-".to_string(), "-", "Unknown")
        } else {
            ("-".to_string(), "-", "-")
        };
        push(
            &mut r,
            vec![
                n.index.into(),
                n.surface.clone().into(),
                n.normalized.clone().into(),
                candidate.into(),
                rule.into(),
                confidence.into(),
            ],
        );
    }
    r
}

fn annotation_report(index: &AnnotationIndex) -> Report {
    let mut r = Report::new("Annotations", &["index", "surface", "normalized", "analyses"]);
    for t in index.tokens() {
        let analyses = t
            .analyses
            .iter()
            .map(|a| format!("{}/{}/{}", a.lemma, a.pos, a.provenance))
            .collect::<Vec<_>>()
            .join(";");
        push(
            &mut r,
            vec![
                t.index.into(),
                t.surface.clone().into(),
                t.normalized.clone().into(),
                (if analyses.is_empty() { "-".to_string() } else { analyses }).into(),
            ],
        );
    }
    r
}

fn dict(action: DictCommand, out: &mut dyn Write) -> Result<()> {
    let load = |p: &Path| Lexicon::load(p, &p.display().to_string());
    match action {
        DictCommand::Check { files } => {
            for f in &files {
                let lex = load(f)?;
                write(out, &format!("{}\t{} entries\tok\n", f.display(), lex.len()))?;
            }
            Ok(())
        }
        DictCommand::Merge { out: target, inputs } => {
            let parts = inputs.iter().map(|p| load(p)).collect::<std::result::Result<Vec<_>, _>>()?;
            let merged = Lexicon::merge_all(&parts)?;
            std::fs::write(&target, canonical(&merged)).map_err(|e| CliError::io(&target, e))?;
            write(out, &format!("{}\t{} entries\tmerged\n", target.display(), merged.len()))
        }
        DictCommand::Fmt { file } => write(out, &canonical(&load(&file)?)),
    }
}

fn canonical(lex: &Lexicon) -> String {
    let mut text = String::new();
    for e in lex.entries() {
        text.push_str(&format_entry(e));
        text.push('\n');
    }
    text
}

fn write(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn emit(out: &mut dyn Write, report: &Report, format: TableFormat) -> Result<()> {
    if format.json {
        write(out, &format!("{}\n", report.to_json()))
    } else {
        write(out, &report.to_tsv())
    }
}

/// One report per document; several JSON reports form an array.
fn emit_all(out: &mut dyn Write, reports: &[Report], format: TableFormat) -> Result<()> {
    match reports {
        [one] => emit(out, one, format),
        many if format.json => {
            let json = serde_json::to_string_pretty(many).expect("reports serialize");
            write(out, &format!("{json}\n"))
        }
        many => many.iter().try_for_each(|r| emit(out, r, format)),
    }
}
