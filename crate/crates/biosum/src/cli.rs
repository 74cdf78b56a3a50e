//! Command-line wiring: corpus statistics, classifier training, world-stats
//! ingestion, end-to-end summarization, and batch evaluation. Every run is
//! reproducible — identical inputs, configuration, and seed give byte-identical
//! outputs — and every failure exits with a machine-parseable one-line error.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::classify::{
    build_saliency_lexicons, evaluate_classifier, extract_features, load_nb, nb_classify,
    nb_train, saliency_features, save_lexicons, save_nb, save_svm, save_tree, svm_predict,
    svm_train, tree_predict, tree_train, ClassifyError, FeatureConfig, FeatureMode,
    FeatureVector, HypernymLexicon, Label, ModelMeta, TaskKind, TwoClassLabel,
};
use crate::corpus::{corpus_stats, load_corpus_dir, split_corpus, CorpusError, LabeledSentence};
use crate::extract::{
    load_world_stats, save_world_stats, summarize, Document, ExtractError, SummarizeConfig,
    TermStats,
};
use crate::rouge::{bootstrap_ci, rouge_l, rouge_n, RougeError};
use crate::stopwords::Stopwords;
use crate::textproc::{attach_pos, parse_pos_sidecar, PersonName, TextprocError};

/// Two-class SVM training hyperparameters; fixed, recorded in the model file.
const SVM_REG: f64 = 0.01;
const SVM_EPOCHS: usize = 200;
/// Decision-tree growth limits for the two-class model.
const TREE_MAX_DEPTH: usize = 8;
const TREE_MIN_LEAF: usize = 1;
/// Saliency-lexicon mining thresholds.
const LEXICON_MIN_COUNT: u64 = 1;
const LEXICON_PURITY: f64 = 0.75;

/// Errors grouped by exit code: usage (1), input/format (2), internal
/// invariant violation (3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    /// Single-line stderr rendering with the machine-parseable prefix.
    pub fn render(&self) -> String {
        let (tag, message) = match self {
            CliError::Usage(m) => ("usage", m),
            CliError::Input(m) => ("input", m),
            CliError::Internal(m) => ("internal", m),
        };
        let one_line = message.split_whitespace().collect::<Vec<_>>().join(" ");
        format!("error[{tag}]: {one_line}")
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ExtractError> for CliError {
    fn from(e: ExtractError) -> Self {
        match e {
            // The budget is validated before the pipeline runs, so this
            // firing later means the wiring is broken.
            ExtractError::InvalidBudget(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<TextprocError> for CliError {
    fn from(e: TextprocError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<RougeError> for CliError {
    fn from(e: RougeError) -> Self {
        match e {
            RougeError::InvalidOrder | RougeError::InvalidResamples => {
                CliError::Usage(e.to_string())
            }
            RougeError::NoReferences | RougeError::EmptyScores => CliError::Input(e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            ClassifyError::EmptyTrainingData
            | ClassifyError::SingleLabelData
            | ClassifyError::PosUnavailable
            | ClassifyError::HypernymFormat { .. }
            | ClassifyError::OverlappingLexicons { .. }
            | ClassifyError::ModelFormat { .. }
            | ClassifyError::Io { .. } => CliError::Input(e.to_string()),
            // These indicate our own wiring fed inconsistent data.
            ClassifyError::LabelOutsideTask { .. }
            | ClassifyError::LengthMismatch { .. }
            | ClassifyError::EmptyGoldSet { .. } => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "biosum",
    version,
    about = "Biography-focused sentence classification and byte-budgeted summarization"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print per-category span counts for an annotated corpus directory.
    CorpusStats {
        /// Directory of annotated .txt files.
        corpus_dir: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Train classifiers on an annotated corpus and write model files.
    Train {
        /// Directory of annotated .txt files.
        corpus_dir: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Count stems across a directory of plain text into a world-statistics
    /// file.
    BuildWorldStats {
        /// Directory of plain .txt files.
        text_dir: PathBuf,
        /// Output path for the statistics file.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Summarize a directory of articles about one person to standard output.
    Summarize {
        /// Directory of plain .txt articles (optional DATE: first line).
        docs_dir: PathBuf,
        /// The person the summary is about, e.g. "Lance Armstrong".
        person: String,
        /// Write a structured sidecar (effective config + per-sentence
        /// provenance and scores) to this path.
        #[arg(long, value_name = "PATH")]
        sidecar: Option<PathBuf>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Score candidate summaries against references matched by file name.
    Rouge {
        /// Directory of candidate .txt files.
        candidates_dir: PathBuf,
        /// Directory of reference .txt files.
        references_dir: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args, Debug, Clone, Default)]
struct CommonOpts {
    /// Key=value configuration file; command-line flags override its entries.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Classification task: "ten" (categories) or "two" (biography-worthy).
    #[arg(long, value_name = "TASK")]
    task: Option<String>,
    /// Feature mode: "unigram", "bigram", or "stem".
    #[arg(long, value_name = "MODE")]
    features: Option<String>,
    /// Augment features with part-of-speech tags read from .pos sidecars.
    #[arg(long)]
    pos: bool,
    /// Word-to-hypernym lexicon file enabling back-off features.
    #[arg(long, value_name = "PATH")]
    hypernyms: Option<PathBuf>,
    /// Summary byte budget.
    #[arg(long, value_name = "N")]
    budget: Option<usize>,
    /// Candidate pool size for redundancy removal (default: automatic).
    #[arg(long, value_name = "N")]
    pool_k: Option<usize>,
    /// Seed for corpus splitting, training, and bootstrap resampling.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// World-statistics file (see build-world-stats).
    #[arg(long, value_name = "PATH")]
    world: Option<PathBuf>,
    /// Model file: written by train, read by summarize.
    #[arg(long, value_name = "PATH")]
    model: Option<PathBuf>,
    /// Stopword list file, one word per line (default: bundled list).
    #[arg(long, value_name = "PATH")]
    stopwords: Option<PathBuf>,
    /// Fraction of sentences used for training; the rest is held out.
    #[arg(long, value_name = "F")]
    train_fraction: Option<f64>,
    /// Bootstrap resample count for confidence intervals.
    #[arg(long, value_name = "N")]
    resamples: Option<usize>,
    /// Score n-gram overlap of this order instead of subsequence overlap.
    #[arg(long, value_name = "N")]
    ngram: Option<usize>,
    /// Weight of hypernym back-off features, in (0, 1].
    #[arg(long, value_name = "W")]
    hypernym_weight: Option<f64>,
    /// Redundancy-removal similarity floor in [0, 1] (default: none).
    #[arg(long, value_name = "S")]
    min_similarity: Option<f64>,
}

/// The merged, validated configuration a command runs under.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: TaskKind,
    pub mode: FeatureMode,
    pub pos: bool,
    pub hypernyms: Option<PathBuf>,
    pub hypernym_weight: f64,
    pub budget: usize,
    pub pool_k: Option<usize>,
    pub seed: u64,
    pub world: Option<PathBuf>,
    pub model: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub train_fraction: f64,
    pub resamples: usize,
    pub ngram: Option<usize>,
    pub min_similarity: Option<f64>,
}

const CONFIG_KEYS: &[&str] = &[
    "task",
    "features",
    "pos",
    "hypernyms",
    "budget",
    "pool-k",
    "seed",
    "world",
    "model",
    "stopwords",
    "train-fraction",
    "resamples",
    "ngram",
    "hypernym-weight",
    "min-similarity",
];

fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let content = std::fs::read_to_string(path).map_err(|e| {
        CliError::Input(format!("failed to read config {}: {e}", path.display()))
    })?;
    let mut map = BTreeMap::new();
    for (i, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key=value, got {raw:?}", i + 1))
        })?;
        let key = key.trim();
        if !CONFIG_KEYS.contains(&key) {
            return Err(CliError::Usage(format!("config line {}: unknown key {key:?}", i + 1)));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T, CliError> {
    raw.parse::<T>()
        .map_err(|_| CliError::Usage(format!("invalid value {raw:?} for {key}")))
}

fn parse_mode(raw: &str) -> Result<FeatureMode, CliError> {
    FeatureMode::from_name(raw).ok_or_else(|| {
        CliError::Usage(format!(
            "invalid value {raw:?} for features (expected unigram, bigram, or stem)"
        ))
    })
}

/// Merges command-line flags over config-file entries over defaults, then
/// validates ranges.
fn resolve_config(opts: &CommonOpts) -> Result<RunConfig, CliError> {
    let file = match &opts.config {
        Some(path) => parse_config_file(path)?,
        None => BTreeMap::new(),
    };
    // A flag wins over a file entry; a file entry wins over the default.
    fn pick<T, E>(
        flag: Option<T>,
        file: Option<&String>,
        key: &str,
        parse: impl Fn(&str, &str) -> Result<T, E>,
    ) -> Result<Option<T>, E> {
        match (flag, file) {
            (Some(v), _) => Ok(Some(v)),
            (None, Some(raw)) => parse(key, raw).map(Some),
            (None, None) => Ok(None),
        }
    }

    let task = match (&opts.task, file.get("task")) {
        (Some(raw), _) | (None, Some(raw)) => parse_value::<TaskKind>("task", raw)?,
        (None, None) => TaskKind::TwoClass,
    };
    let mode = match (&opts.features, file.get("features")) {
        (Some(raw), _) | (None, Some(raw)) => parse_mode(raw)?,
        (None, None) => FeatureMode::Unigram,
    };
    let pos = opts.pos
        || file.get("pos").map(|raw| parse_value::<bool>("pos", raw)).transpose()?.unwrap_or(false);
    let path_of = |_: &str, raw: &str| -> Result<PathBuf, CliError> { Ok(PathBuf::from(raw)) };

    let config = RunConfig {
        task,
        mode,
        pos,
        hypernyms: pick(opts.hypernyms.clone(), file.get("hypernyms"), "hypernyms", path_of)?,
        hypernym_weight: pick(
            opts.hypernym_weight,
            file.get("hypernym-weight"),
            "hypernym-weight",
            parse_value,
        )?
        .unwrap_or(0.1),
        budget: pick(opts.budget, file.get("budget"), "budget", parse_value)?.unwrap_or(665),
        pool_k: pick(opts.pool_k, file.get("pool-k"), "pool-k", parse_value)?,
        seed: pick(opts.seed, file.get("seed"), "seed", parse_value)?.unwrap_or(0),
        world: pick(opts.world.clone(), file.get("world"), "world", path_of)?,
        model: pick(opts.model.clone(), file.get("model"), "model", path_of)?,
        stopwords: pick(opts.stopwords.clone(), file.get("stopwords"), "stopwords", path_of)?,
        train_fraction: pick(
            opts.train_fraction,
            file.get("train-fraction"),
            "train-fraction",
            parse_value,
        )?
        .unwrap_or(0.8),
        resamples: pick(opts.resamples, file.get("resamples"), "resamples", parse_value)?
            .unwrap_or(1000),
        ngram: pick(opts.ngram, file.get("ngram"), "ngram", parse_value)?,
        min_similarity: pick(
            opts.min_similarity,
            file.get("min-similarity"),
            "min-similarity",
            parse_value,
        )?,
    };

    if config.budget == 0 {
        return Err(CliError::Usage("budget must be at least 1".to_string()));
    }
    if config.pool_k == Some(0) {
        return Err(CliError::Usage("pool-k must be at least 1".to_string()));
    }
    if !(config.train_fraction > 0.0 && config.train_fraction < 1.0) {
        return Err(CliError::Usage(format!(
            "train-fraction must be strictly between 0 and 1, got {}",
            config.train_fraction
        )));
    }
    if config.resamples == 0 {
        return Err(CliError::Usage("resamples must be at least 1".to_string()));
    }
    if config.ngram == Some(0) {
        return Err(CliError::Usage("ngram must be at least 1".to_string()));
    }
    if !(config.hypernym_weight > 0.0 && config.hypernym_weight <= 1.0) {
        return Err(CliError::Usage(format!(
            "hypernym-weight must be in (0, 1], got {}",
            config.hypernym_weight
        )));
    }
    if config.min_similarity.is_some_and(|s| !(0.0..=1.0).contains(&s)) {
        return Err(CliError::Usage("min-similarity must be in [0, 1]".to_string()));
    }
    Ok(config)
}

impl RunConfig {
    /// Stable key=value rendering, echoed into sidecars and reports so
    /// every output records the configuration that produced it.
    pub fn echo(&self) -> String {
        let path = |p: &Option<PathBuf>| {
            p.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "-".to_string())
        };
        let mut out = String::new();
        out.push_str(&format!("budget={}\n", self.budget));
        out.push_str(&format!("features={}\n", self.mode.name()));
        out.push_str(&format!("hypernym-weight={}\n", self.hypernym_weight));
        out.push_str(&format!("hypernyms={}\n", path(&self.hypernyms)));
        out.push_str(&format!(
            "min-similarity={}\n",
            self.min_similarity.map(|s| s.to_string()).unwrap_or_else(|| "-".to_string())
        ));
        out.push_str(&format!("model={}\n", path(&self.model)));
        out.push_str(&format!(
            "ngram={}\n",
            self.ngram.map(|n| n.to_string()).unwrap_or_else(|| "-".to_string())
        ));
        out.push_str(&format!(
            "pool-k={}\n",
            self.pool_k.map(|k| k.to_string()).unwrap_or_else(|| "auto".to_string())
        ));
        out.push_str(&format!("pos={}\n", self.pos));
        out.push_str(&format!("resamples={}\n", self.resamples));
        out.push_str(&format!("seed={}\n", self.seed));
        out.push_str(&format!(
            "stopwords={}\n",
            self.stopwords
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| "bundled".to_string())
        ));
        out.push_str(&format!("task={}\n", self.task));
        out.push_str(&format!("train-fraction={}\n", self.train_fraction));
        out.push_str(&format!("world={}\n", path(&self.world)));
        out
    }

    fn load_stopwords(&self) -> Result<Stopwords, CliError> {
        match &self.stopwords {
            Some(path) => Stopwords::from_file(path).map_err(|e| {
                CliError::Input(format!("failed to read stopwords {}: {e}", path.display()))
            }),
            None => Ok(Stopwords::bundled()),
        }
    }

    fn require_model(&self) -> Result<&Path, CliError> {
        self.model
            .as_deref()
            .ok_or_else(|| CliError::Usage("--model PATH is required".to_string()))
    }

    fn require_world(&self) -> Result<&Path, CliError> {
        self.world
            .as_deref()
            .ok_or_else(|| CliError::Usage("--world PATH is required".to_string()))
    }
}

/// Entry point used by the binary: parses, dispatches, prints, and returns
/// the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("invalid arguments");
            eprintln!("error[usage]: {}", first.trim_start_matches("error: "));
            return 1;
        }
    };
    match run(cli) {
        Ok(stdout) => {
            print!("{stdout}");
            0
        }
        Err(e) => {
            eprintln!("{}", e.render());
            e.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::CorpusStats { corpus_dir, opts } => {
            let _ = resolve_config(&opts)?;
            cmd_corpus_stats(&corpus_dir)
        }
        Command::Train { corpus_dir, opts } => {
            let config = resolve_config(&opts)?;
            cmd_train(&corpus_dir, &config)
        }
        Command::BuildWorldStats { text_dir, out, opts } => {
            let _ = resolve_config(&opts)?;
            cmd_build_world_stats(&text_dir, &out)
        }
        Command::Summarize { docs_dir, person, sidecar, opts } => {
            let config = resolve_config(&opts)?;
            cmd_summarize(&docs_dir, &person, sidecar.as_deref(), &config)
        }
        Command::Rouge { candidates_dir, references_dir, opts } => {
            let config = resolve_config(&opts)?;
            cmd_rouge(&candidates_dir, &references_dir, &config)
        }
    }
}

fn cmd_corpus_stats(corpus_dir: &Path) -> Result<String, CliError> {
    let docs = load_corpus_dir(corpus_dir)?;
    Ok(corpus_stats(&docs).render())
}

/// Lists `*.txt` files of a directory in name order.
fn text_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("failed to read directory {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry
            .map_err(|e| CliError::Input(format!("failed to list {}: {e}", dir.display())))?;
        let path = entry.path();
        if path.extension().is_some_and(|ext| ext == "txt") && path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("failed to read {}: {e}", path.display())))
}

/// Reads `<file>.pos` next to a document and attaches its tags to the
/// sentences.
fn attach_pos_sidecar(
    doc_path: &Path,
    sentences: &mut [crate::textproc::Sentence],
) -> Result<(), CliError> {
    let mut sidecar = doc_path.as_os_str().to_owned();
    sidecar.push(".pos");
    let sidecar = PathBuf::from(sidecar);
    if !sidecar.exists() {
        return Err(CliError::Input(format!(
            "part-of-speech features need a sidecar file {}",
            sidecar.display()
        )));
    }
    let pairs = parse_pos_sidecar(&read_text(&sidecar)?)?;
    attach_pos(sentences, &pairs)
        .map_err(|e| CliError::Input(format!("{}: {e}", sidecar.display())))
}

fn feature_config(config: &RunConfig) -> Result<FeatureConfig, CliError> {
    let hypernyms = match &config.hypernyms {
        Some(path) => Some(HypernymLexicon::from_file(path)?),
        None => None,
    };
    let fc = FeatureConfig {
        mode: config.mode,
        pos_augmented: config.pos,
        hypernyms,
        hypernym_weight: config.hypernym_weight,
    };
    fc.validate()?;
    Ok(fc)
}

/// One training example: features, primary label, full gold set, and the
/// labeled sentence (kept for lexicon mining).
#[derive(Clone)]
struct TrainRow {
    fv: FeatureVector,
    label: Label,
    gold: Vec<Label>,
    labeled: LabeledSentence,
}

fn cmd_train(corpus_dir: &Path, config: &RunConfig) -> Result<String, CliError> {
    let model_path = config.require_model()?;
    let fcfg = feature_config(config)?;
    let docs = load_corpus_dir(corpus_dir)?;
    if docs.is_empty() {
        return Err(CliError::Input(format!(
            "no .txt corpus files found in {}",
            corpus_dir.display()
        )));
    }

    let mut rows: Vec<TrainRow> = Vec::new();
    for doc in &docs {
        let mut labeled = doc.labeled_sentences()?;
        if config.pos {
            let mut sentences: Vec<_> = labeled.iter().map(|l| l.sentence.clone()).collect();
            attach_pos_sidecar(&corpus_dir.join(format!("{}.txt", doc.doc_id)), &mut sentences)?;
            for (l, s) in labeled.iter_mut().zip(sentences) {
                l.sentence = s;
            }
        }
        for l in labeled {
            let fv = extract_features(&l.sentence, &fcfg)?;
            let (label, gold) = match config.task {
                TaskKind::TenClass => (
                    Label::Category(l.labels[0]),
                    l.labels.iter().map(|&c| Label::Category(c)).collect(),
                ),
                TaskKind::TwoClass => {
                    let two = if l.is_biographical() {
                        TwoClassLabel::Bio2
                    } else {
                        TwoClassLabel::None2
                    };
                    (Label::Binary(two), vec![Label::Binary(two)])
                }
            };
            rows.push(TrainRow { fv, label, gold, labeled: l });
        }
    }

    let (train, heldout) = split_corpus(&rows, config.train_fraction, config.seed)?;
    let nb_data: Vec<(FeatureVector, Label)> =
        train.iter().map(|r| (r.fv.clone(), r.label)).collect();
    let model = nb_train(&nb_data, config.task)?;
    let meta = ModelMeta {
        mode: config.mode,
        pos_augmented: config.pos,
        used_hypernyms: config.hypernyms.is_some(),
        hypernym_weight: config.hypernym_weight,
    };
    save_nb(&model, &meta, model_path)?;

    let mut report = format!(
        "trained task={} examples={} heldout={} vocab={}\n",
        config.task,
        train.len(),
        heldout.len(),
        model.vocab().len(),
    );
    report.push_str(&format!("model written: {}\n", model_path.display()));

    if !heldout.is_empty() {
        let preds: Vec<Label> =
            heldout.iter().map(|r| nb_classify(&model, &r.fv).0).collect();
        let gold: Vec<Vec<Label>> = heldout.iter().map(|r| r.gold.clone()).collect();
        let (strict, _) = evaluate_classifier(&preds, &gold, false)?;
        let (relaxed, _) = evaluate_classifier(&preds, &gold, true)?;
        report.push_str(&format!(
            "nb heldout accuracy strict={strict:.4} relaxed={relaxed:.4}\n"
        ));
    }

    if config.task == TaskKind::TwoClass {
        let train_labeled: Vec<LabeledSentence> =
            train.iter().map(|r| r.labeled.clone()).collect();
        let (bio, nonbio) =
            build_saliency_lexicons(&train_labeled, LEXICON_MIN_COUNT, LEXICON_PURITY)?;
        let lex_path = appended(model_path, ".lex");
        save_lexicons(&bio, &nonbio, &lex_path)?;
        report.push_str(&format!(
            "lexicons written: {} (bio={}, nonbio={})\n",
            lex_path.display(),
            bio.len(),
            nonbio.len()
        ));

        let two_label = |label: Label| match label {
            Label::Binary(two) => two,
            Label::Category(c) => TwoClassLabel::from_category(c),
        };
        let feats = |rows: &[TrainRow]| -> Result<Vec<(crate::classify::SaliencyFeatures, TwoClassLabel)>, CliError> {
            rows.iter()
                .map(|r| {
                    Ok((saliency_features(&r.labeled.sentence, &bio, &nonbio)?, two_label(r.label)))
                })
                .collect()
        };
        let svm_data = feats(&train)?;
        let svm = svm_train(&svm_data, SVM_REG, SVM_EPOCHS, config.seed)?;
        let svm_path = appended(model_path, ".svm");
        save_svm(&svm, &svm_path)?;
        let tree = tree_train(&svm_data, TREE_MAX_DEPTH, TREE_MIN_LEAF)?;
        let tree_path = appended(model_path, ".tree");
        save_tree(&tree, &tree_path)?;
        report.push_str(&format!("svm written: {}\n", svm_path.display()));
        report.push_str(&format!("tree written: {}\n", tree_path.display()));

        if !heldout.is_empty() {
            let heldout_feats = feats(&heldout)?;
            let acc = |pred: &dyn Fn(crate::classify::SaliencyFeatures) -> TwoClassLabel| {
                let hits = heldout_feats
                    .iter()
                    .filter(|(x, y)| pred(*x) == *y)
                    .count();
                hits as f64 / heldout_feats.len() as f64
            };
            report.push_str(&format!(
                "svm heldout accuracy={:.4}\n",
                acc(&|x| svm_predict(&svm, x))
            ));
            report.push_str(&format!(
                "tree heldout accuracy={:.4}\n",
                acc(&|x| tree_predict(&tree, x))
            ));
        }
    }
    Ok(report)
}

/// `path` with `suffix` appended to the file name (model.nb -> model.nb.svm).
fn appended(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn cmd_build_world_stats(text_dir: &Path, out: &Path) -> Result<String, CliError> {
    let files = text_files(text_dir)?;
    let mut stats = TermStats::new();
    for file in &files {
        stats.add_text(&read_text(file)?);
    }
    save_world_stats(&stats, out)?;
    Ok(format!(
        "world stats written: {} (files={}, stems={}, total={})\n",
        out.display(),
        files.len(),
        stats.vocab_size(),
        stats.total()
    ))
}

fn cmd_summarize(
    docs_dir: &Path,
    person: &str,
    sidecar: Option<&Path>,
    config: &RunConfig,
) -> Result<String, CliError> {
    let name = PersonName::parse(person)
        .map_err(|e| CliError::Usage(format!("invalid person name: {e}")))?;
    let model_path = config.require_model()?;
    let world_path = config.require_world()?;
    let (model, meta) = load_nb(model_path)?;
    let world = load_world_stats(world_path)?;
    let stopwords = config.load_stopwords()?;

    // The model's metadata governs feature extraction; the matching lexicon
    // must be supplied again because the model file does not embed it.
    let hypernyms = if meta.used_hypernyms {
        let path = config.hypernyms.as_ref().ok_or_else(|| {
            CliError::Usage(
                "model was trained with hypernym features; pass --hypernyms PATH".to_string(),
            )
        })?;
        Some(HypernymLexicon::from_file(path)?)
    } else {
        None
    };
    let fcfg = FeatureConfig {
        mode: meta.mode,
        pos_augmented: meta.pos_augmented,
        hypernyms,
        hypernym_weight: meta.hypernym_weight,
    };
    fcfg.validate()?;

    let files = text_files(docs_dir)?;
    let mut docs = Vec::new();
    for file in &files {
        let mut doc = Document::from_file(file)?;
        if meta.pos_augmented {
            attach_pos_sidecar(file, &mut doc.sentences)?;
        }
        docs.push(doc);
    }

    // Classify every sentence up front so extraction errors surface before
    // the pipeline runs.
    let mut keep: BTreeSet<(String, usize)> = BTreeSet::new();
    for doc in &docs {
        for sentence in &doc.sentences {
            let fv = extract_features(sentence, &fcfg)?;
            let (label, _) = nb_classify(&model, &fv);
            let biographical = match label {
                Label::Category(c) => c != crate::corpus::BioCategory::None,
                Label::Binary(two) => two == TwoClassLabel::Bio2,
            };
            if biographical {
                keep.insert((sentence.doc_id.clone(), sentence.index));
            }
        }
    }

    let scfg = SummarizeConfig {
        byte_budget: config.budget,
        pool_k: config.pool_k,
        min_similarity: config.min_similarity,
    };
    let (summary, warnings) = summarize(
        &docs,
        &name,
        |s| keep.contains(&(s.doc_id.clone(), s.index)),
        &world,
        &stopwords,
        &scfg,
    )?;
    for warning in &warnings {
        eprintln!("warning: {warning}");
    }

    if let Some(sidecar_path) = sidecar {
        let mut out = config.echo();
        out.push_str(&format!("person={}\n", name.full));
        out.push_str(&format!("bytes={}\n", summary.total_bytes));
        for ranked in &summary.sentences {
            out.push_str(&format!(
                "SENT\t{}\t{}\t{:.6}\n",
                ranked.sentence.doc_id, ranked.sentence.index, ranked.score
            ));
        }
        std::fs::write(sidecar_path, out).map_err(|e| {
            CliError::Input(format!("failed to write sidecar {}: {e}", sidecar_path.display()))
        })?;
    }

    Ok(format!("{}\n", summary.text))
}

fn cmd_rouge(
    candidates_dir: &Path,
    references_dir: &Path,
    config: &RunConfig,
) -> Result<String, CliError> {
    let candidates = text_files(candidates_dir)?;
    let references = text_files(references_dir)?;
    let ref_by_id: BTreeMap<String, &PathBuf> =
        references.iter().map(|p| (file_id(p), p)).collect();
    let cand_ids: BTreeSet<String> = candidates.iter().map(|p| file_id(p)).collect();

    for reference in &references {
        let id = file_id(reference);
        if !cand_ids.contains(&id) {
            eprintln!("warning: no candidate for {id}, skipped");
        }
    }

    let metric_line = match config.ngram {
        Some(n) => format!("# metric=N{n} resamples={} seed={}\n", config.resamples, config.seed),
        None => format!("# metric=L resamples={} seed={}\n", config.resamples, config.seed),
    };
    let mut out = metric_line;
    let mut f_scores = Vec::new();
    for candidate in &candidates {
        let id = file_id(candidate);
        let Some(reference) = ref_by_id.get(&id) else {
            eprintln!("warning: no reference for {id}, skipped");
            continue;
        };
        let cand_text = read_text(candidate)?;
        let ref_text = read_text(reference)?;
        let score = match config.ngram {
            Some(n) => rouge_n(&cand_text, &[ref_text.as_str()], n)?,
            None => rouge_l(&cand_text, &[ref_text.as_str()])?,
        };
        if score.degenerate {
            eprintln!("warning: degenerate comparison for {id} (scored 0)");
        }
        out.push_str(&format!(
            "{id}\t{:.4}\t{:.4}\t{:.4}\n",
            score.precision, score.recall, score.f_measure
        ));
        f_scores.push(score.f_measure);
    }

    if f_scores.is_empty() {
        return Err(CliError::Input("no matching candidate/reference pairs".to_string()));
    }
    let mean = f_scores.iter().sum::<f64>() / f_scores.len() as f64;
    if f_scores.len() >= 2 {
        let ci = bootstrap_ci(&f_scores, config.resamples, config.seed)?;
        out.push_str(&format!("mean\t{mean:.4}\tci95\t{:.4}\t{:.4}\n", ci.lower, ci.upper));
    } else {
        out.push_str(&format!("mean\t{mean:.4}\n"));
    }
    Ok(out)
}

fn file_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}
