//! Summary assembly: keep sentences that talk about the person, rank them by
//! how much their vocabulary stands out against a background ("world")
//! corpus, squeeze out redundancy, and pack the survivors into a byte budget.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::rouge::truncate_bytes;
use crate::stopwords::Stopwords;
use crate::textproc::{mentions_person, segment_sentences, tokenize, PersonName, Sentence};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("document set is empty")]
    EmptyDocumentSet,
    #[error("byte budget must be at least 1, got {0}")]
    InvalidBudget(usize),
    #[error("{path}:{line}: {message}")]
    WorldStatsFormat { path: String, line: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl ExtractError {
    fn io(path: &Path, err: std::io::Error) -> Self {
        ExtractError::Io { path: path.display().to_string(), message: err.to_string() }
    }
}

/// One input article: segmented body text plus an optional date header
/// (`DATE: ...` on the first line), which is stored but not used for
/// ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub doc_id: String,
    pub date: Option<String>,
    pub text: String,
    pub sentences: Vec<Sentence>,
}

impl Document {
    /// Sentence offsets are relative to the body, i.e. to `text`, not to the
    /// raw input when a date header was stripped.
    pub fn from_text(doc_id: impl Into<String>, raw: &str) -> Document {
        let doc_id = doc_id.into();
        let (date, body) = match raw.split_once('\n') {
            Some((first, rest)) if first.starts_with("DATE:") => {
                (Some(first["DATE:".len()..].trim().to_string()), rest)
            }
            _ if raw.starts_with("DATE:") => {
                (Some(raw["DATE:".len()..].trim().to_string()), "")
            }
            _ => (None, raw),
        };
        Document {
            sentences: segment_sentences(&doc_id, body),
            date,
            text: body.to_string(),
            doc_id,
        }
    }

    /// Reads a UTF-8 article; the document id is the file name without its
    /// extension.
    pub fn from_file(path: &Path) -> Result<Document, ExtractError> {
        let raw = std::fs::read_to_string(path).map_err(|e| ExtractError::io(path, e))?;
        let doc_id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Ok(Document::from_text(doc_id, &raw))
    }
}

/// Stem frequencies of a text collection. Relative frequencies are smoothed
/// (add-one over the union vocabulary of the two collections being compared),
/// so lookups never divide by zero and unseen stems get a positive floor.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermStats {
    counts: BTreeMap<String, u64>,
    total: u64,
}

impl TermStats {
    pub fn new() -> TermStats {
        TermStats::default()
    }

    pub fn count(&self, stem: &str) -> u64 {
        self.counts.get(stem).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn vocab_size(&self) -> usize {
        self.counts.len()
    }

    pub fn stems(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(s, &c)| (s.as_str(), c))
    }

    pub fn add(&mut self, stem: &str) {
        self.add_count(stem, 1);
    }

    pub fn add_count(&mut self, stem: &str, n: u64) {
        if n > 0 {
            *self.counts.entry(stem.to_string()).or_insert(0) += n;
            self.total += n;
        }
    }

    /// Tokenizes and stems raw text, counting every token (stopwords
    /// included; filtering happens at scoring time).
    pub fn add_text(&mut self, text: &str) {
        for token in tokenize(text) {
            self.add(&token.stem);
        }
    }

    pub fn merge(&mut self, other: &TermStats) {
        for (stem, &n) in &other.counts {
            self.add_count(stem, n);
        }
    }

    pub fn from_sentences<'a>(sentences: impl IntoIterator<Item = &'a Sentence>) -> TermStats {
        let mut stats = TermStats::new();
        for sentence in sentences {
            for token in &sentence.tokens {
                stats.add(&token.stem);
            }
        }
        stats
    }

    fn union_vocab(&self, other: &TermStats) -> usize {
        self.counts.keys().chain(other.counts.keys()).collect::<BTreeSet<_>>().len()
    }

    /// Smoothed relative frequency against a shared union vocabulary. The
    /// denominator floor of one slot keeps the empty-on-both-sides case
    /// finite.
    fn smoothed_rf(&self, stem: &str, union_vocab: usize) -> f64 {
        (self.count(stem) + 1) as f64 / (self.total + union_vocab.max(1) as u64) as f64
    }
}

/// Informativeness of a stem: its smoothed relative frequency in the document
/// set divided by its smoothed relative frequency in the world corpus. Words
/// prominent in the documents but globally rare score high; always finite and
/// positive.
pub fn word_informativeness(stem: &str, doc_stats: &TermStats, world_stats: &TermStats) -> f64 {
    let union = doc_stats.union_vocab(world_stats);
    doc_stats.smoothed_rf(stem, union) / world_stats.smoothed_rf(stem, union)
}

/// A sentence with its informativeness score: the mean of its non-stopword
/// tokens' word scores, 0 when no token survives the stopword filter.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedSentence {
    pub sentence: Sentence,
    pub score: f64,
    pub word_scores: Vec<f64>,
}

/// Scores and sorts candidates by descending informativeness; the sort is
/// stable, so ties keep input order.
pub fn score_sentences(
    candidates: &[Sentence],
    doc_stats: &TermStats,
    world_stats: &TermStats,
    stopwords: &Stopwords,
) -> Vec<RankedSentence> {
    let union = doc_stats.union_vocab(world_stats);
    let mut ranked: Vec<RankedSentence> = candidates
        .iter()
        .map(|sentence| {
            let word_scores: Vec<f64> = sentence
                .tokens
                .iter()
                .filter(|t| !stopwords.contains(&t.surface))
                .map(|t| {
                    doc_stats.smoothed_rf(&t.stem, union) / world_stats.smoothed_rf(&t.stem, union)
                })
                .collect();
            let score = if word_scores.is_empty() {
                0.0
            } else {
                word_scores.iter().sum::<f64>() / word_scores.len() as f64
            };
            RankedSentence { sentence: sentence.clone(), score, word_scores }
        })
        .collect();
    ranked.sort_by(|a, b| b.score.total_cmp(&a.score));
    ranked
}

/// Fraction of the sentence's characters that sit inside double-quoted spans
/// (straight `"` pairs or curly `“...”`), delimiters included; an unclosed
/// quote extends to the end.
fn quoted_char_fraction(text: &str) -> f64 {
    let mut quoted = 0usize;
    let mut total = 0usize;
    let mut open: Option<char> = None;
    for c in text.chars() {
        total += 1;
        match open {
            None if c == '"' || c == '\u{201C}' => {
                open = Some(c);
                quoted += 1;
            }
            None => {}
            Some(opener) => {
                quoted += 1;
                if (opener == '"' && c == '"') || (opener == '\u{201C}' && c == '\u{201D}') {
                    open = None;
                }
            }
        }
    }
    if total == 0 {
        0.0
    } else {
        quoted as f64 / total as f64
    }
}

/// First summarization pass: keeps sentences that have at least five tokens,
/// are not mostly direct quotation (quoted characters ≤ 50%), and mention the
/// person by full name, first, or last word.
pub fn name_filter(docs: &[Document], name: &PersonName) -> Vec<Sentence> {
    docs.iter()
        .flat_map(|d| &d.sentences)
        .filter(|s| {
            s.tokens.len() >= 5
                && quoted_char_fraction(&s.text) <= 0.5
                && mentions_person(s, name)
        })
        .cloned()
        .collect()
}

/// Case-folded, whitespace-normalized text; the identity under which two
/// sentences count as duplicates.
fn normalized_text(sentence: &Sentence) -> String {
    sentence.text.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// Union of the two candidate lists preserving first-seen order (filtered
/// first); duplicates are detected by normalized text.
pub fn merge_candidates(filtered: &[Sentence], classified: &[Sentence]) -> Vec<Sentence> {
    let mut seen = BTreeSet::new();
    let mut merged = Vec::new();
    for sentence in filtered.iter().chain(classified) {
        if seen.insert(normalized_text(sentence)) {
            merged.push(sentence.clone());
        }
    }
    merged
}

/// A byte-budgeted extractive summary. `sentences` carry provenance and
/// scores; `text` is the rendered output (sentences joined by single spaces,
/// truncated to the budget when a lone oversized sentence forced it), and
/// `total_bytes` is its length.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub person: PersonName,
    pub sentences: Vec<RankedSentence>,
    pub byte_budget: usize,
    pub total_bytes: usize,
    pub text: String,
}

/// Stopword-filtered stem term frequencies, the vector space for redundancy
/// similarity.
fn tf_vector<'a>(
    sentences: impl IntoIterator<Item = &'a RankedSentence>,
    stopwords: &Stopwords,
) -> BTreeMap<String, f64> {
    let mut tf = BTreeMap::new();
    for ranked in sentences {
        for token in &ranked.sentence.tokens {
            if !stopwords.contains(&token.surface) {
                *tf.entry(token.stem.clone()).or_insert(0.0) += 1.0;
            }
        }
    }
    tf
}

fn cosine(a: &BTreeMap<String, f64>, b: &BTreeMap<String, f64>) -> f64 {
    let dot: f64 = a.iter().filter_map(|(k, va)| b.get(k).map(|vb| va * vb)).sum();
    let norm = |v: &BTreeMap<String, f64>| v.values().map(|x| x * x).sum::<f64>().sqrt();
    let denom = norm(a) * norm(b);
    if denom == 0.0 {
        0.0
    } else {
        dot / denom
    }
}

fn rendered_len(sentences: &[RankedSentence]) -> usize {
    let text_bytes: usize = sentences.iter().map(|r| r.sentence.text.len()).sum();
    text_bytes + sentences.len().saturating_sub(1)
}

fn render(sentences: &[RankedSentence]) -> String {
    sentences.iter().map(|r| r.sentence.text.as_str()).collect::<Vec<_>>().join(" ")
}

/// Reduces a ranked candidate list to a byte budget.
///
/// The working pool is the top `pool_k` candidates (default: twice the number
/// of top sentences needed to reach the budget), minus exact duplicates. While
/// the pool renders over budget, the sentence whose removal keeps the
/// remaining text most cosine-similar to the full pool is dropped; similarity
/// ties drop the lower-scored (then later) sentence. `min_similarity`, when
/// set, stops removal once the best retained similarity would fall below it.
/// A lone sentence that still exceeds the budget is truncated at a character
/// boundary, so the output never exceeds the budget.
pub fn eliminate_redundancy(
    person: &PersonName,
    ranked: &[RankedSentence],
    byte_budget: usize,
    pool_k: Option<usize>,
    min_similarity: Option<f64>,
    stopwords: &Stopwords,
) -> Result<Summary, ExtractError> {
    if byte_budget == 0 {
        return Err(ExtractError::InvalidBudget(byte_budget));
    }

    // Pool size default: twice the sentence count at which the rendered
    // text first exceeds the budget (the whole list if it never does).
    let fill_count = (1..=ranked.len())
        .find(|&m| rendered_len(&ranked[..m]) > byte_budget)
        .unwrap_or(ranked.len());
    let k = pool_k.unwrap_or(2 * fill_count).clamp(1, ranked.len().max(1));

    let mut seen = BTreeSet::new();
    let mut pool: Vec<RankedSentence> = ranked[..k.min(ranked.len())]
        .iter()
        .filter(|r| seen.insert(normalized_text(&r.sentence)))
        .cloned()
        .collect();
    let pool_tf = tf_vector(&pool, stopwords);

    while pool.len() > 1 && rendered_len(&pool) > byte_budget {
        // Scan from the end so that similarity ties drop the lowest-scored,
        // latest sentence (the pool is sorted by descending score below).
        let mut best: Option<(usize, f64)> = None;
        for i in (0..pool.len()).rev() {
            let remaining: Vec<&RankedSentence> =
                pool.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r).collect();
            let sim = cosine(&tf_vector(remaining, stopwords), &pool_tf);
            if best.is_none_or(|(_, s)| sim > s) {
                best = Some((i, sim));
            }
        }
        let (victim, sim) = best.expect("pool has at least two sentences");
        if min_similarity.is_some_and(|floor| sim < floor) {
            break;
        }
        pool.remove(victim);
    }

    pool.sort_by(|a, b| b.score.total_cmp(&a.score));
    let text = truncate_bytes(&render(&pool), byte_budget).to_string();
    Ok(Summary {
        person: person.clone(),
        total_bytes: text.len(),
        text,
        sentences: pool,
        byte_budget,
    })
}

/// Conditions under which [`summarize`] returns an empty summary instead of
/// failing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummarizeWarning {
    /// No sentence in any document mentions the person.
    NoMentions,
    /// Filtering and classification left nothing to rank.
    NoCandidates,
}

impl std::fmt::Display for SummarizeWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SummarizeWarning::NoMentions => {
                write!(f, "no sentence mentions the person")
            }
            SummarizeWarning::NoCandidates => {
                write!(f, "no candidate sentences survived filtering and classification")
            }
        }
    }
}

/// Pipeline knobs for [`summarize`]; defaults: 665-byte budget, automatic
/// pool size, no similarity floor.
#[derive(Debug, Clone, PartialEq)]
pub struct SummarizeConfig {
    pub byte_budget: usize,
    pub pool_k: Option<usize>,
    pub min_similarity: Option<f64>,
}

impl Default for SummarizeConfig {
    fn default() -> Self {
        SummarizeConfig { byte_budget: 665, pool_k: None, min_similarity: None }
    }
}

/// End-to-end extractive pipeline: name-filter, merge with the sentences the
/// caller's classifier keeps, score against document and world statistics,
/// and reduce to the budget. Deterministic for identical inputs. An input set
/// with no usable candidates yields an empty summary plus warnings rather
/// than an error.
pub fn summarize(
    docs: &[Document],
    name: &PersonName,
    keep_sentence: impl Fn(&Sentence) -> bool,
    world_stats: &TermStats,
    stopwords: &Stopwords,
    config: &SummarizeConfig,
) -> Result<(Summary, Vec<SummarizeWarning>), ExtractError> {
    if docs.is_empty() {
        return Err(ExtractError::EmptyDocumentSet);
    }
    if config.byte_budget == 0 {
        return Err(ExtractError::InvalidBudget(config.byte_budget));
    }

    let mut warnings = Vec::new();
    if !docs.iter().flat_map(|d| &d.sentences).any(|s| mentions_person(s, name)) {
        warnings.push(SummarizeWarning::NoMentions);
    }

    let filtered = name_filter(docs, name);
    let classified: Vec<Sentence> =
        docs.iter().flat_map(|d| &d.sentences).filter(|s| keep_sentence(s)).cloned().collect();
    let candidates = merge_candidates(&filtered, &classified);
    if candidates.is_empty() {
        warnings.push(SummarizeWarning::NoCandidates);
        let summary = Summary {
            person: name.clone(),
            sentences: Vec::new(),
            byte_budget: config.byte_budget,
            total_bytes: 0,
            text: String::new(),
        };
        return Ok((summary, warnings));
    }

    let doc_stats = TermStats::from_sentences(docs.iter().flat_map(|d| &d.sentences));
    let ranked = score_sentences(&candidates, &doc_stats, world_stats, stopwords);
    let summary = eliminate_redundancy(
        name,
        &ranked,
        config.byte_budget,
        config.pool_k,
        config.min_similarity,
        stopwords,
    )?;
    Ok((summary, warnings))
}

/// Writes stem counts as `TOTAL<TAB>n` followed by `stem<TAB>count` lines in
/// ascending stem order.
pub fn save_world_stats(stats: &TermStats, path: &Path) -> Result<(), ExtractError> {
    let mut out = format!("TOTAL\t{}\n", stats.total);
    for (stem, count) in &stats.counts {
        out.push_str(&format!("{stem}\t{count}\n"));
    }
    std::fs::write(path, out).map_err(|e| ExtractError::io(path, e))
}

/// Loads a stats file, validating the declared total, line shape, and strict
/// ascending stem order.
pub fn load_world_stats(path: &Path) -> Result<TermStats, ExtractError> {
    let content = std::fs::read_to_string(path).map_err(|e| ExtractError::io(path, e))?;
    let display = path.display().to_string();
    let fail = |line: usize, message: String| ExtractError::WorldStatsFormat {
        path: display.clone(),
        line,
        message,
    };

    let mut lines = content.lines().enumerate();
    let declared_total = match lines.next() {
        Some((_, first)) => match first.split_once('\t') {
            Some(("TOTAL", n)) => n
                .parse::<u64>()
                .map_err(|_| fail(1, format!("invalid total {n:?}")))?,
            _ => return Err(fail(1, "expected `TOTAL<TAB>n` header".to_string())),
        },
        None => return Err(fail(1, "empty file".to_string())),
    };

    let mut counts = BTreeMap::new();
    let mut sum = 0u64;
    let mut prev: Option<String> = None;
    for (i, line) in lines {
        let lineno = i + 1;
        let (stem, count) = line
            .split_once('\t')
            .ok_or_else(|| fail(lineno, format!("expected `stem<TAB>count`, got {line:?}")))?;
        if stem.is_empty() {
            return Err(fail(lineno, "empty stem".to_string()));
        }
        let count: u64 =
            count.parse().map_err(|_| fail(lineno, format!("invalid count {count:?}")))?;
        if prev.as_deref().is_some_and(|p| p >= stem) {
            return Err(fail(lineno, format!("stems must be strictly ascending at {stem:?}")));
        }
        prev = Some(stem.to_string());
        counts.insert(stem.to_string(), count);
        sum += count;
    }
    if sum != declared_total {
        return Err(fail(1, format!("declared total {declared_total} but counts sum to {sum}")));
    }
    Ok(TermStats { counts, total: sum })
}
