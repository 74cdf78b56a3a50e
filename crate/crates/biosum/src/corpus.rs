//! The clause-annotated biography corpus: category labels, inline-tag
//! parsing, span-to-sentence label projection, span statistics, and seeded
//! train/test splitting.
//!
//! Corpus files are UTF-8 text with inline `<tag>...</tag>` markers, where
//! the tag names are the nine biographical categories. Tags never nest.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::textproc::{segment_sentences, Sentence};

#[derive(Debug, Error, PartialEq)]
pub enum CorpusError {
    #[error("unknown tag <{name}> at character {offset}")]
    UnknownTag { name: String, offset: usize },
    #[error("tag <{name}> opened at character {offset} is never closed")]
    UnclosedTag { name: String, offset: usize },
    #[error("closing tag </{found}> at character {offset} does not match open tag <{open}>")]
    MismatchedTag { open: String, found: String, offset: usize },
    #[error("closing tag </{name}> at character {offset} has no matching open tag")]
    CloseWithoutOpen { name: String, offset: usize },
    #[error("tag <{name}> at character {offset} is nested inside another tag")]
    NestedTag { name: String, offset: usize },
    #[error("span <{name}> closed at character {offset} is empty")]
    EmptySpan { name: String, offset: usize },
    #[error("sentences do not partition the document text: {detail}")]
    NotAPartition { detail: String },
    #[error("need at least 2 documents to split, found {found}")]
    TooFewDocuments { found: usize },
    #[error("train fraction must be strictly between 0 and 1, got {value}")]
    InvalidFraction { value: f64 },
    #[error("failed to read {path}: {message}")]
    Io { path: String, message: String },
}

impl CorpusError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        CorpusError::Io { path: path.display().to_string(), message: source.to_string() }
    }
}

/// The ten sentence categories: nine biographical elements plus `none` for
/// sentences carrying no biographical information. The declaration order is
/// the canonical enumeration order used for deterministic tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BioCategory {
    Bio,
    Fame,
    Personality,
    Social,
    Education,
    Nationality,
    Scandal,
    Personal,
    Work,
    None,
}

impl BioCategory {
    pub const ALL: [BioCategory; 10] = [
        BioCategory::Bio,
        BioCategory::Fame,
        BioCategory::Personality,
        BioCategory::Social,
        BioCategory::Education,
        BioCategory::Nationality,
        BioCategory::Scandal,
        BioCategory::Personal,
        BioCategory::Work,
        BioCategory::None,
    ];

    /// The nine annotation tags (`none` is never written in a corpus file).
    pub const TAGS: [BioCategory; 9] = [
        BioCategory::Bio,
        BioCategory::Fame,
        BioCategory::Personality,
        BioCategory::Social,
        BioCategory::Education,
        BioCategory::Nationality,
        BioCategory::Scandal,
        BioCategory::Personal,
        BioCategory::Work,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BioCategory::Bio => "bio",
            BioCategory::Fame => "fame",
            BioCategory::Personality => "personality",
            BioCategory::Social => "social",
            BioCategory::Education => "education",
            BioCategory::Nationality => "nationality",
            BioCategory::Scandal => "scandal",
            BioCategory::Personal => "personal",
            BioCategory::Work => "work",
            BioCategory::None => "none",
        }
    }

    /// Parses one of the nine annotation tag names. `none` is rejected here
    /// because it never appears as a tag; use [`BioCategory::from_name`] for
    /// the full label space.
    pub fn from_tag(name: &str) -> Option<BioCategory> {
        Self::TAGS.into_iter().find(|c| c.name() == name)
    }

    pub fn from_name(name: &str) -> Option<BioCategory> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for BioCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One tagged clause: its category (never `none`), its text, and its
/// character range within the tag-stripped document text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedSpan {
    pub category: BioCategory,
    pub text: String,
    pub char_range: Range<usize>,
}

/// A sentence together with the categories of every span overlapping it.
/// `labels` is non-empty and duplicate-free, ordered by span appearance;
/// `None` appears only as the sole label of an unannotated sentence. The
/// first label is the sentence's primary label under strict evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSentence {
    pub sentence: Sentence,
    pub labels: Vec<BioCategory>,
}

impl LabeledSentence {
    /// True unless the sentence carries only the `none` label.
    pub fn is_biographical(&self) -> bool {
        self.labels != [BioCategory::None]
    }
}

/// A parsed corpus document.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedDoc {
    pub doc_id: String,
    pub plain_text: String,
    pub spans: Vec<AnnotatedSpan>,
}

impl AnnotatedDoc {
    pub fn parse(doc_id: impl Into<String>, annotated_text: &str) -> Result<Self, CorpusError> {
        let (plain_text, spans) = parse_annotated(annotated_text)?;
        Ok(AnnotatedDoc { doc_id: doc_id.into(), plain_text, spans })
    }

    /// Reads one corpus file; the document id is the file stem.
    pub fn from_file(path: &Path) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CorpusError::io(path, e))?;
        let doc_id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Self::parse(doc_id, &text)
    }

    /// Segments the plain text and projects span labels onto the sentences.
    pub fn labeled_sentences(&self) -> Result<Vec<LabeledSentence>, CorpusError> {
        let sentences = segment_sentences(&self.doc_id, &self.plain_text);
        project_labels(&self.plain_text, &self.spans, &sentences)
    }
}

/// Loads every `*.txt` file in `dir` as a corpus document, sorted by file
/// name so corpus order is stable across platforms.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<AnnotatedDoc>, CorpusError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CorpusError::io(dir, e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let entry =
            entry.map_err(|e| CorpusError::io(dir, e))?;
        let path = entry.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "txt") {
            paths.push(path);
        }
    }
    paths.sort();
    paths.iter().map(|p| AnnotatedDoc::from_file(p)).collect()
}

/// Strips inline tags from `text`, returning the plain text and the tagged
/// spans with character ranges into that plain text.
///
/// Only sequences shaped like `<name>` or `</name>` (ASCII-alphanumeric name
/// starting with a letter) are treated as markup; any other `<` is literal
/// text. Tag names outside the nine categories, nesting, and unbalanced tags
/// are errors, each reported with the character offset of the offending `<`
/// in the annotated input.
pub fn parse_annotated(text: &str) -> Result<(String, Vec<AnnotatedSpan>), CorpusError> {
    struct OpenTag {
        category: BioCategory,
        plain_char: usize,
        plain_byte: usize,
        offset: usize,
    }

    let chars: Vec<char> = text.chars().collect();
    let mut plain = String::new();
    let mut plain_chars = 0usize;
    let mut spans = Vec::new();
    let mut open: Option<OpenTag> = None;
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        if c == '<' {
            if let Some((name, closing, next)) = scan_tag(&chars, i) {
                let category = BioCategory::from_tag(&name)
                    .ok_or(CorpusError::UnknownTag { name: name.clone(), offset: i })?;
                if closing {
                    let tag = match open.take() {
                        Some(tag) => tag,
                        None => return Err(CorpusError::CloseWithoutOpen { name, offset: i }),
                    };
                    if tag.category != category {
                        return Err(CorpusError::MismatchedTag {
                            open: tag.category.name().to_string(),
                            found: name,
                            offset: i,
                        });
                    }
                    if plain_chars == tag.plain_char {
                        return Err(CorpusError::EmptySpan { name, offset: i });
                    }
                    spans.push(AnnotatedSpan {
                        category,
                        text: plain[tag.plain_byte..].to_string(),
                        char_range: tag.plain_char..plain_chars,
                    });
                } else {
                    if open.is_some() {
                        return Err(CorpusError::NestedTag { name, offset: i });
                    }
                    open = Some(OpenTag {
                        category,
                        plain_char: plain_chars,
                        plain_byte: plain.len(),
                        offset: i,
                    });
                }
                i = next;
                continue;
            }
        }
        plain.push(c);
        plain_chars += 1;
        i += 1;
    }
    if let Some(tag) = open {
        return Err(CorpusError::UnclosedTag {
            name: tag.category.name().to_string(),
            offset: tag.offset,
        });
    }
    Ok((plain, spans))
}

/// Recognizes `<name>` / `</name>` starting at `chars[i] == '<'`. Returns
/// (name, is_closing, index past `>`), or `None` when the text is not
/// tag-shaped and the `<` should be kept literally.
fn scan_tag(chars: &[char], i: usize) -> Option<(String, bool, usize)> {
    let mut j = i + 1;
    let closing = chars.get(j) == Some(&'/');
    if closing {
        j += 1;
    }
    if !chars.get(j).is_some_and(|c| c.is_ascii_alphabetic()) {
        return None;
    }
    let start = j;
    while chars.get(j).is_some_and(|c| c.is_ascii_alphanumeric()) {
        j += 1;
    }
    if chars.get(j) != Some(&'>') {
        return None;
    }
    Some((chars[start..j].iter().collect(), closing, j + 1))
}

/// Assigns each sentence the categories of all spans overlapping it by at
/// least one character; sentences with no overlapping span get `{none}`.
/// `sentences` must partition the non-whitespace content of `plain_text` in
/// order, as produced by segmentation.
pub fn project_labels(
    plain_text: &str,
    spans: &[AnnotatedSpan],
    sentences: &[Sentence],
) -> Result<Vec<LabeledSentence>, CorpusError> {
    let chars: Vec<char> = plain_text.chars().collect();
    let mut pos = 0usize;
    let mut labeled = Vec::with_capacity(sentences.len());
    for sentence in sentences {
        let start = sentence.char_start;
        let len = sentence.text.chars().count();
        if start < pos || start + len > chars.len() {
            return Err(CorpusError::NotAPartition {
                detail: format!(
                    "sentence {} spans characters {}..{} outside the remaining document",
                    sentence.index,
                    start,
                    start + len
                ),
            });
        }
        if chars[pos..start].iter().any(|c| !c.is_whitespace()) {
            return Err(CorpusError::NotAPartition {
                detail: format!("unclaimed text before sentence {}", sentence.index),
            });
        }
        let actual: String = chars[start..start + len].iter().collect();
        if actual != sentence.text {
            return Err(CorpusError::NotAPartition {
                detail: format!("sentence {} does not match the document text", sentence.index),
            });
        }
        pos = start + len;

        let end = start + len;
        let mut labels = Vec::new();
        for span in spans {
            let overlaps = span.char_range.start < end && span.char_range.end > start;
            if overlaps && !labels.contains(&span.category) {
                labels.push(span.category);
            }
        }
        if labels.is_empty() {
            labels.push(BioCategory::None);
        }
        labeled.push(LabeledSentence { sentence: sentence.clone(), labels });
    }
    if chars[pos..].iter().any(|c| !c.is_whitespace()) {
        return Err(CorpusError::NotAPartition {
            detail: "unclaimed text after the final sentence".to_string(),
        });
    }
    Ok(labeled)
}

/// Span counts per category across a document collection.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusStats {
    counts: BTreeMap<BioCategory, u64>,
    total_spans: u64,
}

impl CorpusStats {
    pub fn count(&self, category: BioCategory) -> u64 {
        self.counts.get(&category).copied().unwrap_or(0)
    }

    pub fn total_spans(&self) -> u64 {
        self.total_spans
    }

    pub fn add(&mut self, other: &CorpusStats) {
        for (cat, n) in &other.counts {
            *self.counts.entry(*cat).or_insert(0) += n;
        }
        self.total_spans += other.total_spans;
    }

    /// Tab-separated `category<TAB>count` lines in enumeration order,
    /// followed by a `TOTAL` line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for cat in BioCategory::TAGS {
            out.push_str(&format!("{}\t{}\n", cat.name(), self.count(cat)));
        }
        out.push_str(&format!("TOTAL\t{}\n", self.total_spans));
        out
    }
}

pub fn corpus_stats(docs: &[AnnotatedDoc]) -> CorpusStats {
    let mut stats = CorpusStats::default();
    for doc in docs {
        for span in &doc.spans {
            *stats.counts.entry(span.category).or_insert(0) += 1;
            stats.total_spans += 1;
        }
    }
    stats
}

/// Splits documents into disjoint train/test sets with |train| =
/// round(train_fraction · N), by seeded shuffle. The same seed always
/// produces the same split.
pub fn split_corpus<T: Clone>(
    docs: &[T],
    train_fraction: f64,
    seed: u64,
) -> Result<(Vec<T>, Vec<T>), CorpusError> {
    if docs.len() < 2 {
        return Err(CorpusError::TooFewDocuments { found: docs.len() });
    }
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(CorpusError::InvalidFraction { value: train_fraction });
    }
    let mut indices: Vec<usize> = (0..docs.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    indices.shuffle(&mut rng);
    let n_train = (train_fraction * docs.len() as f64).round() as usize;
    let train = indices[..n_train].iter().map(|&i| docs[i].clone()).collect();
    let test = indices[n_train..].iter().map(|&i| docs[i].clone()).collect();
    Ok((train, test))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_strips_single_tag_pair() {
        let (plain, spans) =
            parse_annotated("He <bio>was assassinated on April 4, 1968</bio>.").unwrap();
        assert_eq!(plain, "He was assassinated on April 4, 1968.");
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].category, BioCategory::Bio);
        assert_eq!(spans[0].text, "was assassinated on April 4, 1968");
        assert_eq!(spans[0].char_range, 3..3 + spans[0].text.chars().count());
        assert_eq!(spans[0].char_range.end, 36);
    }

    #[test]
    fn parse_untagged_text_is_identity() {
        let (plain, spans) = parse_annotated("No tags here.").unwrap();
        assert_eq!(plain, "No tags here.");
        assert!(spans.is_empty());
    }

    #[test]
    fn parse_offsets_index_into_plain_text() {
        let input = "<education>entered the Boston University as a doctoral student</education>";
        let (plain, spans) = parse_annotated(input).unwrap();
        assert_eq!(plain, "entered the Boston University as a doctoral student");
        let span = &spans[0];
        assert_eq!(span.category, BioCategory::Education);
        assert_eq!(span.char_range, 0..plain.chars().count());
        // The recorded range must re-slice plain text back to the span text.
        let sliced: String = plain
            .chars()
            .skip(span.char_range.start)
            .take(span.char_range.end - span.char_range.start)
            .collect();
        assert_eq!(sliced, span.text);
    }

    #[test]
    fn parse_rejects_malformed_markup() {
        assert_eq!(
            parse_annotated("a <wat>x</wat>"),
            Err(CorpusError::UnknownTag { name: "wat".into(), offset: 2 })
        );
        assert_eq!(
            parse_annotated("<bio>x"),
            Err(CorpusError::UnclosedTag { name: "bio".into(), offset: 0 })
        );
        assert_eq!(
            parse_annotated("<bio>x</fame>"),
            Err(CorpusError::MismatchedTag { open: "bio".into(), found: "fame".into(), offset: 6 })
        );
        assert_eq!(
            parse_annotated("x</bio>"),
            Err(CorpusError::CloseWithoutOpen { name: "bio".into(), offset: 1 })
        );
        assert_eq!(
            parse_annotated("<bio>a <fame>b</fame></bio>"),
            Err(CorpusError::NestedTag { name: "fame".into(), offset: 7 })
        );
        assert_eq!(
            parse_annotated("<bio></bio>"),
            Err(CorpusError::EmptySpan { name: "bio".into(), offset: 5 })
        );
    }

    #[test]
    fn parse_keeps_non_tag_angle_brackets() {
        let (plain, spans) = parse_annotated("2 < 3 and x <3 y <-- ok").unwrap();
        assert_eq!(plain, "2 < 3 and x <3 y <-- ok");
        assert!(spans.is_empty());
    }

    #[test]
    fn parse_offset_is_in_annotated_coordinates() {
        // The error offset counts characters of the annotated input, tags
        // included, so it can be reported against the source file.
        let err = parse_annotated("<bio>ab</bio> <wat>").unwrap_err();
        assert_eq!(err, CorpusError::UnknownTag { name: "wat".into(), offset: 14 });
    }

    fn labeled(doc: &str) -> Vec<LabeledSentence> {
        AnnotatedDoc::parse("d", doc).unwrap().labeled_sentences().unwrap()
    }

    #[test]
    fn project_sentence_containing_span() {
        let got = labeled("King <nationality>was born in Atlanta, Georgia</nationality>. He spoke.");
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].labels, [BioCategory::Nationality]);
        assert_eq!(got[1].labels, [BioCategory::None]);
        assert!(got[0].is_biographical());
        assert!(!got[1].is_biographical());
    }

    #[test]
    fn project_multi_span_sentence_keeps_span_order() {
        let got = labeled("He <work>directed films</work> and <fame>won an Oscar</fame>.");
        assert_eq!(got[0].labels, [BioCategory::Work, BioCategory::Fame]);
    }

    #[test]
    fn project_span_crossing_boundary_labels_both_sentences() {
        let got = labeled("He <work>acted. Directed plays</work> too.");
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].labels, [BioCategory::Work]);
        assert_eq!(got[1].labels, [BioCategory::Work]);
    }

    #[test]
    fn project_rejects_foreign_sentences() {
        let doc = AnnotatedDoc::parse("d", "One sentence here.").unwrap();
        let wrong = vec![Sentence::new("d", 0, 0, "Different text.")];
        assert!(matches!(
            project_labels(&doc.plain_text, &doc.spans, &wrong),
            Err(CorpusError::NotAPartition { .. })
        ));
        let missing: Vec<Sentence> = Vec::new();
        assert!(matches!(
            project_labels(&doc.plain_text, &doc.spans, &missing),
            Err(CorpusError::NotAPartition { .. })
        ));
    }

    #[test]
    fn stats_count_spans_per_category() {
        assert_eq!(corpus_stats(&[]), CorpusStats::default());

        let doc = AnnotatedDoc::parse(
            "d",
            "<bio>born 1900</bio> and <bio>died 1980</bio> with <work>a career</work>.",
        )
        .unwrap();
        let stats = corpus_stats(&[doc]);
        assert_eq!(stats.count(BioCategory::Bio), 2);
        assert_eq!(stats.count(BioCategory::Work), 1);
        assert_eq!(stats.count(BioCategory::Fame), 0);
        assert_eq!(stats.total_spans(), 3);
    }

    #[test]
    fn stats_on_inline_king_example() {
        let doc = AnnotatedDoc::parse(
            "king",
            "Martin Luther King <nationality>was born in Atlanta, Georgia</nationality>. \
             He <bio>was assassinated on April 4, 1968</bio>. \
             King <education>entered the Boston University as a doctoral student</education>.",
        )
        .unwrap();
        let stats = corpus_stats(&[doc]);
        assert_eq!(stats.count(BioCategory::Nationality), 1);
        assert_eq!(stats.count(BioCategory::Bio), 1);
        assert_eq!(stats.count(BioCategory::Education), 1);
        assert_eq!(stats.total_spans(), 3);
        assert!(stats.render().ends_with("TOTAL\t3\n"));
        assert!(stats.render().contains("nationality\t1\n"));
    }

    #[test]
    fn split_produces_rounded_disjoint_partition() {
        let docs: Vec<usize> = (0..130).collect();
        let (train, test) = split_corpus(&docs, 100.0 / 130.0, 7).unwrap();
        assert_eq!((train.len(), test.len()), (100, 30));
        let mut all: Vec<usize> = train.iter().chain(&test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, docs);
    }

    #[test]
    fn split_is_deterministic_per_seed() {
        let docs: Vec<usize> = (0..10).collect();
        let a = split_corpus(&docs, 0.5, 42).unwrap();
        let b = split_corpus(&docs, 0.5, 42).unwrap();
        assert_eq!(a, b);
        let c = split_corpus(&docs, 0.5, 43).unwrap();
        assert_ne!(a, c, "different seeds should give different shuffles here");
    }

    #[test]
    fn split_validates_inputs() {
        assert_eq!(
            split_corpus(&[1], 0.5, 0),
            Err(CorpusError::TooFewDocuments { found: 1 })
        );
        assert_eq!(
            split_corpus(&[1, 2], 1.0, 0),
            Err(CorpusError::InvalidFraction { value: 1.0 })
        );
    }

    /// Rebuilds annotated text by re-inserting tags at recorded ranges.
    fn reinsert(plain: &str, spans: &[AnnotatedSpan]) -> String {
        let mut chars: Vec<String> = plain.chars().map(String::from).collect();
        chars.push(String::new()); // insertion point at end-of-text
        for span in spans.iter().rev() {
            chars[span.char_range.end].insert_str(0, &format!("</{}>", span.category));
            chars[span.char_range.start].insert_str(0, &format!("<{}>", span.category));
        }
        chars.concat()
    }

    proptest! {
        /// Stripping tags and re-inserting them at the recorded ranges
        /// reproduces the annotated input.
        #[test]
        fn parse_round_trips(
            gaps in proptest::collection::vec("[a-z .]{0,12}", 1..6),
            cats in proptest::collection::vec(0usize..9, 0..5),
        ) {
            let mut annotated = String::new();
            for (i, gap) in gaps.iter().enumerate() {
                annotated.push_str(gap);
                if let Some(&c) = cats.get(i) {
                    let cat = BioCategory::TAGS[c];
                    annotated.push_str(&format!("<{}>span text</{}>", cat, cat));
                }
            }
            let (plain, spans) = parse_annotated(&annotated).unwrap();
            prop_assert_eq!(reinsert(&plain, &spans), annotated);
        }

        /// Projection always yields non-empty labels, with `none` only alone.
        #[test]
        fn projection_label_sets_are_well_formed(
            parts in proptest::collection::vec("[A-Z][a-z]{2,8} [a-z]{2,8} [a-z]{2,8}\\.", 1..5),
            cats in proptest::collection::vec(0usize..9, 0..5),
        ) {
            let mut annotated = String::new();
            for (i, part) in parts.iter().enumerate() {
                if let Some(&c) = cats.get(i) {
                    let cat = BioCategory::TAGS[c];
                    let body = part.trim_end_matches('.');
                    annotated.push_str(&format!("<{}>{}</{}>. ", cat, body, cat));
                } else {
                    annotated.push_str(part);
                    annotated.push(' ');
                }
            }
            for ls in labeled(&annotated) {
                prop_assert!(!ls.labels.is_empty());
                if ls.labels.contains(&BioCategory::None) {
                    prop_assert_eq!(ls.labels.len(), 1);
                }
                let dedup: std::collections::BTreeSet<_> = ls.labels.iter().collect();
                prop_assert_eq!(dedup.len(), ls.labels.len());
            }
        }

        /// Stats over a concatenation equal the sum of per-part stats.
        #[test]
        fn stats_are_additive(split_at in 0usize..6, cats in proptest::collection::vec(0usize..9, 0..6)) {
            let docs: Vec<AnnotatedDoc> = cats
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let cat = BioCategory::TAGS[c];
                    AnnotatedDoc::parse(
                        format!("d{i}"),
                        &format!("<{}>clause {}</{}>.", cat, i, cat),
                    )
                    .unwrap()
                })
                .collect();
            let cut = split_at.min(docs.len());
            let mut summed = corpus_stats(&docs[..cut]);
            summed.add(&corpus_stats(&docs[cut..]));
            prop_assert_eq!(summed, corpus_stats(&docs));
        }
    }
}
