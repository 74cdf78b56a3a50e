//! Text processing primitives: sentence segmentation, tokenization, suffix
//! stemming, and person-name matching.
//!
//! All offsets are in characters (not bytes) except [`Sentence::byte_len`],
//! which is the UTF-8 byte length used for summary budgets.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TextprocError {
    #[error("cannot stem an empty word")]
    EmptyWord,
    #[error("person name must contain at least one word")]
    EmptyName,
    #[error("pos sidecar line {line}: expected token<TAB>tag with a whitespace-free tag")]
    PosSidecarLine { line: usize },
    #[error("pos sidecar provides {found} tags for {expected} tokens")]
    PosLengthMismatch { expected: usize, found: usize },
    #[error("pos sidecar token {found:?} does not match document token {expected:?}")]
    PosTokenMismatch { expected: String, found: String },
}

/// One token of a sentence. `stem` is always the stemmed lowercase surface;
/// `pos` stays `None` until a part-of-speech sidecar is attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub stem: String,
    pub pos: Option<String>,
}

/// A segmented sentence. `char_start` is the character offset of the first
/// character within the source document, so that a document's sentences plus
/// inter-sentence whitespace reconstruct the original text.
#[derive(Debug, Clone, PartialEq)]
pub struct Sentence {
    pub doc_id: String,
    pub index: usize,
    pub char_start: usize,
    pub text: String,
    pub byte_len: usize,
    pub tokens: Vec<Token>,
}

impl Sentence {
    /// Builds a sentence directly from text, tokenizing it. Used when the
    /// sentence does not come out of [`segment_sentences`].
    pub fn new(doc_id: impl Into<String>, index: usize, char_start: usize, text: impl Into<String>) -> Self {
        let text = text.into();
        Sentence {
            doc_id: doc_id.into(),
            index,
            char_start,
            byte_len: text.len(),
            tokens: tokenize(&text),
            text,
        }
    }
}

/// Sentence-final periods belonging to these words do not end a sentence.
static ABBREVIATIONS: LazyLock<BTreeSet<&'static str>> = LazyLock::new(|| {
    [
        "Dr.", "Mr.", "Mrs.", "Ms.", "Prof.", "Gen.", "Sen.", "Rep.", "Gov.", "Lt.", "Col.",
        "Capt.", "Sgt.", "Rev.", "Jr.", "Sr.", "St.", "Mt.", "No.", "vs.", "etc.", "approx.",
        "Inc.", "Co.", "Corp.", "Ltd.", "U.S.", "U.N.", "U.K.", "a.m.", "p.m.", "Jan.", "Feb.",
        "Mar.", "Apr.", "Jun.", "Jul.", "Aug.", "Sept.", "Oct.", "Nov.", "Dec.",
    ]
    .into_iter()
    .collect()
});

fn is_token_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\'' || c == '\u{2019}'
}

/// Splits `text` into sentences. A boundary is a `.`, `!`, or `?` followed by
/// whitespace and then an uppercase letter, unless the period terminates a
/// known abbreviation. Inter-sentence whitespace is dropped; everything else
/// is preserved verbatim, so the result partitions the non-whitespace input.
pub fn segment_sentences(doc_id: &str, text: &str) -> Vec<Sentence> {
    let chars: Vec<char> = text.chars().collect();
    let mut cuts = Vec::new();
    for (i, &c) in chars.iter().enumerate() {
        if c != '.' && c != '!' && c != '?' {
            continue;
        }
        let mut j = i + 1;
        if j >= chars.len() || !chars[j].is_whitespace() {
            continue;
        }
        while j < chars.len() && chars[j].is_whitespace() {
            j += 1;
        }
        if j >= chars.len() || !chars[j].is_uppercase() {
            continue;
        }
        if c == '.' && ends_abbreviation(&chars, i) {
            continue;
        }
        cuts.push(i + 1);
    }

    let mut sentences = Vec::new();
    let mut cursor = 0usize;
    for end in cuts.into_iter().chain([chars.len()]) {
        let mut start = cursor;
        while start < end && chars[start].is_whitespace() {
            start += 1;
        }
        let mut stop = end;
        while stop > start && chars[stop - 1].is_whitespace() {
            stop -= 1;
        }
        cursor = end;
        if start == stop {
            continue;
        }
        let text: String = chars[start..stop].iter().collect();
        sentences.push(Sentence::new(doc_id, sentences.len(), start, text));
    }
    sentences
}

/// True when the word ending at the period `chars[i]` is a known abbreviation.
fn ends_abbreviation(chars: &[char], i: usize) -> bool {
    let mut k = i;
    while k > 0 && !chars[k - 1].is_whitespace() {
        k -= 1;
    }
    // Strip leading punctuation such as an opening parenthesis or quote.
    while k <= i && !chars[k].is_alphanumeric() {
        k += 1;
    }
    if k > i {
        return false;
    }
    let word: String = chars[k..=i].iter().collect();
    ABBREVIATIONS.contains(word.as_str())
}

/// Splits text into maximal runs of alphanumeric characters plus internal
/// apostrophes. Punctuation separates tokens and is never emitted.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for c in text.chars().chain([' ']) {
        if is_token_char(c) {
            cur.push(c);
        } else if !cur.is_empty() {
            let stem = apply_suffix_table(&cur.to_lowercase());
            tokens.push(Token { surface: std::mem::take(&mut cur), stem, pos: None });
        }
    }
    tokens
}

/// Longest-match order; ties in length cannot both match the same word end.
const SUFFIX_TABLE: &[&str] = &[
    "ations", "ation", "ments", "ings", "ment", "ness", "ies", "ing", "ed", "es", "s",
];

fn apply_suffix_table(word: &str) -> String {
    let n = word.chars().count();
    for suffix in SUFFIX_TABLE {
        // Suffixes are ASCII, so char count equals byte count for them and
        // the byte split below lands on a character boundary.
        if n >= suffix.len() + 3 && word.ends_with(suffix) {
            return word[..word.len() - suffix.len()].to_string();
        }
    }
    word.to_string()
}

/// Lowercases and strips one inflectional suffix, keeping at least three
/// characters of the base word. Words with no matching suffix pass through.
pub fn stem(word: &str) -> Result<String, TextprocError> {
    if word.is_empty() {
        return Err(TextprocError::EmptyWord);
    }
    Ok(apply_suffix_table(&word.to_lowercase()))
}

/// A person name split into its first and last word. Single-word names use
/// the same word for both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersonName {
    pub full: String,
    pub first: String,
    pub last: String,
}

impl PersonName {
    /// Parses a whitespace-separated name; `full` is normalized to single
    /// spaces so that it can be matched against document text literally.
    pub fn parse(name: &str) -> Result<Self, TextprocError> {
        let words: Vec<&str> = name.split_whitespace().collect();
        match (words.first(), words.last()) {
            (Some(first), Some(last)) => Ok(PersonName {
                full: words.join(" "),
                first: (*first).to_string(),
                last: (*last).to_string(),
            }),
            _ => Err(TextprocError::EmptyName),
        }
    }
}

/// The surface strings that count as a mention of the person: full name,
/// first word, last word.
pub fn name_variants(name: &PersonName) -> BTreeSet<String> {
    [name.full.clone(), name.first.clone(), name.last.clone()].into_iter().collect()
}

/// Case-sensitive whole-word occurrence of `variant` in `text`: the match may
/// not be flanked by token characters on either side.
pub fn variant_matches(text: &str, variant: &str) -> bool {
    if variant.is_empty() {
        return false;
    }
    let mut from = 0;
    while let Some(pos) = text[from..].find(variant) {
        let start = from + pos;
        let end = start + variant.len();
        let before_ok = text[..start].chars().next_back().is_none_or(|c| !is_token_char(c));
        let after_ok = text[end..].chars().next().is_none_or(|c| !is_token_char(c));
        if before_ok && after_ok {
            return true;
        }
        from = start + variant.chars().next().expect("non-empty").len_utf8();
    }
    false
}

/// True when any name variant occurs in the sentence as a whole word.
pub fn mentions_person(sentence: &Sentence, name: &PersonName) -> bool {
    name_variants(name).iter().any(|v| variant_matches(&sentence.text, v))
}

/// Parses `token<TAB>tag` lines. Blank lines are skipped; tags must be
/// non-empty and whitespace-free so they can be embedded in feature ids.
pub fn parse_pos_sidecar(content: &str) -> Result<Vec<(String, String)>, TextprocError> {
    let mut pairs = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = TextprocError::PosSidecarLine { line: lineno + 1 };
        let (token, tag) = line.split_once('\t').ok_or(err.clone())?;
        if token.is_empty() || tag.is_empty() || tag.chars().any(char::is_whitespace) {
            return Err(err);
        }
        pairs.push((token.to_string(), tag.to_string()));
    }
    Ok(pairs)
}

/// Attaches sidecar tags to the flattened token stream of `sentences`. The
/// sidecar must list exactly one tag per token, in order, with matching
/// surface forms.
pub fn attach_pos(sentences: &mut [Sentence], pairs: &[(String, String)]) -> Result<(), TextprocError> {
    let expected: usize = sentences.iter().map(|s| s.tokens.len()).sum();
    if expected != pairs.len() {
        return Err(TextprocError::PosLengthMismatch { expected, found: pairs.len() });
    }
    let mut it = pairs.iter();
    for sentence in sentences.iter_mut() {
        for token in &mut sentence.tokens {
            let (surface, tag) = it.next().expect("length checked");
            if *surface != token.surface {
                return Err(TextprocError::PosTokenMismatch {
                    expected: token.surface.clone(),
                    found: surface.clone(),
                });
            }
            token.pos = Some(tag.clone());
        }
    }
    Ok(())
}
