//! Feature extraction: turning a sentence into a sparse weighted bag of
//! feature ids for the Naïve Bayes classifier.

use std::collections::BTreeMap;
use std::path::Path;

use crate::classify::ClassifyError;
use crate::textproc::Sentence;

/// Sparse feature-id → weight mapping. Weights are positive; plain counting
/// modes produce integers, hypernym expansion adds fractional weight.
pub type FeatureVector = BTreeMap<String, f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureMode {
    /// Lowercased surface forms.
    Unigram,
    /// Adjacent lowercased surface pairs, id `a_b`.
    Bigram,
    /// Stemmed lowercased forms.
    StemUnigram,
}

impl FeatureMode {
    pub fn name(self) -> &'static str {
        match self {
            FeatureMode::Unigram => "unigram",
            FeatureMode::Bigram => "bigram",
            FeatureMode::StemUnigram => "stem",
        }
    }

    pub fn from_name(name: &str) -> Option<FeatureMode> {
        match name {
            "unigram" => Some(FeatureMode::Unigram),
            "bigram" => Some(FeatureMode::Bigram),
            "stem" => Some(FeatureMode::StemUnigram),
            _ => None,
        }
    }
}

/// Maps words to a broader cover term; used to let rare specific words share
/// evidence with their general class at reduced weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypernymLexicon {
    entries: BTreeMap<String, String>,
}

impl HypernymLexicon {
    /// Parses `word<TAB>hypernym` lines. Both sides are lowercased; blank
    /// lines are skipped; whitespace inside either side is rejected because
    /// feature ids must be whitespace-free.
    pub fn parse(content: &str) -> Result<Self, ClassifyError> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in content.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let err = ClassifyError::HypernymFormat { line: lineno + 1 };
            let (word, hypernym) = line.split_once('\t').ok_or(err.clone())?;
            if word.is_empty()
                || hypernym.is_empty()
                || word.chars().any(char::is_whitespace)
                || hypernym.chars().any(char::is_whitespace)
            {
                return Err(err);
            }
            entries.insert(word.to_lowercase(), hypernym.to_lowercase());
        }
        Ok(HypernymLexicon { entries })
    }

    pub fn from_file(path: &Path) -> Result<Self, ClassifyError> {
        let content = std::fs::read_to_string(path).map_err(|e| ClassifyError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&content)
    }

    pub fn get(&self, word: &str) -> Option<&str> {
        self.entries.get(word).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Feature extraction settings. Hypernym expansion applies only to unigram
/// mode, and part-of-speech suffixes require tagged tokens; [`FeatureConfig::validate`]
/// rejects inconsistent combinations up front.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureConfig {
    pub mode: FeatureMode,
    pub pos_augmented: bool,
    pub hypernyms: Option<HypernymLexicon>,
    pub hypernym_weight: f64,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            mode: FeatureMode::Unigram,
            pos_augmented: false,
            hypernyms: None,
            hypernym_weight: 0.1,
        }
    }
}

impl FeatureConfig {
    pub fn validate(&self) -> Result<(), ClassifyError> {
        if !(self.hypernym_weight > 0.0 && self.hypernym_weight <= 1.0) {
            return Err(ClassifyError::InvalidConfig(format!(
                "hypernym weight must be in (0, 1], got {}",
                self.hypernym_weight
            )));
        }
        if self.hypernyms.is_some() && self.mode != FeatureMode::Unigram {
            return Err(ClassifyError::InvalidConfig(
                "hypernym expansion applies only to unigram features".to_string(),
            ));
        }
        if self.pos_augmented && self.mode == FeatureMode::Bigram {
            return Err(ClassifyError::InvalidConfig(
                "part-of-speech suffixes are not defined for bigram features".to_string(),
            ));
        }
        Ok(())
    }
}

/// Extracts the configured feature counts from one sentence.
///
/// Unigram/stem ids may carry a `/TAG` suffix when `pos_augmented` is set;
/// hypernym ids are added bare (untagged) at `hypernym_weight` per matching
/// token occurrence.
pub fn extract_features(
    sentence: &Sentence,
    config: &FeatureConfig,
) -> Result<FeatureVector, ClassifyError> {
    config.validate()?;
    if config.pos_augmented && sentence.tokens.iter().any(|t| t.pos.is_none()) {
        return Err(ClassifyError::PosUnavailable);
    }
    let mut fv = FeatureVector::new();
    match config.mode {
        FeatureMode::Unigram | FeatureMode::StemUnigram => {
            for token in &sentence.tokens {
                let base = match config.mode {
                    FeatureMode::StemUnigram => token.stem.clone(),
                    _ => token.surface.to_lowercase(),
                };
                let id = match (&config.pos_augmented, &token.pos) {
                    (true, Some(tag)) => format!("{base}/{tag}"),
                    _ => base,
                };
                *fv.entry(id).or_insert(0.0) += 1.0;
                if let Some(lexicon) = &config.hypernyms {
                    if let Some(hypernym) = lexicon.get(&token.surface.to_lowercase()) {
                        *fv.entry(hypernym.to_string()).or_insert(0.0) += config.hypernym_weight;
                    }
                }
            }
        }
        FeatureMode::Bigram => {
            for pair in sentence.tokens.windows(2) {
                let id =
                    format!("{}_{}", pair[0].surface.to_lowercase(), pair[1].surface.to_lowercase());
                *fv.entry(id).or_insert(0.0) += 1.0;
            }
        }
    }
    Ok(fv)
}
