//! Saliency features: the fraction of a sentence's tokens that are clearly
//! biographical or clearly non-biographical, measured against two disjoint
//! stem lexicons mined from training data.

use std::collections::{BTreeMap, BTreeSet};

use crate::classify::ClassifyError;
use crate::corpus::LabeledSentence;
use crate::textproc::Sentence;

/// The 2-D feature space consumed by the SVM and decision-tree classifiers.
/// Both fractions are in [0, 1] and, because the lexicons are disjoint, sum
/// to at most 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaliencyFeatures {
    pub bio_fraction: f64,
    pub nonbio_fraction: f64,
}

impl SaliencyFeatures {
    pub fn as_array(self) -> [f64; 2] {
        [self.bio_fraction, self.nonbio_fraction]
    }
}

/// Computes the fraction of tokens (by stem) falling in each lexicon.
/// An empty sentence scores (0, 0).
pub fn saliency_features(
    sentence: &Sentence,
    bio_lexicon: &BTreeSet<String>,
    nonbio_lexicon: &BTreeSet<String>,
) -> Result<SaliencyFeatures, ClassifyError> {
    if let Some(example) = bio_lexicon.intersection(nonbio_lexicon).next() {
        return Err(ClassifyError::OverlappingLexicons { example: example.clone() });
    }
    let n = sentence.tokens.len();
    if n == 0 {
        return Ok(SaliencyFeatures { bio_fraction: 0.0, nonbio_fraction: 0.0 });
    }
    let bio = sentence.tokens.iter().filter(|t| bio_lexicon.contains(&t.stem)).count();
    let nonbio = sentence.tokens.iter().filter(|t| nonbio_lexicon.contains(&t.stem)).count();
    Ok(SaliencyFeatures {
        bio_fraction: bio as f64 / n as f64,
        nonbio_fraction: nonbio as f64 / n as f64,
    })
}

/// Mines the two lexicons from labeled training sentences: a stem qualifies
/// for a side when it occurs at least `min_count` times overall and at least
/// `purity` of its occurrences are in sentences of that side (biographical =
/// any non-`none` label). Requiring purity > 0.5 makes the sets disjoint.
pub fn build_saliency_lexicons(
    train: &[LabeledSentence],
    min_count: u64,
    purity: f64,
) -> Result<(BTreeSet<String>, BTreeSet<String>), ClassifyError> {
    if train.is_empty() {
        return Err(ClassifyError::EmptyTrainingData);
    }
    if !(purity > 0.5 && purity <= 1.0) {
        return Err(ClassifyError::InvalidConfig(format!(
            "lexicon purity must be in (0.5, 1], got {purity}"
        )));
    }
    let mut occurrences: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for labeled in train {
        let is_bio = labeled.is_biographical();
        for token in &labeled.sentence.tokens {
            let entry = occurrences.entry(&token.stem).or_insert((0, 0));
            entry.0 += 1;
            if is_bio {
                entry.1 += 1;
            }
        }
    }
    let mut bio_lexicon = BTreeSet::new();
    let mut nonbio_lexicon = BTreeSet::new();
    for (stem, (total, bio)) in occurrences {
        if total < min_count {
            continue;
        }
        let bio_share = bio as f64 / total as f64;
        if bio_share >= purity {
            bio_lexicon.insert(stem.to_string());
        } else if 1.0 - bio_share >= purity {
            nonbio_lexicon.insert(stem.to_string());
        }
    }
    Ok((bio_lexicon, nonbio_lexicon))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::BioCategory;

    fn stems(words: &[&str]) -> BTreeSet<String> {
        words.iter().map(|w| (*w).to_string()).collect()
    }

    fn labeled(text: &str, category: BioCategory) -> LabeledSentence {
        LabeledSentence { sentence: Sentence::new("d", 0, 0, text), labels: vec![category] }
    }

    #[test]
    fn fractions_count_lexicon_hits() {
        let s = Sentence::new("d", 0, 0, "cancer chemotherapy hope the");
        let got = saliency_features(&s, &stems(&["cancer", "chemotherapy"]), &stems(&[])).unwrap();
        assert_eq!(got, SaliencyFeatures { bio_fraction: 0.5, nonbio_fraction: 0.0 });
    }

    #[test]
    fn no_hits_and_all_hits() {
        let s = Sentence::new("d", 0, 0, "alpha beta");
        let none = saliency_features(&s, &stems(&["x"]), &stems(&["y"])).unwrap();
        assert_eq!(none, SaliencyFeatures { bio_fraction: 0.0, nonbio_fraction: 0.0 });
        let all = saliency_features(&s, &stems(&["alpha", "beta"]), &stems(&[])).unwrap();
        assert_eq!(all, SaliencyFeatures { bio_fraction: 1.0, nonbio_fraction: 0.0 });
        let empty = Sentence::new("d", 0, 0, "");
        let zero = saliency_features(&empty, &stems(&["x"]), &stems(&["y"])).unwrap();
        assert_eq!(zero, SaliencyFeatures { bio_fraction: 0.0, nonbio_fraction: 0.0 });
    }

    #[test]
    fn overlapping_lexicons_are_rejected() {
        let s = Sentence::new("d", 0, 0, "a");
        assert_eq!(
            saliency_features(&s, &stems(&["dual"]), &stems(&["dual"])),
            Err(ClassifyError::OverlappingLexicons { example: "dual".into() })
        );
    }

    #[test]
    fn lexicon_mining_applies_count_and_purity_thresholds() {
        let mut train = Vec::new();
        // "career" appears 5 times, always in work sentences.
        for _ in 0..5 {
            train.push(labeled("career talk", BioCategory::Work));
        }
        // "rare" appears twice — below min_count.
        train.push(labeled("rare word", BioCategory::Work));
        train.push(labeled("rare again", BioCategory::None));
        // "talk" appears 5 times in work + 5 in none: purity exactly 0.5.
        for _ in 0..5 {
            train.push(labeled("talk show", BioCategory::None));
        }
        let (bio, nonbio) = build_saliency_lexicons(&train, 3, 0.8).unwrap();
        assert!(bio.contains("career"));
        assert!(!bio.contains("rare") && !nonbio.contains("rare"));
        assert!(!bio.contains("talk") && !nonbio.contains("talk"));
        // "show" occurs 5 times, all in none sentences.
        assert!(nonbio.contains("show"));
        assert!(bio.is_disjoint(&nonbio));
    }

    #[test]
    fn lexicon_mining_validates_inputs() {
        assert_eq!(
            build_saliency_lexicons(&[], 1, 0.8),
            Err(ClassifyError::EmptyTrainingData)
        );
        let train = vec![labeled("a", BioCategory::Work)];
        assert!(matches!(
            build_saliency_lexicons(&train, 1, 0.5),
            Err(ClassifyError::InvalidConfig(_))
        ));
    }

    #[test]
    fn multi_label_sentences_count_as_biographical() {
        let multi = LabeledSentence {
            sentence: Sentence::new("d", 0, 0, "acted widely"),
            labels: vec![BioCategory::Work, BioCategory::Fame],
        };
        let (bio, _) = build_saliency_lexicons(&[multi], 1, 0.9).unwrap();
        assert!(bio.contains("act"));
        assert!(bio.contains("widely"));
    }
}
