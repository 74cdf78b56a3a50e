//! Naïve Bayes sentence classifier over sparse feature vectors, trained on
//! relative frequencies with add-one smoothing.

use std::collections::{BTreeMap, BTreeSet};

use crate::classify::{ClassifyError, FeatureVector, Label, TaskKind};

/// A trained Naïve Bayes model. Probability tables are normalized: priors
/// sum to 1, and each label's likelihoods over the vocabulary plus its
/// unknown-feature slot sum to 1 (both within 1e-9).
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveBayesModel {
    task: TaskKind,
    priors: BTreeMap<Label, f64>,
    likelihoods: BTreeMap<Label, BTreeMap<String, f64>>,
    unk: BTreeMap<Label, f64>,
    vocab: BTreeSet<String>,
}

impl NaiveBayesModel {
    pub fn task(&self) -> TaskKind {
        self.task
    }

    pub fn prior(&self, label: Label) -> f64 {
        self.priors[&label]
    }

    /// The smoothed likelihood of `feature` under `label`; features outside
    /// the training vocabulary fall back to the label's shared unknown slot.
    pub fn likelihood(&self, label: Label, feature: &str) -> f64 {
        self.likelihoods[&label].get(feature).copied().unwrap_or(self.unk[&label])
    }

    pub fn unk(&self, label: Label) -> f64 {
        self.unk[&label]
    }

    pub fn vocab(&self) -> &BTreeSet<String> {
        &self.vocab
    }

    /// Assembles a model from raw tables, checking the normalization
    /// invariants; the loader funnels through here so corrupt files cannot
    /// produce an invalid model.
    pub(crate) fn from_parts(
        task: TaskKind,
        priors: BTreeMap<Label, f64>,
        likelihoods: BTreeMap<Label, BTreeMap<String, f64>>,
        unk: BTreeMap<Label, f64>,
    ) -> Result<Self, ClassifyError> {
        let labels = task.labels();
        let bad = |message: String| ClassifyError::InvalidConfig(message);
        if priors.len() != labels.len()
            || likelihoods.len() != labels.len()
            || unk.len() != labels.len()
        {
            return Err(bad("model tables must cover the full label space".into()));
        }
        for &label in labels {
            if !priors.contains_key(&label) || !likelihoods.contains_key(&label) {
                return Err(bad(format!("missing tables for label {label}")));
            }
        }
        let vocab: BTreeSet<String> = likelihoods[&labels[0]].keys().cloned().collect();
        for &label in labels {
            let table = &likelihoods[&label];
            if table.len() != vocab.len() || !table.keys().all(|f| vocab.contains(f)) {
                return Err(bad("likelihood tables disagree on the vocabulary".into()));
            }
            let mass: f64 = table.values().sum::<f64>() + unk[&label];
            if (mass - 1.0).abs() > 1e-9 {
                return Err(bad(format!("likelihoods for {label} sum to {mass}, not 1")));
            }
            if table.values().chain([&unk[&label], &priors[&label]]).any(|&p| !(p > 0.0 && p <= 1.0))
            {
                return Err(bad(format!("probability out of (0, 1] for label {label}")));
            }
        }
        let prior_mass: f64 = priors.values().sum();
        if (prior_mass - 1.0).abs() > 1e-9 {
            return Err(bad(format!("priors sum to {prior_mass}, not 1")));
        }
        Ok(NaiveBayesModel { task, priors, likelihoods, unk, vocab })
    }
}

/// Trains from (feature vector, label) instances. A sentence carrying
/// several gold labels contributes one instance per label upstream of this
/// call.
///
/// With N instances, L labels, and vocabulary V:
/// prior(C) = (|C| + 1) / (N + L);
/// likelihood(C, f) = (weight of f in C + 1) / (total weight in C + |V| + 1),
/// where the trailing +1 funds one shared unknown slot per label.
pub fn nb_train(
    data: &[(FeatureVector, Label)],
    task: TaskKind,
) -> Result<NaiveBayesModel, ClassifyError> {
    if data.is_empty() {
        return Err(ClassifyError::EmptyTrainingData);
    }
    for (_, label) in data {
        if !task.contains(*label) {
            return Err(ClassifyError::LabelOutsideTask { label: label.name().to_string(), task });
        }
    }
    let labels = task.labels();
    let mut vocab = BTreeSet::new();
    let mut label_count: BTreeMap<Label, f64> = BTreeMap::new();
    let mut feature_mass: BTreeMap<Label, f64> = BTreeMap::new();
    let mut counts: BTreeMap<Label, BTreeMap<&str, f64>> = BTreeMap::new();
    for (fv, label) in data {
        *label_count.entry(*label).or_insert(0.0) += 1.0;
        let table = counts.entry(*label).or_default();
        for (feature, weight) in fv {
            vocab.insert(feature.clone());
            *table.entry(feature).or_insert(0.0) += weight;
            *feature_mass.entry(*label).or_insert(0.0) += weight;
        }
    }

    let n = data.len() as f64;
    let mut priors = BTreeMap::new();
    let mut likelihoods = BTreeMap::new();
    let mut unk = BTreeMap::new();
    for &label in labels {
        priors.insert(label, (label_count.get(&label).unwrap_or(&0.0) + 1.0) / (n + labels.len() as f64));
        let denom = feature_mass.get(&label).unwrap_or(&0.0) + vocab.len() as f64 + 1.0;
        let empty = BTreeMap::new();
        let observed = counts.get(&label).unwrap_or(&empty);
        let table: BTreeMap<String, f64> = vocab
            .iter()
            .map(|f| (f.clone(), (observed.get(f.as_str()).unwrap_or(&0.0) + 1.0) / denom))
            .collect();
        likelihoods.insert(label, table);
        unk.insert(label, 1.0 / denom);
    }
    NaiveBayesModel::from_parts(task, priors, likelihoods, unk)
}

/// Scores every label as log prior(C) + Σ weight_f · log likelihood(C, f)
/// and returns the argmax, breaking ties toward the earlier label in the
/// task's enumeration order.
pub fn nb_classify(model: &NaiveBayesModel, fv: &FeatureVector) -> (Label, BTreeMap<Label, f64>) {
    let labels = model.task().labels();
    let mut scores = BTreeMap::new();
    for &label in labels {
        let mut score = model.prior(label).ln();
        for (feature, weight) in fv {
            score += weight * model.likelihood(label, feature).ln();
        }
        scores.insert(label, score);
    }
    let mut best = labels[0];
    for &label in &labels[1..] {
        if scores[&label] > scores[&best] {
            best = label;
        }
    }
    (best, scores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{extract_features, FeatureConfig, TwoClassLabel};
    use crate::corpus::BioCategory;
    use crate::textproc::Sentence;
    use proptest::prelude::*;

    fn fv(pairs: &[(&str, f64)]) -> FeatureVector {
        pairs.iter().map(|(k, v)| ((*k).to_string(), *v)).collect()
    }

    fn cat(c: BioCategory) -> Label {
        Label::Category(c)
    }

    const BIO2: Label = Label::Binary(TwoClassLabel::Bio2);
    const NONE2: Label = Label::Binary(TwoClassLabel::None2);

    #[test]
    fn priors_follow_add_one_smoothing() {
        let model =
            nb_train(&[(fv(&[("ran", 1.0)]), cat(BioCategory::Work))], TaskKind::TenClass).unwrap();
        assert_eq!(model.prior(cat(BioCategory::Work)), 2.0 / 11.0);
        assert_eq!(model.prior(cat(BioCategory::Fame)), 1.0 / 11.0);
        // Vocabulary {ran}: work saw it once in mass 1, so (1+1)/(1+1+1).
        assert_eq!(model.likelihood(cat(BioCategory::Work), "ran"), 2.0 / 3.0);
        assert_eq!(model.unk(cat(BioCategory::Work)), 1.0 / 3.0);
        assert_eq!(model.likelihood(cat(BioCategory::Fame), "ran"), 1.0 / 2.0);
    }

    #[test]
    fn identical_feature_distributions_give_identical_tables() {
        let data = vec![
            (fv(&[("x", 2.0), ("y", 1.0)]), BIO2),
            (fv(&[("x", 2.0), ("y", 1.0)]), NONE2),
        ];
        let model = nb_train(&data, TaskKind::TwoClass).unwrap();
        for f in ["x", "y"] {
            assert_eq!(model.likelihood(BIO2, f), model.likelihood(NONE2, f));
        }
        assert_eq!(model.unk(BIO2), model.unk(NONE2));
        assert_eq!(model.prior(BIO2), model.prior(NONE2));
    }

    #[test]
    fn single_label_data_dominates_priors_and_prediction() {
        let data = vec![(fv(&[("a", 1.0)]), BIO2), (fv(&[("b", 1.0)]), BIO2)];
        let model = nb_train(&data, TaskKind::TwoClass).unwrap();
        assert!(model.prior(BIO2) > model.prior(NONE2));
        // One unseen occurrence: the 3:1 prior still decides.
        let (label, _) = nb_classify(&model, &fv(&[("zzz", 1.0)]));
        assert_eq!(label, BIO2);
        // The unseen-label slot is larger for the label with no observed mass,
        // so enough unknown evidence flips the call despite the prior.
        assert!(model.unk(NONE2) > model.unk(BIO2));
        let (label, _) = nb_classify(&model, &fv(&[("zzz", 3.0)]));
        assert_eq!(label, NONE2);
    }

    #[test]
    fn train_rejects_bad_inputs() {
        assert_eq!(nb_train(&[], TaskKind::TenClass), Err(ClassifyError::EmptyTrainingData));
        let data = vec![(fv(&[("a", 1.0)]), BIO2)];
        assert_eq!(
            nb_train(&data, TaskKind::TenClass),
            Err(ClassifyError::LabelOutsideTask {
                label: "bio2".into(),
                task: TaskKind::TenClass
            })
        );
    }

    #[test]
    fn empty_feature_vector_falls_back_to_priors() {
        let data = vec![
            (fv(&[("a", 1.0)]), cat(BioCategory::Work)),
            (fv(&[("b", 1.0)]), cat(BioCategory::Work)),
            (fv(&[("c", 1.0)]), cat(BioCategory::Fame)),
        ];
        let model = nb_train(&data, TaskKind::TenClass).unwrap();
        let (label, scores) = nb_classify(&model, &FeatureVector::new());
        assert_eq!(label, cat(BioCategory::Work));
        for (l, s) in &scores {
            assert_eq!(*s, model.prior(*l).ln());
        }
    }

    #[test]
    fn tie_breaks_toward_earlier_enumeration_label() {
        // Symmetric training data makes every label score equal.
        let data = vec![(fv(&[("x", 1.0)]), BIO2), (fv(&[("x", 1.0)]), NONE2)];
        let model = nb_train(&data, TaskKind::TwoClass).unwrap();
        let (label, scores) = nb_classify(&model, &fv(&[("x", 1.0)]));
        assert_eq!(scores[&BIO2], scores[&NONE2]);
        assert_eq!(label, BIO2);
    }

    /// Word-overlap scenario scored end to end through real tokenization,
    /// with the expected posterior computed directly from the closed-form
    /// smoothed counts.
    #[test]
    fn overlapping_vocabulary_classifies_by_shared_evidence() {
        let config = FeatureConfig::default();
        let train = vec![
            (
                extract_features(&Sentence::new("d", 0, 0, "cancer chemotherapy"), &config).unwrap(),
                BIO2,
            ),
            (
                extract_features(&Sentence::new("d", 1, 0, "stock market"), &config).unwrap(),
                NONE2,
            ),
        ];
        let model = nb_train(&train, TaskKind::TwoClass).unwrap();
        let probe = extract_features(&Sentence::new("d", 2, 0, "cancer treatment"), &config).unwrap();
        let (label, scores) = nb_classify(&model, &probe);
        assert_eq!(label, BIO2);

        // Oracle: vocabulary {cancer, chemotherapy, stock, market}, each
        // label has feature mass 2, so every denominator is 2 + 4 + 1.
        let prior = 2.0f64 / 4.0;
        let bio2_expected = prior.ln() + (2.0f64 / 7.0).ln() + (1.0f64 / 7.0).ln();
        let none2_expected = prior.ln() + (1.0f64 / 7.0).ln() + (1.0f64 / 7.0).ln();
        assert!((scores[&BIO2] - bio2_expected).abs() < 1e-12);
        assert!((scores[&NONE2] - none2_expected).abs() < 1e-12);
    }

    #[test]
    fn duplicated_training_set_pulls_priors_toward_frequencies() {
        let base: Vec<(FeatureVector, Label)> = vec![
            (fv(&[("a", 1.0)]), BIO2),
            (fv(&[("a", 1.0), ("b", 1.0)]), BIO2),
            (fv(&[("c", 1.0)]), NONE2),
        ];
        let doubled: Vec<_> = base.iter().chain(&base).cloned().collect();
        let single = nb_train(&base, TaskKind::TwoClass).unwrap();
        let twice = nb_train(&doubled, TaskKind::TwoClass).unwrap();
        // Raw frequency of bio2 is 2/3; smoothing pulls toward uniform, less
        // so with more data.
        let target = 2.0 / 3.0;
        assert!((twice.prior(BIO2) - target).abs() < (single.prior(BIO2) - target).abs());

        // Predictions agree on a spread of probes at this scale.
        let probes =
            [fv(&[("a", 1.0)]), fv(&[("b", 1.0)]), fv(&[("c", 1.0)]), fv(&[("a", 1.0), ("c", 1.0)])];
        for probe in &probes {
            assert_eq!(nb_classify(&single, probe).0, nb_classify(&twice, probe).0);
        }
    }

    proptest! {
        /// Normalization invariants hold after training on arbitrary data.
        #[test]
        fn probability_tables_stay_normalized(
            instances in proptest::collection::vec(
                (
                    proptest::collection::btree_map("[a-e]", 1.0f64..3.0, 0..4),
                    0usize..10,
                ),
                1..12,
            )
        ) {
            let labels = TaskKind::TenClass.labels();
            let data: Vec<(FeatureVector, Label)> = instances
                .into_iter()
                .map(|(fv, li)| (fv, labels[li]))
                .collect();
            let model = nb_train(&data, TaskKind::TenClass).unwrap();
            let prior_sum: f64 = labels.iter().map(|&l| model.prior(l)).sum();
            prop_assert!((prior_sum - 1.0).abs() < 1e-9);
            for &label in labels {
                let mass: f64 = model
                    .vocab()
                    .iter()
                    .map(|f| model.likelihood(label, f))
                    .sum::<f64>()
                    + model.unk(label);
                prop_assert!((mass - 1.0).abs() < 1e-9);
            }
        }

        /// Adding a constant to every log-score never changes the argmax.
        #[test]
        fn argmax_is_shift_invariant(shift in -50.0f64..50.0) {
            let data = vec![
                (fv(&[("a", 1.0)]), BIO2),
                (fv(&[("b", 1.0)]), NONE2),
                (fv(&[("a", 1.0), ("b", 1.0)]), BIO2),
            ];
            let model = nb_train(&data, TaskKind::TwoClass).unwrap();
            let probe = fv(&[("a", 2.0)]);
            let (label, scores) = nb_classify(&model, &probe);
            let shifted_best = TaskKind::TwoClass
                .labels()
                .iter()
                .copied()
                .reduce(|best, l| if scores[&l] + shift > scores[&best] + shift { l } else { best })
                .unwrap();
            prop_assert_eq!(label, shifted_best);
        }
    }
}
