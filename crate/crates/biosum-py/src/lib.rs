//! Python bindings: sentence classification, informativeness ranking,
//! budgeted summarization, and overlap scoring, mirroring the library's
//! public operations on plain Python values (dicts, lists, tuples).

use std::collections::BTreeMap;
use std::path::Path;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use biosum::classify::{
    extract_features, load_nb, nb_classify, nb_train, save_nb, FeatureConfig, FeatureMode,
    FeatureVector, Label, ModelMeta, TaskKind,
};
use biosum::extract::{
    summarize as summarize_docs, word_informativeness as informativeness, Document,
    SummarizeConfig, TermStats,
};
use biosum::rouge::{
    bootstrap_ci as ci, lcs_length as lcs, rouge_l as score_l, rouge_n as score_n,
    truncate_bytes as truncate,
};
use biosum::stopwords::Stopwords;
use biosum::textproc::{segment_sentences, stem as stem_word, PersonName};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_task(task: &str) -> PyResult<TaskKind> {
    task.parse::<TaskKind>().map_err(value_err)
}

fn parse_label(task: TaskKind, name: &str) -> PyResult<Label> {
    task.labels()
        .iter()
        .copied()
        .find(|l| l.name() == name)
        .ok_or_else(|| value_err(format!("unknown label {name:?} for task {task}")))
}

fn stats_from_counts(counts: BTreeMap<String, u64>) -> TermStats {
    let mut stats = TermStats::new();
    for (stem, count) in counts {
        stats.add_count(&stem, count);
    }
    stats
}

/// Lowercases a word and strips one inflectional suffix.
#[pyfunction]
fn stem(word: &str) -> PyResult<String> {
    stem_word(word).map_err(value_err)
}

/// Splits text into sentences, returned as (index, text) pairs.
#[pyfunction]
fn segment(doc_id: &str, text: &str) -> Vec<(usize, String)> {
    segment_sentences(doc_id, text).into_iter().map(|s| (s.index, s.text)).collect()
}

/// A trained sentence classifier over word-count features.
#[pyclass]
struct NbModel {
    model: biosum::classify::NaiveBayesModel,
    meta: ModelMeta,
}

#[pymethods]
impl NbModel {
    /// Trains from (features, label) pairs; features map feature id to
    /// weight, labels are task label names ("bio2"/"none2" or the ten
    /// category names).
    #[staticmethod]
    fn train(data: Vec<(BTreeMap<String, f64>, String)>, task: &str) -> PyResult<NbModel> {
        let task = parse_task(task)?;
        let data: Vec<(FeatureVector, Label)> = data
            .into_iter()
            .map(|(fv, name)| Ok((fv, parse_label(task, &name)?)))
            .collect::<PyResult<_>>()?;
        let model = nb_train(&data, task).map_err(value_err)?;
        let meta = ModelMeta {
            mode: FeatureMode::Unigram,
            pos_augmented: false,
            used_hypernyms: false,
            hypernym_weight: 0.1,
        };
        Ok(NbModel { model, meta })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<NbModel> {
        let (model, meta) = load_nb(Path::new(path)).map_err(value_err)?;
        Ok(NbModel { model, meta })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        save_nb(&self.model, &self.meta, Path::new(path)).map_err(value_err)
    }

    #[getter]
    fn task(&self) -> String {
        self.model.task().to_string()
    }

    /// The most probable label name for a feature map.
    fn predict(&self, features: BTreeMap<String, f64>) -> String {
        nb_classify(&self.model, &features).0.name().to_string()
    }

    /// Log-probability score per label name.
    fn scores(&self, features: BTreeMap<String, f64>) -> BTreeMap<String, f64> {
        nb_classify(&self.model, &features)
            .1
            .into_iter()
            .map(|(label, score)| (label.name().to_string(), score))
            .collect()
    }
}

/// Corpus-relative informativeness of a stem: smoothed relative frequency in
/// the document counts divided by the same in the world counts.
#[pyfunction]
fn word_informativeness(
    stem: &str,
    doc_counts: BTreeMap<String, u64>,
    world_counts: BTreeMap<String, u64>,
) -> f64 {
    informativeness(stem, &stats_from_counts(doc_counts), &stats_from_counts(world_counts))
}

/// (summary text, kept (doc_id, index, score) sentences, warnings).
type SummaryParts = (String, Vec<(String, usize, f64)>, Vec<String>);

/// Builds a byte-budgeted summary of (doc_id, text) documents about a person.
///
/// With a model, sentences the classifier rejects are dropped before
/// ranking; without one every sentence is eligible. Returns the summary
/// text, the kept (doc_id, index, score) sentences, and any warnings.
#[pyfunction]
#[pyo3(signature = (docs, person, world_counts, budget = 665, pool_k = None, min_similarity = None, model = None))]
fn summarize(
    docs: Vec<(String, String)>,
    person: &str,
    world_counts: BTreeMap<String, u64>,
    budget: usize,
    pool_k: Option<usize>,
    min_similarity: Option<f64>,
    model: Option<&NbModel>,
) -> PyResult<SummaryParts> {
    let name = PersonName::parse(person).map_err(value_err)?;
    let docs: Vec<Document> =
        docs.into_iter().map(|(id, text)| Document::from_text(id, &text)).collect();
    let world = stats_from_counts(world_counts);
    let stopwords = Stopwords::bundled();
    let config = SummarizeConfig { byte_budget: budget, pool_k, min_similarity };
    let fcfg = FeatureConfig {
        mode: FeatureMode::Unigram,
        pos_augmented: false,
        hypernyms: None,
        hypernym_weight: 0.1,
    };
    let keep = |s: &biosum::textproc::Sentence| -> bool {
        match model {
            None => true,
            Some(nb) => match extract_features(s, &fcfg) {
                Ok(fv) => {
                    let label = nb_classify(&nb.model, &fv).0;
                    label.name() != "none" && label.name() != "none2"
                }
                Err(_) => false,
            },
        }
    };
    let (summary, warnings) =
        summarize_docs(&docs, &name, keep, &world, &stopwords, &config).map_err(value_err)?;
    Ok((
        summary.text,
        summary
            .sentences
            .into_iter()
            .map(|r| (r.sentence.doc_id, r.sentence.index, r.score))
            .collect(),
        warnings.iter().map(|w| w.to_string()).collect(),
    ))
}

/// Longest-common-subsequence overlap of a candidate against references:
/// (precision, recall, f_measure, degenerate), keeping the best-F reference.
#[pyfunction]
fn rouge_l(candidate: &str, references: Vec<String>) -> PyResult<(f64, f64, f64, bool)> {
    let refs: Vec<&str> = references.iter().map(String::as_str).collect();
    let s = score_l(candidate, &refs).map_err(value_err)?;
    Ok((s.precision, s.recall, s.f_measure, s.degenerate))
}

/// N-gram overlap of a candidate against references, clipped counting.
#[pyfunction]
fn rouge_n(candidate: &str, references: Vec<String>, n: usize) -> PyResult<(f64, f64, f64, bool)> {
    let refs: Vec<&str> = references.iter().map(String::as_str).collect();
    let s = score_n(candidate, &refs, n).map_err(value_err)?;
    Ok((s.precision, s.recall, s.f_measure, s.degenerate))
}

/// Length of the longest common subsequence of two token lists.
#[pyfunction]
fn lcs_length(a: Vec<String>, b: Vec<String>) -> usize {
    lcs(&a, &b)
}

/// The longest prefix of `text` that fits `budget` bytes without splitting a
/// character.
#[pyfunction]
fn truncate_bytes(text: &str, budget: usize) -> String {
    truncate(text, budget).to_string()
}

/// Percentile bootstrap 95% interval over resampled means of `scores`:
/// (point, lower, upper).
#[pyfunction]
#[pyo3(signature = (scores, resamples = 1000, seed = 0))]
fn bootstrap_ci(scores: Vec<f64>, resamples: usize, seed: u64) -> PyResult<(f64, f64, f64)> {
    let interval = ci(&scores, resamples, seed).map_err(value_err)?;
    Ok((interval.point, interval.lower, interval.upper))
}

#[pymodule]
fn _biosum(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<NbModel>()?;
    m.add_function(wrap_pyfunction!(stem, m)?)?;
    m.add_function(wrap_pyfunction!(segment, m)?)?;
    m.add_function(wrap_pyfunction!(word_informativeness, m)?)?;
    m.add_function(wrap_pyfunction!(summarize, m)?)?;
    m.add_function(wrap_pyfunction!(rouge_l, m)?)?;
    m.add_function(wrap_pyfunction!(rouge_n, m)?)?;
    m.add_function(wrap_pyfunction!(lcs_length, m)?)?;
    m.add_function(wrap_pyfunction!(truncate_bytes, m)?)?;
    m.add_function(wrap_pyfunction!(bootstrap_ci, m)?)?;
    Ok(())
}
