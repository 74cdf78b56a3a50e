//! Sentence classification: the label spaces of the two classification
//! tasks, feature extraction, a Naïve Bayes classifier, and two 2-D
//! classifiers over saliency features (linear SVM, decision tree), plus the
//! evaluation protocol and serialized model formats.

mod eval;
mod features;
mod model_io;
mod nb;
mod saliency;
mod svm;
mod tree;

pub use eval::{evaluate_classifier, random_baseline, PrecisionRecall};
pub use features::{extract_features, FeatureConfig, FeatureMode, FeatureVector, HypernymLexicon};
pub use model_io::{
    load_lexicons, load_nb, load_svm, load_tree, save_lexicons, save_nb, save_svm, save_tree,
    ModelMeta,
};
pub use nb::{nb_classify, nb_train, NaiveBayesModel};
pub use saliency::{build_saliency_lexicons, saliency_features, SaliencyFeatures};
pub use svm::{svm_objective, svm_predict, svm_train, LinearSvmModel};
pub use tree::{tree_predict, tree_train, DecisionTreeModel, TreeNode};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::BioCategory;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ClassifyError {
    #[error("training data is empty")]
    EmptyTrainingData,
    #[error("label {label} is outside the {task} label space")]
    LabelOutsideTask { label: String, task: TaskKind },
    #[error("part-of-speech features requested but tokens carry no tags")]
    PosUnavailable,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("hypernym lexicon line {line}: expected word<TAB>hypernym")]
    HypernymFormat { line: usize },
    #[error("saliency lexicons overlap (e.g. {example:?})")]
    OverlappingLexicons { example: String },
    #[error("training data contains only one label; both are required")]
    SingleLabelData,
    #[error("{predictions} predictions against {gold} gold sets")]
    LengthMismatch { predictions: usize, gold: usize },
    #[error("gold label set {index} is empty")]
    EmptyGoldSet { index: usize },
    #[error("model file {path}, line {line}: {message}")]
    ModelFormat { path: String, line: usize, message: String },
    #[error("failed to access {path}: {message}")]
    Io { path: String, message: String },
}

/// The binary label space: is the sentence biography-worthy?
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwoClassLabel {
    Bio2,
    None2,
}

impl TwoClassLabel {
    /// Collapses the ten-way space: every category except `none` is
    /// biography-worthy.
    pub fn from_category(category: BioCategory) -> TwoClassLabel {
        if category == BioCategory::None {
            TwoClassLabel::None2
        } else {
            TwoClassLabel::Bio2
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TwoClassLabel::Bio2 => "bio2",
            TwoClassLabel::None2 => "none2",
        }
    }
}

impl fmt::Display for TwoClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A label from either task's space. The derived order (ten-way categories
/// in enumeration order, then the binary labels) is the deterministic
/// tie-break order used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Category(BioCategory),
    Binary(TwoClassLabel),
}

impl Label {
    pub fn name(self) -> &'static str {
        match self {
            Label::Category(c) => c.name(),
            Label::Binary(b) => b.name(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bio2" => Ok(Label::Binary(TwoClassLabel::Bio2)),
            "none2" => Ok(Label::Binary(TwoClassLabel::None2)),
            other => BioCategory::from_name(other)
                .map(Label::Category)
                .ok_or_else(|| format!("unknown label {other:?}")),
        }
    }
}

/// Which classification task a model addresses: all ten categories, or the
/// binary biography-worthiness decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TaskKind {
    TenClass,
    TwoClass,
}

const TEN_LABELS: [Label; 10] = {
    let mut labels = [Label::Category(BioCategory::Bio); 10];
    let mut i = 0;
    while i < 10 {
        labels[i] = Label::Category(BioCategory::ALL[i]);
        i += 1;
    }
    labels
};

const TWO_LABELS: [Label; 2] =
    [Label::Binary(TwoClassLabel::Bio2), Label::Binary(TwoClassLabel::None2)];

impl TaskKind {
    /// The task's label space in canonical enumeration order.
    pub fn labels(self) -> &'static [Label] {
        match self {
            TaskKind::TenClass => &TEN_LABELS,
            TaskKind::TwoClass => &TWO_LABELS,
        }
    }

    pub fn contains(self, label: Label) -> bool {
        matches!(
            (self, label),
            (TaskKind::TenClass, Label::Category(_)) | (TaskKind::TwoClass, Label::Binary(_))
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::TenClass => "ten",
            TaskKind::TwoClass => "two",
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TaskKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ten" => Ok(TaskKind::TenClass),
            "two" => Ok(TaskKind::TwoClass),
            other => Err(format!("unknown task {other:?} (expected ten or two)")),
        }
    }
}
