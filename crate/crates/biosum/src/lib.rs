//! Answering "who is X?" over a collection of news documents.
//!
//! The pipeline classifies sentences into biographical categories, ranks them
//! by corpus-relative informativeness, strips redundant material, and emits a
//! byte-budgeted extractive biography. Evaluation utilities (ROUGE-L/N plus
//! bootstrap confidence intervals) are included so output quality can be
//! measured in-repo.
//!
//! Modules:
//! - [`textproc`]: sentence segmentation, tokenization, stemming, name matching
//! - [`corpus`]: clause-annotated biography corpus parsing and statistics
//! - [`classify`]: feature extraction and the sentence classifiers
//! - [`extract`]: candidate filtering, informativeness ranking, redundancy removal
//! - [`rouge`]: summary evaluation metrics and confidence intervals
//! - [`cli`]: command-line wiring shared by the `biosum` binary
//!
//! Every operation is deterministic: randomized steps (corpus splits,
//! baselines, bootstrap resampling) take explicit seeds, and iteration orders
//! are fixed so repeated runs produce byte-identical output.

pub mod classify;
pub mod cli;
pub mod corpus;
pub mod extract;
pub mod rouge;
pub mod stopwords;
pub mod textproc;
