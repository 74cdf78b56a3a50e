//! Summary evaluation: longest-common-subsequence and n-gram overlap scores
//! with multi-reference support, byte-budget truncation, and seeded bootstrap
//! confidence intervals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::textproc::tokenize;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RougeError {
    #[error("at least one reference is required")]
    NoReferences,
    #[error("n-gram order must be at least 1")]
    InvalidOrder,
    #[error("cannot bootstrap an empty score list")]
    EmptyScores,
    #[error("resample count must be at least 1")]
    InvalidResamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RougeMetric {
    /// Longest common subsequence overlap.
    L,
    /// N-gram overlap of the given order.
    N(usize),
}

impl std::fmt::Display for RougeMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RougeMetric::L => write!(f, "L"),
            RougeMetric::N(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RougeScore {
    pub metric: RougeMetric,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    /// True when the comparison was undefined (empty candidate against only
    /// empty references, or an n-gram order longer than every reference) and
    /// the score was reported as zero.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceInterval {
    pub point: f64,
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    pub resamples: usize,
}

/// Longest common subsequence length via the standard dynamic program,
/// O(|a|·|b|) time and O(min-side) memory.
pub fn lcs_length<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut curr = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            curr[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(curr[j]) };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// Longest prefix of `text` whose UTF-8 encoding fits in `budget` bytes; never
/// splits a multi-byte character.
pub fn truncate_bytes(text: &str, budget: usize) -> &str {
    if text.len() <= budget {
        return text;
    }
    let mut end = budget;
    while !text.is_char_boundary(end) {
        end -= 1;
    }
    &text[..end]
}

/// Lowercased word tokens, the unit both metrics are computed over.
fn score_tokens(text: &str) -> Vec<String> {
    tokenize(text).into_iter().map(|t| t.surface.to_lowercase()).collect()
}

fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

fn ratio(num: usize, denom: usize) -> f64 {
    if denom == 0 {
        0.0
    } else {
        num as f64 / denom as f64
    }
}

/// Per-reference LCS recall/precision/F, reduced to the reference with the
/// best F (ties keep the earliest reference).
pub fn rouge_l(candidate: &str, references: &[&str]) -> Result<RougeScore, RougeError> {
    if references.is_empty() {
        return Err(RougeError::NoReferences);
    }
    let cand = score_tokens(candidate);
    let mut best: Option<(f64, f64, f64)> = None;
    let mut any_reference_tokens = false;
    for reference in references {
        let rt = score_tokens(reference);
        any_reference_tokens |= !rt.is_empty();
        let lcs = lcs_length(&cand, &rt);
        let recall = ratio(lcs, rt.len());
        let precision = ratio(lcs, cand.len());
        let f = f_measure(precision, recall);
        if best.is_none_or(|(bf, _, _)| f > bf) {
            best = Some((f, precision, recall));
        }
    }
    let (f, precision, recall) = best.expect("at least one reference");
    Ok(RougeScore {
        metric: RougeMetric::L,
        precision,
        recall,
        f_measure: f,
        degenerate: cand.is_empty() && !any_reference_tokens,
    })
}

fn ngram_counts(tokens: &[String], n: usize) -> std::collections::BTreeMap<&[String], usize> {
    let mut counts = std::collections::BTreeMap::new();
    if tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// Clipped n-gram overlap: each candidate n-gram matches at most as many
/// times as it occurs in the reference. Multi-reference reduction as in
/// [`rouge_l`].
pub fn rouge_n(candidate: &str, references: &[&str], n: usize) -> Result<RougeScore, RougeError> {
    if references.is_empty() {
        return Err(RougeError::NoReferences);
    }
    if n == 0 {
        return Err(RougeError::InvalidOrder);
    }
    let cand = score_tokens(candidate);
    let cand_counts = ngram_counts(&cand, n);
    let cand_grams: usize = cand_counts.values().sum();
    let mut best: Option<(f64, f64, f64)> = None;
    let mut any_reference_grams = false;
    for reference in references {
        let rt = score_tokens(reference);
        let ref_counts = ngram_counts(&rt, n);
        let ref_grams: usize = ref_counts.values().sum();
        any_reference_grams |= ref_grams > 0;
        let matched: usize = cand_counts
            .iter()
            .map(|(gram, &c)| c.min(ref_counts.get(gram).copied().unwrap_or(0)))
            .sum();
        let recall = ratio(matched, ref_grams);
        let precision = ratio(matched, cand_grams);
        let f = f_measure(precision, recall);
        if best.is_none_or(|(bf, _, _)| f > bf) {
            best = Some((f, precision, recall));
        }
    }
    let (f, precision, recall) = best.expect("at least one reference");
    Ok(RougeScore {
        metric: RougeMetric::N(n),
        precision,
        recall,
        f_measure: f,
        degenerate: !any_reference_grams,
    })
}

/// Linear-interpolation percentile of an ascending-sorted slice, p in [0,100].
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let rank = p / 100.0 * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let frac = rank - lo as f64;
    if lo + 1 < sorted.len() {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[lo]
    }
}

/// Percentile bootstrap over the mean: resample with replacement, take the
/// 2.5/97.5 percentiles of the resampled means. Deterministic for a given
/// seed. The interval is widened (rarely, at tiny resample counts) to contain
/// the point estimate, keeping lower ≤ point ≤ upper unconditionally.
pub fn bootstrap_ci(
    scores: &[f64],
    resamples: usize,
    seed: u64,
) -> Result<ConfidenceInterval, RougeError> {
    if scores.is_empty() {
        return Err(RougeError::EmptyScores);
    }
    if resamples == 0 {
        return Err(RougeError::InvalidResamples);
    }
    let point = scores.iter().sum::<f64>() / scores.len() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut means = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        let sum: f64 = (0..scores.len()).map(|_| scores[rng.random_range(0..scores.len())]).sum();
        means.push(sum / scores.len() as f64);
    }
    means.sort_by(f64::total_cmp);
    let lower = percentile(&means, 2.5).min(point);
    let upper = percentile(&means, 97.5).max(point);
    Ok(ConfidenceInterval { point, lower, upper, level: 0.95, resamples })
}
