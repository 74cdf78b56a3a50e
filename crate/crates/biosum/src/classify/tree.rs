//! Binary decision tree over the 2-D saliency space. Splits are chosen by
//! gain ratio (information gain divided by split entropy) among midpoint
//! thresholds between consecutive distinct feature values.

use crate::classify::{ClassifyError, SaliencyFeatures, TwoClassLabel};

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    Leaf(TwoClassLabel),
    Split { feature: usize, threshold: f64, left: Box<TreeNode>, right: Box<TreeNode> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTreeModel {
    pub root: TreeNode,
    pub max_depth: usize,
    pub min_leaf: usize,
}

/// Grows a tree until purity, `max_depth` levels of splits, or no candidate
/// split leaves both children with at least `min_leaf` points. Leaf labels
/// are the majority, with exact ties going to `none2`. Any impure node with
/// distinct feature values still splits (even at zero gain), so unlimited
/// depth with `min_leaf` 1 fits consistent data perfectly.
pub fn tree_train(
    data: &[(SaliencyFeatures, TwoClassLabel)],
    max_depth: usize,
    min_leaf: usize,
) -> Result<DecisionTreeModel, ClassifyError> {
    if data.is_empty() {
        return Err(ClassifyError::EmptyTrainingData);
    }
    if min_leaf == 0 {
        return Err(ClassifyError::InvalidConfig("min_leaf must be at least 1".into()));
    }
    let items: Vec<([f64; 2], TwoClassLabel)> =
        data.iter().map(|(x, y)| (x.as_array(), *y)).collect();
    let root = grow(&items, 0, max_depth, min_leaf);
    Ok(DecisionTreeModel { root, max_depth, min_leaf })
}

fn majority(items: &[([f64; 2], TwoClassLabel)]) -> TwoClassLabel {
    let bios = items.iter().filter(|(_, y)| *y == TwoClassLabel::Bio2).count();
    if bios * 2 > items.len() {
        TwoClassLabel::Bio2
    } else {
        TwoClassLabel::None2
    }
}

/// Entropy in bits of a two-way count split.
fn entropy(a: usize, b: usize) -> f64 {
    let total = (a + b) as f64;
    let term = |n: usize| {
        if n == 0 {
            0.0
        } else {
            let p = n as f64 / total;
            -p * p.log2()
        }
    };
    term(a) + term(b)
}

fn label_entropy(items: &[([f64; 2], TwoClassLabel)]) -> f64 {
    let bios = items.iter().filter(|(_, y)| *y == TwoClassLabel::Bio2).count();
    entropy(bios, items.len() - bios)
}

fn grow(items: &[([f64; 2], TwoClassLabel)], depth: usize, max_depth: usize, min_leaf: usize) -> TreeNode {
    let first = items[0].1;
    if items.iter().all(|(_, y)| *y == first) {
        return TreeNode::Leaf(first);
    }
    if depth >= max_depth {
        return TreeNode::Leaf(majority(items));
    }

    // Candidates are enumerated feature-major, thresholds ascending; a later
    // candidate must be strictly better, making the choice deterministic.
    let parent_entropy = label_entropy(items);
    let mut best: Option<(f64, usize, f64)> = None;
    for feature in 0..2 {
        let mut values: Vec<f64> = items.iter().map(|(x, _)| x[feature]).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        for pair in values.windows(2) {
            let threshold = (pair[0] + pair[1]) / 2.0;
            let (left, right): (Vec<_>, Vec<_>) =
                items.iter().partition(|(x, _)| x[feature] < threshold);
            if left.len() < min_leaf || right.len() < min_leaf {
                continue;
            }
            let n = items.len() as f64;
            let weighted = left.len() as f64 / n * label_entropy(&left)
                + right.len() as f64 / n * label_entropy(&right);
            let gain = parent_entropy - weighted;
            let split_info = entropy(left.len(), right.len());
            let ratio = gain / split_info;
            if best.is_none_or(|(best_ratio, _, _)| ratio > best_ratio) {
                best = Some((ratio, feature, threshold));
            }
        }
    }

    match best {
        None => TreeNode::Leaf(majority(items)),
        Some((_, feature, threshold)) => {
            let (left, right): (Vec<_>, Vec<_>) =
                items.iter().cloned().partition(|(x, _)| x[feature] < threshold);
            TreeNode::Split {
                feature,
                threshold,
                left: Box::new(grow(&left, depth + 1, max_depth, min_leaf)),
                right: Box::new(grow(&right, depth + 1, max_depth, min_leaf)),
            }
        }
    }
}

/// Routes a point to its leaf: strictly below the threshold goes left,
/// at-or-above goes right.
pub fn tree_predict(model: &DecisionTreeModel, x: SaliencyFeatures) -> TwoClassLabel {
    let point = x.as_array();
    let mut node = &model.root;
    loop {
        match node {
            TreeNode::Leaf(label) => return *label,
            TreeNode::Split { feature, threshold, left, right } => {
                node = if point[*feature] < *threshold { left } else { right };
            }
        }
    }
}
