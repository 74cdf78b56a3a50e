//! Serialized model formats. All four artifacts (Naïve Bayes tables, SVM
//! weights, decision tree, saliency lexicons) are versioned, self-describing
//! text files. Floats are written with 17 significant digits so loading
//! reproduces the trained model bit for bit.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::classify::{
    ClassifyError, DecisionTreeModel, FeatureMode, Label, LinearSvmModel, NaiveBayesModel,
    TaskKind, TreeNode,
};

/// Feature settings recorded alongside a Naïve Bayes model so that
/// prediction-time extraction matches training.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelMeta {
    pub mode: FeatureMode,
    pub pos_augmented: bool,
    pub used_hypernyms: bool,
    pub hypernym_weight: f64,
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

struct Reader<'a> {
    path: String,
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Reader<'a> {
    fn new(path: &Path, content: &'a str) -> Self {
        Reader { path: path.display().to_string(), lines: content.lines().enumerate() }
    }

    fn fail<T>(&self, line: usize, message: impl Into<String>) -> Result<T, ClassifyError> {
        Err(ClassifyError::ModelFormat {
            path: self.path.clone(),
            line,
            message: message.into(),
        })
    }

    /// Next non-empty line as (1-based number, text).
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.lines.by_ref() {
            if !line.trim().is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), ClassifyError> {
        match self.next() {
            Some(found) => Ok(found),
            None => self.fail(0, format!("unexpected end of file, expected {what}")),
        }
    }

    fn parse_f64(&self, line: usize, s: &str) -> Result<f64, ClassifyError> {
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => self.fail(line, format!("invalid number {s:?}")),
        }
    }

    fn parse_label(&self, line: usize, s: &str, task: TaskKind) -> Result<Label, ClassifyError> {
        match s.parse::<Label>() {
            Ok(label) if task.contains(label) => Ok(label),
            _ => self.fail(line, format!("label {s:?} is not in the {task} label space")),
        }
    }
}

/// Parses `key=value` fields from a header line, after the given magic tag.
fn parse_header(
    reader: &mut Reader<'_>,
    magic: &str,
) -> Result<BTreeMap<String, String>, ClassifyError> {
    let (lineno, line) = reader.expect("header")?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some(magic) || parts.next() != Some("v1") {
        return reader.fail(lineno, format!("expected header starting with {magic:?} v1"));
    }
    let mut fields = BTreeMap::new();
    for part in parts {
        match part.split_once('=') {
            Some((k, v)) => {
                fields.insert(k.to_string(), v.to_string());
            }
            None => return reader.fail(lineno, format!("malformed header field {part:?}")),
        }
    }
    Ok(fields)
}

fn header_field<'m>(
    reader: &Reader<'_>,
    fields: &'m BTreeMap<String, String>,
    key: &str,
) -> Result<&'m str, ClassifyError> {
    match fields.get(key) {
        Some(v) => Ok(v),
        None => reader.fail(1, format!("header is missing {key}=")),
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), ClassifyError> {
    std::fs::write(path, content).map_err(|e| ClassifyError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn read_file(path: &Path) -> Result<String, ClassifyError> {
    std::fs::read_to_string(path).map_err(|e| ClassifyError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn save_nb(model: &NaiveBayesModel, meta: &ModelMeta, path: &Path) -> Result<(), ClassifyError> {
    let mut out = format!(
        "biosum-nb v1 task={} mode={} pos={} hypernyms={} hypernym_weight={}\n",
        model.task(),
        meta.mode.name(),
        meta.pos_augmented,
        meta.used_hypernyms,
        fmt_f64(meta.hypernym_weight),
    );
    for &label in model.task().labels() {
        out.push_str(&format!("PRIOR {} {}\n", label, fmt_f64(model.prior(label))));
    }
    for &label in model.task().labels() {
        for feature in model.vocab() {
            out.push_str(&format!(
                "LIK {} {} {}\n",
                label,
                feature,
                fmt_f64(model.likelihood(label, feature))
            ));
        }
    }
    for &label in model.task().labels() {
        out.push_str(&format!("UNK {} {}\n", label, fmt_f64(model.unk(label))));
    }
    write_file(path, &out)
}

pub fn load_nb(path: &Path) -> Result<(NaiveBayesModel, ModelMeta), ClassifyError> {
    let content = read_file(path)?;
    let mut reader = Reader::new(path, &content);
    let fields = parse_header(&mut reader, "biosum-nb")?;
    let task: TaskKind = match header_field(&reader, &fields, "task")?.parse() {
        Ok(task) => task,
        Err(e) => return reader.fail(1, e),
    };
    let mode = match FeatureMode::from_name(header_field(&reader, &fields, "mode")?) {
        Some(mode) => mode,
        None => return reader.fail(1, "unknown feature mode in header"),
    };
    let parse_bool = |reader: &Reader<'_>, v: &str| match v {
        "true" => Ok(true),
        "false" => Ok(false),
        other => reader.fail(1, format!("expected true/false, got {other:?}")),
    };
    let meta = ModelMeta {
        mode,
        pos_augmented: parse_bool(&reader, header_field(&reader, &fields, "pos")?)?,
        used_hypernyms: parse_bool(&reader, header_field(&reader, &fields, "hypernyms")?)?,
        hypernym_weight: reader.parse_f64(1, header_field(&reader, &fields, "hypernym_weight")?)?,
    };

    let mut priors = BTreeMap::new();
    let mut likelihoods: BTreeMap<Label, BTreeMap<String, f64>> =
        task.labels().iter().map(|&l| (l, BTreeMap::new())).collect();
    let mut unk = BTreeMap::new();
    while let Some((lineno, line)) = reader.next() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["PRIOR", label, value] => {
                let label = reader.parse_label(lineno, label, task)?;
                if priors.insert(label, reader.parse_f64(lineno, value)?).is_some() {
                    return reader.fail(lineno, format!("duplicate PRIOR for {label}"));
                }
            }
            ["LIK", label, feature, value] => {
                let label = reader.parse_label(lineno, label, task)?;
                let value = reader.parse_f64(lineno, value)?;
                let table = likelihoods.get_mut(&label).expect("initialized for all labels");
                if table.insert((*feature).to_string(), value).is_some() {
                    return reader.fail(lineno, format!("duplicate LIK for {label} {feature}"));
                }
            }
            ["UNK", label, value] => {
                let label = reader.parse_label(lineno, label, task)?;
                if unk.insert(label, reader.parse_f64(lineno, value)?).is_some() {
                    return reader.fail(lineno, format!("duplicate UNK for {label}"));
                }
            }
            _ => return reader.fail(lineno, format!("unrecognized line {line:?}")),
        }
    }
    let model = NaiveBayesModel::from_parts(task, priors, likelihoods, unk).map_err(|e| {
        ClassifyError::ModelFormat { path: reader.path.clone(), line: 0, message: e.to_string() }
    })?;
    Ok((model, meta))
}

pub fn save_svm(model: &LinearSvmModel, path: &Path) -> Result<(), ClassifyError> {
    let out = format!(
        "biosum-svm v1 reg={} epochs={} seed={}\nW0 {}\nW1 {}\nB {}\n",
        fmt_f64(model.reg),
        model.epochs,
        model.seed,
        fmt_f64(model.weights[0]),
        fmt_f64(model.weights[1]),
        fmt_f64(model.bias),
    );
    write_file(path, &out)
}

pub fn load_svm(path: &Path) -> Result<LinearSvmModel, ClassifyError> {
    let content = read_file(path)?;
    let mut reader = Reader::new(path, &content);
    let fields = parse_header(&mut reader, "biosum-svm")?;
    let reg = reader.parse_f64(1, header_field(&reader, &fields, "reg")?)?;
    let parse_usize = |reader: &Reader<'_>, v: &str| match v.parse::<u64>() {
        Ok(n) => Ok(n),
        Err(_) => reader.fail(1, format!("invalid integer {v:?}")),
    };
    let epochs = parse_usize(&reader, header_field(&reader, &fields, "epochs")?)? as usize;
    let seed = parse_usize(&reader, header_field(&reader, &fields, "seed")?)?;

    let mut scalar = |tag: &str| -> Result<f64, ClassifyError> {
        let (lineno, line) = reader.expect(tag)?;
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            [found, value] if *found == tag => reader.parse_f64(lineno, value),
            _ => reader.fail(lineno, format!("expected `{tag} <value>`, got {line:?}")),
        }
    };
    let w0 = scalar("W0")?;
    let w1 = scalar("W1")?;
    let bias = scalar("B")?;
    if let Some((lineno, line)) = reader.next() {
        return reader.fail(lineno, format!("unexpected trailing line {line:?}"));
    }
    Ok(LinearSvmModel { weights: [w0, w1], bias, reg, epochs, seed })
}

pub fn save_tree(model: &DecisionTreeModel, path: &Path) -> Result<(), ClassifyError> {
    fn render(node: &TreeNode, out: &mut String) {
        match node {
            TreeNode::Leaf(label) => out.push_str(&format!("LEAF {label}\n")),
            TreeNode::Split { feature, threshold, left, right } => {
                out.push_str(&format!("SPLIT {} {}\n", feature, fmt_f64(*threshold)));
                render(left, out);
                render(right, out);
            }
        }
    }
    let mut out =
        format!("biosum-tree v1 max_depth={} min_leaf={}\n", model.max_depth, model.min_leaf);
    render(&model.root, &mut out);
    write_file(path, &out)
}

pub fn load_tree(path: &Path) -> Result<DecisionTreeModel, ClassifyError> {
    let content = read_file(path)?;
    let mut reader = Reader::new(path, &content);
    let fields = parse_header(&mut reader, "biosum-tree")?;
    let parse_usize = |reader: &Reader<'_>, v: &str| match v.parse::<usize>() {
        Ok(n) => Ok(n),
        Err(_) => reader.fail(1, format!("invalid integer {v:?}")),
    };
    let max_depth = parse_usize(&reader, header_field(&reader, &fields, "max_depth")?)?;
    let min_leaf = parse_usize(&reader, header_field(&reader, &fields, "min_leaf")?)?;

    // Pre-order: a SPLIT line is followed by its left then right subtree.
    fn parse_node(reader: &mut Reader<'_>) -> Result<TreeNode, ClassifyError> {
        let (lineno, line) = reader.expect("a LEAF or SPLIT line")?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["LEAF", label] => match label.parse::<Label>() {
                Ok(Label::Binary(two)) => Ok(TreeNode::Leaf(two)),
                _ => reader.fail(lineno, format!("invalid leaf label {label:?}")),
            },
            ["SPLIT", feature, threshold] => {
                let feature = match *feature {
                    "0" => 0usize,
                    "1" => 1,
                    other => return reader.fail(lineno, format!("invalid feature index {other:?}")),
                };
                let threshold = reader.parse_f64(lineno, threshold)?;
                let left = Box::new(parse_node(reader)?);
                let right = Box::new(parse_node(reader)?);
                Ok(TreeNode::Split { feature, threshold, left, right })
            }
            _ => reader.fail(lineno, format!("unrecognized node line {line:?}")),
        }
    }
    let root = parse_node(&mut reader)?;
    if let Some((lineno, line)) = reader.next() {
        return reader.fail(lineno, format!("unexpected trailing line {line:?}"));
    }
    Ok(DecisionTreeModel { root, max_depth, min_leaf })
}

pub fn save_lexicons(
    bio: &BTreeSet<String>,
    nonbio: &BTreeSet<String>,
    path: &Path,
) -> Result<(), ClassifyError> {
    let mut out = String::from("biosum-lex v1\n");
    for stem in bio {
        out.push_str(&format!("BIO {stem}\n"));
    }
    for stem in nonbio {
        out.push_str(&format!("NONBIO {stem}\n"));
    }
    write_file(path, &out)
}

pub fn load_lexicons(path: &Path) -> Result<(BTreeSet<String>, BTreeSet<String>), ClassifyError> {
    let content = read_file(path)?;
    let mut reader = Reader::new(path, &content);
    parse_header(&mut reader, "biosum-lex")?;
    let mut bio = BTreeSet::new();
    let mut nonbio = BTreeSet::new();
    while let Some((lineno, line)) = reader.next() {
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["BIO", stem] => {
                bio.insert((*stem).to_string());
            }
            ["NONBIO", stem] => {
                nonbio.insert((*stem).to_string());
            }
            _ => return reader.fail(lineno, format!("unrecognized lexicon line {line:?}")),
        }
    }
    if let Some(example) = bio.intersection(&nonbio).next() {
        return reader.fail(0, format!("stem {example:?} appears in both lexicons"));
    }
    Ok((bio, nonbio))
}
