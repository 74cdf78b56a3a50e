//! End-to-end tests of the installed binary: every subcommand, the exit-code
//! contract, and byte-level determinism of model and summary outputs.

use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn biosum<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let output = Command::new(env!("CARGO_BIN_EXE_biosum"))
        .args(args)
        .output()
        .expect("failed to spawn binary");
    Run {
        code: output.status.code().expect("binary was killed by a signal"),
        stdout: String::from_utf8(output.stdout).expect("stdout not UTF-8"),
        stderr: String::from_utf8(output.stderr).expect("stderr not UTF-8"),
    }
}

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

fn s(p: &Path) -> String {
    p.display().to_string()
}

/// Trains a model on the annotated fixture corpus and builds world stats
/// from the plain-text fixture, both into `dir`.
fn train_into(dir: &Path) -> (PathBuf, PathBuf) {
    let model = dir.join("model.nb");
    let world = dir.join("world.tsv");
    let run = biosum([
        "build-world-stats",
        &s(&fixture("world")),
        "--out",
        &s(&world),
    ]);
    assert_eq!(run.code, 0, "world stats failed: {}", run.stderr);
    let run = biosum(["train", &s(&fixture("corpus")), "--model", &s(&model), "--seed", "7"]);
    assert_eq!(run.code, 0, "train failed: {}", run.stderr);
    (model, world)
}

#[test]
fn corpus_stats_counts_every_span() {
    let run = biosum(["corpus-stats", &s(&fixture("corpus"))]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let expected = "bio\t2\nfame\t1\npersonality\t1\nsocial\t1\neducation\t2\n\
                    nationality\t1\nscandal\t1\npersonal\t1\nwork\t2\nTOTAL\t12\n";
    assert_eq!(run.stdout, expected);
}

#[test]
fn missing_corpus_dir_is_an_input_error() {
    let run = biosum(["corpus-stats", "/no/such/dir"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.starts_with("error[input]:"), "{}", run.stderr);
}

#[test]
fn train_same_seed_writes_byte_identical_artifacts() {
    let dir = TempDir::new().unwrap();
    let corpus = s(&fixture("corpus"));
    let a = dir.path().join("a.nb");
    let b = dir.path().join("b.nb");
    for model in [&a, &b] {
        let run = biosum(["train", &corpus, "--model", &s(model), "--seed", "42"]);
        assert_eq!(run.code, 0, "{}", run.stderr);
        assert!(run.stdout.contains("nb heldout accuracy"), "{}", run.stdout);
    }
    for suffix in ["", ".lex", ".svm", ".tree"] {
        let file_a = std::fs::read(dir.path().join(format!("a.nb{suffix}"))).unwrap();
        let file_b = std::fs::read(dir.path().join(format!("b.nb{suffix}"))).unwrap();
        assert_eq!(file_a, file_b, "artifact {suffix:?} differs between identical runs");
    }
}

#[test]
fn train_with_a_different_seed_changes_the_split() {
    let dir = TempDir::new().unwrap();
    let corpus = s(&fixture("corpus"));
    let mut reports = Vec::new();
    for seed in ["1", "2"] {
        let model = dir.path().join(format!("m{seed}.nb"));
        let run = biosum(["train", &corpus, "--model", &s(&model), "--seed", seed]);
        assert_eq!(run.code, 0, "{}", run.stderr);
        reports.push(std::fs::read(&model).unwrap());
    }
    // Different seeds shuffle different sentences into the training split;
    // the learned tables will not coincide on this corpus.
    assert_ne!(reports[0], reports[1]);
}

#[test]
fn train_without_model_flag_is_a_usage_error() {
    let run = biosum(["train", &s(&fixture("corpus"))]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.starts_with("error[usage]:"), "{}", run.stderr);
}

#[test]
fn build_world_stats_matches_a_hand_count() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("tiny.txt"), "a a b").unwrap();
    let out = dir.path().join("world.tsv");
    let run = biosum(["build-world-stats", &s(dir.path()), "--out", &s(&out)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let content = std::fs::read_to_string(&out).unwrap();
    assert_eq!(content, "TOTAL\t3\na\t2\nb\t1\n");
}

#[test]
fn summarize_is_deterministic_and_within_budget() {
    let dir = TempDir::new().unwrap();
    let (model, world) = train_into(dir.path());
    let args = [
        "summarize",
        &s(&fixture("news")),
        "Mara Ellison",
        "--model",
        &s(&model),
        "--world",
        &s(&world),
        "--budget",
        "200",
    ];
    let first = biosum(args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    // stdout is the summary text plus one trailing newline.
    assert!(
        first.stdout.len() <= 201,
        "summary exceeds byte budget: {} bytes",
        first.stdout.len() - 1
    );
    assert!(first.stdout.contains("Ellison"), "{}", first.stdout);
    let second = biosum(args);
    assert_eq!(second.code, 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn summarize_sidecar_echoes_the_effective_config() {
    let dir = TempDir::new().unwrap();
    let (model, world) = train_into(dir.path());
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "budget=150\nseed=5\n").unwrap();
    let sidecar = dir.path().join("side.txt");

    // Flag beats file: --budget 120 over budget=150.
    let run = biosum([
        "summarize",
        &s(&fixture("news")),
        "Mara Ellison",
        "--model",
        &s(&model),
        "--world",
        &s(&world),
        "--config",
        &s(&config),
        "--budget",
        "120",
        "--sidecar",
        &s(&sidecar),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let side = std::fs::read_to_string(&sidecar).unwrap();
    assert!(side.contains("budget=120\n"), "{side}");
    assert!(side.contains("seed=5\n"), "{side}");
    assert!(side.contains("person=Mara Ellison\n"), "{side}");
    assert!(side.lines().any(|l| l.starts_with("SENT\t")), "{side}");

    // File beats default when the flag is absent.
    let run = biosum([
        "summarize",
        &s(&fixture("news")),
        "Mara Ellison",
        "--model",
        &s(&model),
        "--world",
        &s(&world),
        "--config",
        &s(&config),
        "--sidecar",
        &s(&sidecar),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let side = std::fs::read_to_string(&sidecar).unwrap();
    assert!(side.contains("budget=150\n"), "{side}");
}

#[test]
fn summarize_with_no_mentions_warns_and_prints_nothing() {
    let dir = TempDir::new().unwrap();
    let (model, world) = train_into(dir.path());
    // The world fixture articles never mention this person.
    let run = biosum([
        "summarize",
        &s(&fixture("world")),
        "Mara Ellison",
        "--model",
        &s(&model),
        "--world",
        &s(&world),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout, "\n");
    assert!(run.stderr.contains("warning:"), "{}", run.stderr);
}

#[test]
fn summarize_without_world_flag_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let model = dir.path().join("m.nb");
    std::fs::write(&model, "x\n").unwrap();
    let run = biosum([
        "summarize",
        &s(&fixture("news")),
        "Mara Ellison",
        "--model",
        &s(&model),
    ]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.starts_with("error[usage]:"), "{}", run.stderr);
}

#[test]
fn corrupt_model_file_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let model = dir.path().join("m.nb");
    let world = dir.path().join("w.tsv");
    std::fs::write(&model, "not a model\n").unwrap();
    std::fs::write(&world, "TOTAL\t1\nword\t1\n").unwrap();
    let run = biosum([
        "summarize",
        &s(&fixture("news")),
        "Mara Ellison",
        "--model",
        &s(&model),
        "--world",
        &s(&world),
    ]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.starts_with("error[input]:"), "{}", run.stderr);
    assert!(run.stderr.contains("line 1"), "{}", run.stderr);
}

#[test]
fn trained_model_round_trips_through_summarize() {
    // Train, summarize, retrain into a different path, summarize again:
    // the loaded model must behave identically to the freshly trained one.
    let dir = TempDir::new().unwrap();
    let (model, world) = train_into(dir.path());
    let args = |model: &Path| {
        [
            "summarize".to_string(),
            s(&fixture("news")),
            "Mara Ellison".to_string(),
            "--model".to_string(),
            s(model),
            "--world".to_string(),
            s(&world),
        ]
    };
    let first = biosum(args(&model));
    assert_eq!(first.code, 0, "{}", first.stderr);
    let other = dir.path().join("retrained.nb");
    let run = biosum(["train", &s(&fixture("corpus")), "--model", &s(&other), "--seed", "7"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let second = biosum(args(&other));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn unknown_flag_is_a_usage_error_and_help_exits_zero() {
    let run = biosum(["corpus-stats", ".", "--bogus"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.starts_with("error[usage]:"), "{}", run.stderr);

    let run = biosum(["--help"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("biosum"), "{}", run.stdout);

    let run = biosum(["summarize", &s(&fixture("news")), "X", "--budget", "0"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.starts_with("error[usage]:"), "{}", run.stderr);
}

#[test]
fn rouge_on_identical_directories_scores_one_everywhere() {
    let dir = TempDir::new().unwrap();
    let refs = dir.path().join("refs");
    std::fs::create_dir(&refs).unwrap();
    std::fs::write(refs.join("a.txt"), "Ellison founded Brineworks in 2002.\n").unwrap();
    std::fs::write(refs.join("b.txt"), "The reef restoration project succeeded.\n").unwrap();
    let run = biosum(["rouge", &s(&refs), &s(&refs)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    for id in ["a", "b"] {
        assert!(
            run.stdout.contains(&format!("{id}\t1.0000\t1.0000\t1.0000\n")),
            "{}",
            run.stdout
        );
    }
    // Two pairs is enough for a resampled interval around the mean.
    assert!(run.stdout.contains("mean\t1.0000\tci95\t1.0000\t1.0000\n"), "{}", run.stdout);
}

#[test]
fn rouge_warns_about_unmatched_basenames_and_skips_them() {
    let dir = TempDir::new().unwrap();
    let cand = dir.path().join("cand");
    let refs = dir.path().join("refs");
    std::fs::create_dir(&cand).unwrap();
    std::fs::create_dir(&refs).unwrap();
    std::fs::write(cand.join("a.txt"), "one two three\n").unwrap();
    std::fs::write(refs.join("a.txt"), "one two three\n").unwrap();
    std::fs::write(cand.join("orphan.txt"), "no reference here\n").unwrap();
    std::fs::write(refs.join("widow.txt"), "no candidate here\n").unwrap();
    let run = biosum(["rouge", &s(&cand), &s(&refs)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stderr.contains("no reference for orphan"), "{}", run.stderr);
    assert!(run.stderr.contains("no candidate for widow"), "{}", run.stderr);
    assert!(run.stdout.contains("a\t1.0000"), "{}", run.stdout);
    assert!(!run.stdout.contains("orphan"), "{}", run.stdout);
    // A single surviving pair: no interval, just the mean.
    assert!(run.stdout.contains("mean\t1.0000\n"), "{}", run.stdout);
}

#[test]
fn rouge_with_no_matching_pairs_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let cand = dir.path().join("cand");
    let refs = dir.path().join("refs");
    std::fs::create_dir(&cand).unwrap();
    std::fs::create_dir(&refs).unwrap();
    std::fs::write(cand.join("x.txt"), "a\n").unwrap();
    std::fs::write(refs.join("y.txt"), "b\n").unwrap();
    let run = biosum(["rouge", &s(&cand), &s(&refs)]);
    assert_eq!(run.code, 2);
    // Skip warnings precede the final error line.
    assert!(run.stderr.contains("error[input]:"), "{}", run.stderr);
}

#[test]
fn rouge_ngram_mode_reports_its_metric() {
    let dir = TempDir::new().unwrap();
    let refs = dir.path().join("refs");
    std::fs::create_dir(&refs).unwrap();
    std::fs::write(refs.join("a.txt"), "a b a\n").unwrap();
    let run = biosum(["rouge", &s(&refs), &s(&refs), "--ngram", "2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.starts_with("# metric=N2"), "{}", run.stdout);
    assert!(run.stdout.contains("a\t1.0000"), "{}", run.stdout);
}

#[test]
fn rouge_rejects_a_zero_ngram_order() {
    let run = biosum(["rouge", ".", ".", "--ngram", "0"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.starts_with("error[usage]:"), "{}", run.stderr);
}
