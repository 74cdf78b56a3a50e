#!/usr/bin/env python3
"""Smoke test for the _biosum extension module.

Build the module first, then run this script from the repository root:

    cargo build -p biosum-py
    python3 python/smoke_test.py

The script copies the built cdylib next to itself under the importable
name, imports it, and exercises each exposed operation.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def import_biosum():
    candidates = [
        REPO / "target" / "debug" / "lib_biosum.so",
        REPO / "target" / "release" / "lib_biosum.so",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p biosum-py")
    stage = Path(tempfile.mkdtemp(prefix="biosum_py_"))
    shutil.copy2(built, stage / "_biosum.so")
    sys.path.insert(0, str(stage))
    import _biosum

    return _biosum


def main():
    b = import_biosum()

    # Text processing.
    assert b.stem("Surgeries") == "surger"
    assert b.stem("Ties") == "tie"
    sentences = b.segment("d", "Mara Ellison founded Brineworks. She lives in Dunmore.")
    assert [i for i, _ in sentences] == [0, 1]
    assert sentences[0][1] == "Mara Ellison founded Brineworks."

    # Classification round trip.
    train = [
        ({"born": 1.0, "founded": 1.0}, "bio2"),
        ({"born": 1.0, "studied": 1.0}, "bio2"),
        ({"market": 1.0, "rain": 1.0}, "none2"),
        ({"rain": 1.0, "ferry": 1.0}, "none2"),
    ]
    model = b.NbModel.train(train, "two")
    assert model.task == "two"
    assert model.predict({"born": 1.0}) == "bio2"
    assert model.predict({"rain": 1.0}) == "none2"
    scores = model.scores({"born": 1.0})
    assert set(scores) == {"bio2", "none2"}
    assert scores["bio2"] > scores["none2"]
    with tempfile.TemporaryDirectory() as tmp:
        path = str(Path(tmp) / "model.nb")
        model.save(path)
        reloaded = b.NbModel.load(path)
        assert reloaded.predict({"born": 1.0}) == "bio2"
        assert reloaded.scores({"born": 1.0}) == scores

    # Informativeness: identical statistics give exactly 1.
    counts = {"storm": 3, "reef": 2}
    assert b.word_informativeness("storm", counts, counts) == 1.0
    assert b.word_informativeness("reef", {"reef": 10}, {"reef": 1, "calm": 9}) > 1.0

    # Summarization respects the byte budget and ranks by informativeness.
    docs = [
        ("a", "Mara Ellison founded the tidal power firm Brineworks. Rain hit the harbor."),
        ("b", "Mara Ellison studied marine engineering at Calder University."),
    ]
    world = {"rain": 50, "harbor": 50, "the": 500, "hit": 20}
    text, kept, warnings = b.summarize(docs, "Mara Ellison", world, budget=120)
    assert len(text.encode()) <= 120, text
    assert "Ellison" in text
    assert all(doc_id in ("a", "b") for doc_id, _, _ in kept)
    assert warnings == []

    # Overlap scoring.
    p, r, f, degenerate = b.rouge_l("police kill the gunman", ["police killed the gunman"])
    assert (p, r) == (0.75, 0.75) and not degenerate
    assert math.isclose(f, 0.75)
    p, r, f, _ = b.rouge_n("a b a", ["a b"], 1)
    assert r == 1.0 and math.isclose(p, 2.0 / 3.0)
    assert b.lcs_length(["a", "b", "c"], ["a", "c"]) == 2
    assert b.truncate_bytes("aé", 2) == "a"

    point, lower, upper = b.bootstrap_ci([0.2, 0.4, 0.6], resamples=500, seed=1)
    assert lower <= point <= upper
    assert math.isclose(point, 0.4)

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
