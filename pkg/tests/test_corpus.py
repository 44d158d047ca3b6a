import pytest

from segrekit.corpus import (
    CorpusFormatError, entry_names, load_entry, parse_expectations, run_corpus, sample_points,
    variety_entries,
)
from segrekit.segrecore import point_on_variety

REQUIRED = {"isol", "noncomplex", "mfld", "mfld2", "regularSbad", "nonvar", "Sbadrealline",
            "regularbad", "whitney"}


def test_required_entries_present():
    assert REQUIRED <= set(entry_names())


def test_every_expectation_is_tagged():
    for name in entry_names():
        for e in load_entry(name).expectations:
            assert e.tag in ("PAPER", "DERIVED", "TRIVIAL")


def test_unknown_entry():
    with pytest.raises(KeyError, match="unknown corpus entry"):
        run_corpus(["nosuch"])


@pytest.mark.parametrize("text", [
    "expect locus_basis z",
    "expect locus_basis z [GUESS]",
    "bogus line",
])
def test_format_errors(text):
    with pytest.raises(CorpusFormatError):
        parse_expectations(text, "t")


def test_asserted_lines_are_annotations():
    exps, asserted, real_vars = parse_expectations(
        "# c\nasserted something holds\nrealvars x y\nexpect homogeneity x*y | 2 [TRIVIAL]\n")
    assert asserted == ["something holds"]
    assert real_vars == ("x", "y")
    assert exps[0].fields == ("x*y", "2")


@pytest.mark.parametrize("name", ["isol", "Sbadrealline", "noncomplex"])
def test_spec_examples(name):
    report = run_corpus([name])
    (entry,) = report["entries"]
    assert entry["pass"], [c for c in entry["checks"] if not c["pass"]]
    keyed = {c["key"]: c for c in entry["checks"]}
    if name == "isol":
        assert keyed["locus_basis"]["actual"] == ["z", "w", "xi"]
    elif name == "Sbadrealline":
        assert keyed["locus_basis"]["actual"] == ["z", "w"]
    else:
        assert keyed["locus_basis"]["actual"] == ["1"]


def test_full_run_sorted_and_passing():
    report = run_corpus()
    assert [e["name"] for e in report["entries"]] == sorted(e["name"] for e in report["entries"])
    assert report["pass"], [(e["name"], c) for e in report["entries"] for c in e["checks"] if not c["pass"]]


def test_mismatch_is_reported(monkeypatch):
    from segrekit import corpus

    original = corpus.parse_expectations

    def tampered(text, name=""):
        exps, asserted, rv = original(text, name)
        if name == "isol":
            exps = [e if e.key != "locus_dim" else e.__class__(e.key, ("2",), e.tag, e.line) for e in exps]
        return exps, asserted, rv

    monkeypatch.setattr(corpus, "parse_expectations", tampered)
    report = run_corpus(["isol"])
    assert not report["pass"]
    bad = [c for c in report["entries"][0]["checks"] if not c["pass"]]
    assert [c["key"] for c in bad] == ["locus_dim"] and bad[0]["actual"] == 0


@pytest.mark.parametrize("name", variety_entries())
def test_samplers_stay_on_variety(name):
    X = load_entry(name).variety
    assert all(point_on_variety(X, q) for q in sample_points(name, 40, seed=9))
