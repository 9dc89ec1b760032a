import io
import statistics

import pytest

from termmatch import bench
from termmatch.terms import Application, is_syntactic


def test_seeded_corpus_is_reproducible():
    first = bench.corpus_text(bench.generate_corpus(bench.BenchConfig(seed=7)))
    second = bench.corpus_text(bench.generate_corpus(bench.BenchConfig(seed=7)))
    third = bench.corpus_text(bench.generate_corpus(bench.BenchConfig(seed=8)))
    assert first == second != third


def test_seed_falls_back_to_environment(monkeypatch):
    monkeypatch.setenv("TERMMATCH_SEED", "11")
    assert bench.BenchConfig().seed == 11
    monkeypatch.delenv("TERMMATCH_SEED")
    assert bench.BenchConfig().seed == 0
    assert bench.BenchConfig(seed=3).seed == 3


def test_linalg_proportions():
    corpus = bench.generate_corpus(bench.BenchConfig(patterns=199, subjects=1000, seed=2))
    heads = [p.expression.signature.name if isinstance(p.expression, Application) else "single"
             for p in corpus.patterns]
    singles = sum(1 for p in corpus.patterns
                  if not isinstance(p.expression, Application) or p.expression.signature.name in bench.UNARY)
    assert heads.count("Plus") == 61 and heads.count("Times") == 135 and singles == 3
    products = [s for s in corpus.subjects if s.signature.name == "Times"]
    assert 0.65 < len(products) / len(corpus.subjects) < 0.75
    assert min(len(s.args) for s in products) >= 2
    assert 4.7 < statistics.mean(len(s.args) for s in products) < 5.3


def test_syntactic_suite_is_syntactic():
    corpus = bench.generate_corpus(bench.BenchConfig(suite="syntactic", patterns=50, seed=4))
    assert all(is_syntactic(p) for p in corpus.patterns)


def test_matchers_agree_and_csv():
    config = bench.BenchConfig(suite="syntactic", patterns=15, subjects=40, seed=5, repetitions=2)
    rows = bench.run_bench(config)
    assert [r.matcher for r in rows] == ["one-to-one", "many-to-one", "dn"]
    assert len({r.matches for r in rows}) == 1
    assert all(r.setup_s >= 0 and r.match_s >= 0 for r in rows)
    buf = io.StringIO()
    bench.write_csv(rows, buf)
    assert buf.getvalue().splitlines()[0] == ",".join(bench.CSV_HEADER)


def test_config_validation():
    with pytest.raises(ValueError):
        bench.BenchConfig(suite="other")
    with pytest.raises(ValueError):
        bench.BenchConfig(patterns=0)
    with pytest.raises(ValueError):
        bench.run_bench(bench.BenchConfig(patterns=2, subjects=2, matchers=("fast",)))
