import math

import numpy as np
import pytest

import topicforge as tf


def small_corpus():
    corpus, dropped = tf.build_corpus([("a", ["x", "y"]), ("b", ["y", "y"]), ("c", [])])
    assert dropped == ["c"]
    return corpus


def test_preprocess_and_stem():
    assert tf.porter_stem("caresses") == "caress"
    assert tf.preprocess("The Running dogs, a cat!") == ["run", "dog", "cat"]


def test_sparse_round_trip():
    entries = tf.decode_sparse("2 4:2,7:1")
    assert entries == [(4, 2), (7, 1)]
    assert tf.encode_sparse(entries) == "2 4:2,7:1"
    with pytest.raises(tf.ParseError):
        tf.decode_sparse("2 7:1,4:2")
    with pytest.raises(tf.DataError):
        tf.decode_sparse("1 0:0")


def test_wordcount_matches_serial():
    tokens = ["b", "a", "b", "c", "b"] * 50
    assert tf.wordcount(tokens, 1) == tf.wordcount(tokens, 7) == {"a": 50, "b": 150, "c": 50}
    with pytest.raises(ValueError):
        tf.wordcount(tokens, 0)


def test_full_conditional_example():
    p = tf.full_conditional([2, 0], [3, 1], [1, 1], 2, 2, 0.5, 0.5)
    assert p == pytest.approx([5 / 7, 2 / 7], abs=1e-12)


def test_train_estimates_are_stochastic():
    corpus = small_corpus()
    hp = tf.Hyperparams(2, alpha=0.5, chi=0.5, burn_in=5, iterations=20, seed=3)
    model, trace = tf.train(corpus, hp, trace_every=5)
    assert model.phi.shape == (2, 2) and model.psi.shape == (2, 2)
    np.testing.assert_allclose(model.phi.sum(axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(model.psi.sum(axis=1), 1.0, atol=1e-12)
    assert trace.iterations == [0, 5, 10, 15, 20]
    again, _ = tf.train(corpus, hp, trace_every=5)
    np.testing.assert_array_equal(model.phi, again.phi)
    assert len(tf.top_words(model, 0, 2)) == 2
    assert tf.Hyperparams(4).alpha == 12.5


def test_chains_and_convergence():
    synth_config = tf.SynthConfig()
    synth_config.documents = 40
    synth_config.doc_length = 20
    synth_config.vocab = 60
    synth_config.topics = 3
    synth = tf.generate_synthetic(synth_config)
    corpus, _ = tf.build_corpus(synth["documents"])
    hp = tf.Hyperparams(3, iterations=60, burn_in=30, seed=1)
    runs = tf.train_chains(corpus, hp, 3, trace_every=10)
    report = tf.convergence_report([trace for _, trace in runs], window=2, threshold=0.05)
    assert report.iterations == [0, 10, 20, 30, 40, 50, 60]
    assert len(report.relative) == 7


def test_tfidf_and_unigram():
    corpus, _ = tf.build_corpus([("a", ["x", "x", "y"]), ("b", ["y"]), ("c", ["y", "z"])])
    table = tf.fit_tfidf(corpus)
    assert table.weights[0][0] == (0, pytest.approx(2 * math.log(3), abs=1e-12))
    assert table.idf(corpus.vocabulary.find("y")) == 0.0
    assert tf.tfidf_top_terms(table, 0, 5) == [(0, pytest.approx(2 * math.log(3)))]
    uni = tf.fit_unigram(corpus)
    assert sum(uni.p) == pytest.approx(1.0)
    expected = 2 * math.log(2 / 6) + 3 * math.log(3 / 6) + math.log(1 / 6)
    assert tf.unigram_log_prob(uni, corpus) == pytest.approx(expected, abs=1e-12)


def test_evaluation_sweep(tmp_path):
    corpus, _ = tf.build_corpus([("a", ["x", "y"]), ("b", ["z", "z"])])
    model, _ = tf.train(corpus, tf.Hyperparams(2, iterations=10, burn_in=5), trace_every=0)
    path = tmp_path / "model.txt"
    tf.write_model(path, model)
    loaded = tf.read_model(path)
    np.testing.assert_array_equal(loaded.psi, model.psi)
    lists = tf.tfidf_term_lists(tf.fit_tfidf(corpus), corpus.vocabulary, 3)
    targets = tf.TargetList(["z", "x"])
    rows = tf.sweep_report(loaded, lists, targets, tw_values=[1, 3])
    assert [(r.model, r.tw, r.tg) for r in rows][:2] == [("lda", 1, 1), ("lda", 1, 2)]
    assert all(0.0 <= r.precision.value <= 1.0 for r in rows)
    assert tf.precision([{"x"}, {"q"}], {"x"}).value == 0.5
    assert tf.TargetList.from_raw(["Running", "the"]).terms == ["run"]
