from collections import Counter
from itertools import product

import numpy as np
import pytest
from scipy import sparse, stats
from sklearn.base import clone

from sentibubbles.gibbs import GibbsLda, expand_tokens, gibbs_sweep, init_counts

from synthetic import disjoint_vocab_matrix, top_terms_purity


def brute_counts(z, doc_of, word_of, n_docs, n_topics, n_words):
    n_dk = [[0] * n_topics for _ in range(n_docs)]
    n_kv = [[0] * n_words for _ in range(n_topics)]
    n_k = [0] * n_topics
    for i, k in enumerate(z):
        n_dk[doc_of[i]][k] += 1
        n_kv[k][word_of[i]] += 1
        n_k[k] += 1
    return n_dk, n_kv, n_k


def exact_sweep_distribution(doc_of, word_of, n_topics, n_words, alpha, beta):
    """Exact distribution of assignments after one sequential Gibbs sweep.

    Enumerates every uniform initial state and every branch of the sweep,
    propagating exact probabilities from the full conditional.  Independent
    of the sampler implementation.
    """
    n = len(doc_of)
    dist: Counter = Counter()
    init_prob = 1.0 / n_topics**n
    for init in product(range(n_topics), repeat=n):
        paths = [(list(init), init_prob)]
        for i in range(n):
            next_paths = []
            for z, prob in paths:
                n_dk, n_kv, n_k = brute_counts(
                    z, doc_of, word_of, max(doc_of) + 1, n_topics, n_words
                )
                d, w, old = doc_of[i], word_of[i], z[i]
                n_dk[d][old] -= 1
                n_kv[old][w] -= 1
                n_k[old] -= 1
                weights = [
                    (n_dk[d][k] + alpha)
                    * (n_kv[k][w] + beta)
                    / (n_k[k] + n_words * beta)
                    for k in range(n_topics)
                ]
                total = sum(weights)
                for k in range(n_topics):
                    branched = list(z)
                    branched[i] = k
                    next_paths.append((branched, prob * weights[k] / total))
            paths = next_paths
        for z, prob in paths:
            dist[tuple(z)] += prob
    return dist


class TestSweepKernel:
    def test_count_conservation_every_sweep(self):
        X, _ = disjoint_vocab_matrix(n_docs=20, half_size=10, tokens_per_doc=12, seed=5)
        X = sparse.csr_matrix(X)
        doc_ids, word_ids = expand_tokens(X)
        n_docs, n_words = X.shape
        n_topics = 3
        rng = np.random.Generator(np.random.PCG64(11))
        z = rng.integers(0, n_topics, doc_ids.shape[0], dtype=np.int32)
        n_dk, n_kv, n_k = init_counts(doc_ids, word_ids, z, n_docs, n_topics, n_words)
        doc_lengths = np.asarray(X.sum(axis=1)).ravel()
        scratch = np.empty(n_topics)
        for _ in range(30):
            gibbs_sweep(
                doc_ids, word_ids, z, n_dk, n_kv, n_k,
                0.5, 0.01, rng.random(doc_ids.shape[0]), scratch,
            )
            assert (n_dk.sum(axis=1) == doc_lengths).all()
            assert (n_kv.sum(axis=1) == n_k).all()
            assert n_k.sum() == doc_ids.shape[0]
            assert (n_dk >= 0).all() and (n_kv >= 0).all() and (n_k >= 0).all()

    def test_counts_consistent_with_assignments(self):
        X, _ = disjoint_vocab_matrix(n_docs=10, half_size=6, tokens_per_doc=8, seed=3)
        X = sparse.csr_matrix(X)
        doc_ids, word_ids = expand_tokens(X)
        n_topics = 2
        rng = np.random.Generator(np.random.PCG64(1))
        z = rng.integers(0, n_topics, doc_ids.shape[0], dtype=np.int32)
        n_dk, n_kv, n_k = init_counts(doc_ids, word_ids, z, X.shape[0], n_topics, X.shape[1])
        scratch = np.empty(n_topics)
        for _ in range(5):
            gibbs_sweep(
                doc_ids, word_ids, z, n_dk, n_kv, n_k,
                0.1, 0.1, rng.random(doc_ids.shape[0]), scratch,
            )
        expected = brute_counts(
            z.tolist(), doc_ids.tolist(), word_ids.tolist(),
            X.shape[0], n_topics, X.shape[1],
        )
        assert n_dk.tolist() == expected[0]
        assert n_kv.tolist() == expected[1]
        assert n_k.tolist() == expected[2]


class TestSamplerDistribution:
    def test_single_sweep_matches_enumeration(self):
        # 3-token corpus: doc0 = {w0, w1}, doc1 = {w0}; K=2
        X = np.array([[1, 1], [1, 0]])
        alpha, beta = 0.7, 0.4
        doc_of, word_of = [0, 0, 1], [0, 1, 0]
        exact = exact_sweep_distribution(doc_of, word_of, 2, 2, alpha, beta)
        assert abs(sum(exact.values()) - 1.0) < 1e-12

        runs = 4000
        observed: Counter = Counter()
        for seed in range(runs):
            est = GibbsLda(
                n_topics=2, alpha=alpha, beta=beta,
                iterations=1, burn_in=0, seed=seed,
            ).fit(X)
            observed[tuple(est.assignments_.tolist())] += 1

        states = sorted(exact)
        expected = np.array([exact[s] * runs for s in states])
        counts = np.array([observed.get(s, 0) for s in states])
        assert counts.sum() == runs
        result = stats.chisquare(counts, f_exp=expected)
        assert result.pvalue > 0.001


class TestFit:
    def test_degenerate_single_topic_single_term(self):
        est = GibbsLda(n_topics=1, iterations=5, burn_in=0, seed=0).fit([[5]])
        assert est.components_.tolist() == [[1.0]]
        assert est.doc_topic_.tolist() == [[1.0]]

    def test_rows_normalized_and_positive(self):
        X, _ = disjoint_vocab_matrix(n_docs=40, half_size=12, tokens_per_doc=15, seed=9)
        est = GibbsLda(n_topics=4, iterations=60, burn_in=20, seed=4).fit(X)
        np.testing.assert_allclose(est.components_.sum(axis=1), 1.0, atol=1e-9)
        np.testing.assert_allclose(est.doc_topic_.sum(axis=1), 1.0, atol=1e-9)
        assert est.components_.min() > 0
        assert est.doc_topic_.min() > 0
        assert est.components_.shape == (4, X.shape[1])
        assert est.doc_topic_.shape == (X.shape[0], 4)

    def test_seed_determinism(self):
        X, _ = disjoint_vocab_matrix(n_docs=30, half_size=10, tokens_per_doc=10, seed=7)
        a = GibbsLda(n_topics=3, iterations=40, burn_in=10, seed=123).fit(X)
        b = GibbsLda(n_topics=3, iterations=40, burn_in=10, seed=123).fit(X)
        assert np.array_equal(a.components_, b.components_)
        assert np.array_equal(a.doc_topic_, b.doc_topic_)
        assert np.array_equal(a.assignments_, b.assignments_)
        c = GibbsLda(n_topics=3, iterations=40, burn_in=10, seed=124).fit(X)
        assert not np.array_equal(a.assignments_, c.assignments_)

    def test_recovery_on_disjoint_vocabulary(self):
        X, labels = disjoint_vocab_matrix()
        est = GibbsLda(
            n_topics=2, alpha=0.5, beta=0.01, iterations=500, burn_in=100, seed=42
        ).fit(X)
        half = X.shape[1] // 2
        for k in range(2):
            assert top_terms_purity(est.components_[k], half) >= 0.9
        # the two topics specialize on different halves
        top0 = set(np.argsort(-est.components_[0])[:10])
        top1 = set(np.argsort(-est.components_[1])[:10])
        assert ({t < half for t in top0} != {t < half for t in top1})

    def test_dense_and_sparse_agree(self):
        X, _ = disjoint_vocab_matrix(n_docs=12, half_size=8, tokens_per_doc=9, seed=13)
        dense = GibbsLda(n_topics=2, iterations=20, burn_in=5, seed=1).fit(X)
        sp = GibbsLda(n_topics=2, iterations=20, burn_in=5, seed=1).fit(
            sparse.csr_matrix(X)
        )
        assert np.array_equal(dense.components_, sp.components_)

    def test_averaging_counts_sampled_sweeps(self):
        X = [[3, 2], [1, 4]]
        est = GibbsLda(n_topics=2, iterations=25, burn_in=5, sample_every=10, seed=0).fit(X)
        # sweeps 5, 15 (0-based) are sampled within 25 iterations
        assert est.n_samples_averaged_ == 2
        est2 = GibbsLda(n_topics=2, iterations=6, burn_in=5, sample_every=10, seed=0).fit(X)
        assert est2.n_samples_averaged_ == 1  # final state only


class TestValidation:
    def test_empty_corpus(self):
        with pytest.raises(ValueError, match="empty"):
            GibbsLda(iterations=2, burn_in=0).fit(np.zeros((0, 3)))

    def test_empty_document(self):
        with pytest.raises(ValueError, match="at least one token"):
            GibbsLda(iterations=2, burn_in=0).fit([[1, 0], [0, 0]])

    def test_negative_counts(self):
        with pytest.raises(ValueError, match="non-negative"):
            GibbsLda(iterations=2, burn_in=0).fit([[1, -1]])

    def test_fractional_counts(self):
        with pytest.raises(ValueError, match="integer"):
            GibbsLda(iterations=2, burn_in=0).fit([[1.5, 1]])

    def test_hyperparameter_bounds(self):
        with pytest.raises(ValueError):
            GibbsLda(n_topics=0, iterations=2, burn_in=0).fit([[1]])
        with pytest.raises(ValueError):
            GibbsLda(alpha=0.0, iterations=2, burn_in=0).fit([[1]])
        with pytest.raises(ValueError):
            GibbsLda(beta=-1.0, iterations=2, burn_in=0).fit([[1]])
        with pytest.raises(ValueError):
            GibbsLda(iterations=5, burn_in=5).fit([[1]])

    def test_alpha_default_is_50_over_k(self):
        est = GibbsLda(n_topics=25)
        assert est._resolved_alpha() == 2.0

    def test_sklearn_params_and_clone(self):
        est = GibbsLda(n_topics=7, beta=0.02, seed=9)
        params = est.get_params()
        assert params["n_topics"] == 7
        assert params["beta"] == 0.02
        cloned = clone(est)
        assert cloned.get_params() == params
