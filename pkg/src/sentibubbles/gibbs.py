"""Collapsed Gibbs sampler for latent Dirichlet allocation.

The estimator follows the scikit-learn API (``fit`` on a documents x
vocabulary count matrix, ``get_params``/``set_params`` via ``BaseEstimator``)
so it composes with the wider ecosystem.  Inference resamples every token's
topic from the full conditional with the Dirichlet parameters integrated out:

    p(z_i = k | rest) ∝ (n_dk + alpha) * (n_kv + beta) / (n_k + V * beta)

where the counts exclude token i.  After ``burn_in`` sweeps the sufficient
statistics are accumulated every ``sample_every``-th sweep and averaged;
the smoothed estimates are

    phi[k][v]   = (n_kv + beta)  / (n_k + V * beta)
    theta[d][k] = (n_dk + alpha) / (n_d + K * alpha)

Randomness comes from numpy's PCG64 generator seeded with ``seed``; draw
order is fixed (one batch of topic initializations, then one batch of N
uniforms per sweep, consumed token by token in corpus order), so identical
inputs and seed give bit-identical models on any platform.
"""

from __future__ import annotations

import numpy as np
from numba import njit
from scipy import sparse
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError


@njit(cache=True)
def gibbs_sweep(doc_ids, word_ids, z, n_dk, n_kv, n_k, alpha, beta, uniforms, scratch):
    """One full sweep over all tokens, updating assignments and counts in place.

    ``uniforms`` holds one pre-drawn uniform [0, 1) variate per token;
    ``scratch`` is a float64 work array of length K.  The per-document
    denominator (n_d + K*alpha) is constant while resampling one token and
    drops out of the normalization.
    """
    n_topics = n_kv.shape[0]
    vbeta = n_kv.shape[1] * beta
    for i in range(doc_ids.shape[0]):
        d = doc_ids[i]
        w = word_ids[i]
        k_old = z[i]
        n_dk[d, k_old] -= 1
        n_kv[k_old, w] -= 1
        n_k[k_old] -= 1

        total = 0.0
        for k in range(n_topics):
            total += (n_dk[d, k] + alpha) * (n_kv[k, w] + beta) / (n_k[k] + vbeta)
            scratch[k] = total
        u = uniforms[i] * total
        k_new = 0
        while k_new < n_topics - 1 and u >= scratch[k_new]:
            k_new += 1

        z[i] = k_new
        n_dk[d, k_new] += 1
        n_kv[k_new, w] += 1
        n_k[k_new] += 1


def expand_tokens(X: sparse.csr_matrix) -> tuple[np.ndarray, np.ndarray]:
    """Flatten a count matrix into parallel (doc id, word id) token arrays.

    Order is fixed: documents by row, words within a row by ascending column
    index, each token repeated by its count.  This ordering is part of the
    determinism contract.
    """
    doc_lengths = np.asarray(X.sum(axis=1)).ravel()
    doc_ids = np.repeat(np.arange(X.shape[0], dtype=np.int32), doc_lengths)
    word_ids = np.repeat(X.indices, X.data).astype(np.int32)
    return doc_ids, word_ids


def init_counts(
    doc_ids: np.ndarray, word_ids: np.ndarray, z: np.ndarray, n_docs: int,
    n_topics: int, n_words: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Count matrices (n_dk, n_kv, n_k) consistent with assignments ``z``."""
    n_dk = np.zeros((n_docs, n_topics), dtype=np.int64)
    n_kv = np.zeros((n_topics, n_words), dtype=np.int64)
    np.add.at(n_dk, (doc_ids, z), 1)
    np.add.at(n_kv, (z, word_ids), 1)
    n_k = np.bincount(z, minlength=n_topics).astype(np.int64)
    return n_dk, n_kv, n_k


class GibbsLda(BaseEstimator):
    """Latent Dirichlet allocation fitted by collapsed Gibbs sampling.

    Parameters
    ----------
    n_topics : number of topics K.
    alpha : symmetric document-topic concentration; None means 50 / K.
    beta : symmetric topic-word concentration.
    iterations : total Gibbs sweeps.
    burn_in : sweeps discarded before estimation; must be < iterations.
    sample_every : post-burn-in thinning interval for count averaging.
    seed : PCG64 seed (64-bit unsigned).

    Attributes after ``fit``
    ------------------------
    components_ : (K, V) smoothed topic-word probabilities, rows sum to 1.
    doc_topic_ : (D, K) smoothed document-topic probabilities, rows sum to 1.
    assignments_ : final topic of every token, in ``expand_tokens`` order.
    n_samples_averaged_ : number of sweeps that entered the averages.
    """

    def __init__(
        self,
        n_topics: int = 10,
        alpha: float | None = None,
        beta: float = 0.01,
        iterations: int = 1000,
        burn_in: int = 200,
        sample_every: int = 10,
        seed: int = 0,
    ):
        self.n_topics = n_topics
        self.alpha = alpha
        self.beta = beta
        self.iterations = iterations
        self.burn_in = burn_in
        self.sample_every = sample_every
        self.seed = seed

    def _resolved_alpha(self) -> float:
        return 50.0 / self.n_topics if self.alpha is None else self.alpha

    def _validate(self, X) -> sparse.csr_matrix:
        if self.n_topics < 1:
            raise ValueError("n_topics must be >= 1")
        if self._resolved_alpha() <= 0:
            raise ValueError("alpha must be > 0")
        if self.beta <= 0:
            raise ValueError("beta must be > 0")
        if not 0 <= self.burn_in < self.iterations:
            raise ValueError("required: iterations > burn_in >= 0")
        if self.sample_every < 1:
            raise ValueError("sample_every must be >= 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")

        if sparse.issparse(X):
            X = X.tocsr()
        else:
            arr = np.asarray(X)
            if arr.ndim != 2:
                raise ValueError("X must be a 2-d count matrix")
            X = sparse.csr_matrix(arr)
        if X.shape[0] == 0:
            raise ValueError("corpus is empty")
        data = X.data
        if data.size and (
            np.any(data < 0) or not np.allclose(data, np.round(data))
        ):
            raise ValueError("X must contain non-negative integer counts")
        X = X.astype(np.int64)
        X.sort_indices()
        X.eliminate_zeros()
        if np.any(np.asarray(X.sum(axis=1)).ravel() == 0):
            raise ValueError("every document must contain at least one token")
        return X

    def fit(self, X, y=None) -> "GibbsLda":
        """Run the sampler on a (documents x vocabulary) count matrix."""
        X = self._validate(X)
        n_docs, n_words = X.shape
        n_topics = self.n_topics
        alpha = self._resolved_alpha()
        beta = self.beta

        doc_ids, word_ids = expand_tokens(X)
        n_tokens = doc_ids.shape[0]

        rng = np.random.Generator(np.random.PCG64(int(self.seed)))
        z = rng.integers(0, n_topics, n_tokens, dtype=np.int32)
        n_dk, n_kv, n_k = init_counts(
            doc_ids, word_ids, z, n_docs, n_topics, n_words
        )

        acc_dk = np.zeros((n_docs, n_topics), dtype=np.float64)
        acc_kv = np.zeros((n_topics, n_words), dtype=np.float64)
        scratch = np.empty(n_topics, dtype=np.float64)
        n_sampled = 0
        for sweep in range(self.iterations):
            gibbs_sweep(
                doc_ids, word_ids, z, n_dk, n_kv, n_k,
                alpha, beta, rng.random(n_tokens), scratch,
            )
            if sweep >= self.burn_in and (sweep - self.burn_in) % self.sample_every == 0:
                acc_dk += n_dk
                acc_kv += n_kv
                n_sampled += 1

        avg_dk = acc_dk / n_sampled
        avg_kv = acc_kv / n_sampled
        avg_k = avg_kv.sum(axis=1)
        doc_lengths = np.asarray(X.sum(axis=1)).ravel()

        self.components_ = (avg_kv + beta) / (avg_k[:, None] + n_words * beta)
        self.doc_topic_ = (avg_dk + alpha) / (
            doc_lengths[:, None] + n_topics * alpha
        )
        self.assignments_ = z
        self.n_samples_averaged_ = n_sampled
        self.n_features_in_ = n_words
        return self

    def fit_transform(self, X, y=None) -> np.ndarray:
        """Fit and return the document-topic distribution."""
        return self.fit(X).doc_topic_

    def check_fitted(self) -> None:
        if not hasattr(self, "components_"):
            raise NotFittedError("GibbsLda instance is not fitted yet")
