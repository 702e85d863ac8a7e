"""Exhaustive reference enumerators for small codes.

Nothing here goes through the coset recursion: the generator is built as an
explicit Kronecker power, the pre-transform as an explicit matrix, and every
codeword is listed.  Codewords are packed into uint64, so N <= 64.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .code import CodeSpec, Mode
from .spectrum import SpectrumResult, SpectrumStats
from .weights import WeightPoly


class OracleLimitError(ValueError):
    """The enumeration would exceed the configured size."""


@dataclass(frozen=True)
class OracleLimits:
    max_free_bits: int = 20

    def __post_init__(self):
        if not 0 <= self.max_free_bits <= 30:
            raise ValueError("max_free_bits must lie in [0, 30]")

    def check(self, free: int) -> None:
        if free > self.max_free_bits:
            raise OracleLimitError(
                f"{free} free bits exceed the oracle limit of {self.max_free_bits}")


DEFAULT_LIMITS = OracleLimits()


def generator_matrix(n: int) -> np.ndarray:
    g = np.ones((1, 1), dtype=np.uint8)
    kernel = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    for _ in range(n):
        g = np.kron(kernel, g)
    return g


def transform_matrix(spec: CodeSpec) -> np.ndarray:
    """Explicit T, with the columns pinned to zero in shortened mode cleared."""
    N = spec.N
    t = spec.transform
    if t.kind == "identity":
        T = np.eye(N, dtype=np.uint8)
    elif t.kind == "pac":
        T = np.zeros((N, N), dtype=np.uint8)
        for j in range(N):
            for k, gk in enumerate(t.g):
                if j + k < N:
                    T[j, j + k] = gk
    else:
        T = np.array(t.rows, dtype=np.uint8)
    for i in spec.forced_zero:
        T[:, i] = 0
    return T


def _pack_rows(m: np.ndarray) -> np.ndarray:
    if m.shape[1] > 64:
        raise OracleLimitError("the oracle packs codewords into 64 bits; N must be <= 64")
    weights = np.left_shift(np.uint64(1), np.arange(m.shape[1], dtype=np.uint64))
    return (m.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


def _span(offset: int, basis: Sequence[int]) -> np.ndarray:
    """All ``offset ^ sum(subset)``; index bit t selects ``basis[t]``."""
    words = np.array([offset], dtype=np.uint64)
    for b in basis:
        words = np.concatenate([words, words ^ np.uint64(b)])
    return words


def _masks(spec: CodeSpec) -> tuple[int, int]:
    pat = sum(1 << p for p in spec.pattern)
    keep = ((1 << spec.N) - 1) ^ pat
    return keep, pat


def _histogram(weights: np.ndarray, w_end: int | None) -> WeightPoly:
    w, c = np.unique(weights, return_counts=True)
    terms = {int(a): int(b) for a, b in zip(w, c) if w_end is None or a <= w_end}
    return WeightPoly(terms, w_end)


def brute_coset(spec: CodeSpec, u_prefix: Sequence[int], w_end: int | None = None,
                limits: OracleLimits = DEFAULT_LIMITS) -> WeightPoly:
    """Enumerator of the restricted coset fixing ``u_prefix``, by listing every tail.

    ``w_end`` defaults to the restricted length, matching the engine.
    """
    N = spec.N
    w_end = spec.length if w_end is None else w_end
    i = len(u_prefix) - 1
    limits.check(N - i - 1)
    rows = _pack_rows(generator_matrix(spec.n))
    offset = 0
    for j, b in enumerate(u_prefix):
        if b:
            offset ^= int(rows[j])
    words = _span(offset, [int(r) for r in rows[i + 1:]])
    keep, pat = _masks(spec)
    if spec.mode is Mode.SHORTENED:
        words = words[(words & np.uint64(pat)) == 0]
    words = words & np.uint64(keep)
    if spec.mode is Mode.PUNCTURED:
        words = np.unique(words)
    return _histogram(np.bitwise_count(words), w_end)


def codeword_table(spec: CodeSpec, limits: OracleLimits = DEFAULT_LIMITS
                   ) -> tuple[np.ndarray, np.ndarray]:
    """Every codeword of the unrestricted code with the id of its stage-s prefix.

    Returns ``(words, groups)`` where ``groups`` numbers the prefixes
    ``v_0..v_s``; words are full length (restriction is left to the caller).
    """
    limits.check(spec.K)
    G = generator_matrix(spec.n).astype(np.int64)
    T = transform_matrix(spec).astype(np.int64)
    basis_rows = _pack_rows((T @ G) % 2)
    s = spec.last_frozen
    tail = [j for j in spec.info_set if j > s]
    head = [j for j in spec.info_set if j <= s]
    words = _span(0, [int(basis_rows[j]) for j in tail + head])
    groups = np.arange(len(words), dtype=np.int64) >> len(tail)
    return words, groups


def brute_spectrum(spec: CodeSpec, w_end: int | None = None,
                   limits: OracleLimits = DEFAULT_LIMITS) -> SpectrumResult:
    """Sum over every stage-s prefix of its coset enumerator, with no pruning."""
    w_end = spec.length if w_end is None else w_end
    words, groups = codeword_table(spec, limits)
    keep, pat = _masks(spec)
    if spec.mode is Mode.SHORTENED:
        ok = (words & np.uint64(pat)) == 0
        words, groups = words[ok], groups[ok]
    words = words & np.uint64(keep)
    if spec.mode is Mode.PUNCTURED:
        # distinct restricted words inside each prefix group
        order = np.lexsort((words, groups))
        words, groups = words[order], groups[order]
        first = np.ones(len(words), dtype=bool)
        first[1:] = (words[1:] != words[:-1]) | (groups[1:] != groups[:-1])
        words = words[first]
    poly = _histogram(np.bitwise_count(words), w_end)
    n_groups = 1 << len([j for j in spec.info_set if j <= spec.last_frozen])
    stats = SpectrumStats(n_c=n_groups, survivors=n_groups)
    return SpectrumResult(terms=list(poly.items()), w_end=w_end, stats=stats)
