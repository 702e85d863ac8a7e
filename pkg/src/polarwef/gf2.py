"""Binary linear algebra for the Arikan Kronecker-power generator.

Rows of ``G_N = G_2^{(x)n}`` are never stored as a dense matrix.  Row ``r``
has a one in column ``c`` iff the binary support of ``c`` is contained in the
binary support of ``r``, so rows are synthesized on demand as packed Python
integers (bit ``c`` of the integer is column ``c``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Bits = tuple[int, ...]


def pack_bits(bits: Sequence[int]) -> int:
    """Pack a 0/1 sequence into an int, element ``j`` going to bit ``j``."""
    word = 0
    for j, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"bit {j} is {b!r}, expected 0 or 1")
        if b:
            word |= 1 << j
    return word


def unpack_bits(word: int, length: int) -> Bits:
    return tuple((word >> j) & 1 for j in range(length))


def _check_level(n: int) -> int:
    if n < 0:
        raise ValueError(f"level count must be non-negative, got {n}")
    return 1 << n


@lru_cache(maxsize=None)
def row_mask(r: int) -> int:
    """Packed row ``r`` of the Kronecker power (independent of ``n`` once r < 2^n)."""
    mask = 0
    sub = r
    while True:
        mask |= 1 << sub
        if sub == 0:
            return mask
        sub = (sub - 1) & r


def kron_row(n: int, r: int) -> Bits:
    N = _check_level(n)
    if not 0 <= r < N:
        raise IndexError(f"row {r} out of range for N={N}")
    return unpack_bits(row_mask(r), N)


def image_mask(u_word: int) -> int:
    """XOR of the generator rows selected by the set bits of ``u_word``."""
    x = 0
    while u_word:
        low = u_word & -u_word
        x ^= row_mask(low.bit_length() - 1)
        u_word ^= low
    return x


def prefix_image(u_prefix: Sequence[int], n: int) -> Bits:
    """Image ``[u_0..u_i, 0, ..., 0] G_N`` of a prefix padded with zeros."""
    N = _check_level(n)
    if len(u_prefix) > N:
        raise ValueError(f"prefix of length {len(u_prefix)} exceeds N={N}")
    return unpack_bits(image_mask(pack_bits(u_prefix)), N)


def bit_reversal(j: int, n: int) -> int:
    N = _check_level(n)
    if not 0 <= j < N:
        raise IndexError(f"index {j} out of range for N={N}")
    out = 0
    for _ in range(n):
        out = (out << 1) | (j & 1)
        j >>= 1
    return out


@dataclass(frozen=True)
class RankProfile:
    """GF(2) ranks of the trailing generator rows restricted to kept columns.

    ``ranks[i]`` is the rank of rows ``i+1 .. N-1`` of ``G_N`` once the
    pattern columns are deleted; ``full_rank`` is the rank of all N rows.
    """

    n: int
    pattern: frozenset[int]
    ranks: tuple[int, ...]
    full_rank: int

    def deficiency(self, i: int) -> int:
        """Number of dependent tail rows for a prefix ending at index ``i``.

        ``i = -1`` denotes the empty prefix (all rows free).
        """
        N = 1 << self.n
        if i == -1:
            return N - self.full_rank
        return (N - i - 1) - self.ranks[i]


def rank_profile(n: int, pattern: Iterable[int]) -> RankProfile:
    pattern = frozenset(pattern)
    N = _check_level(n)
    for p in pattern:
        if not 0 <= p < N:
            raise IndexError(f"pattern index {p} out of range for N={N}")
    return _rank_profile(n, pattern)


@lru_cache(maxsize=64)
def _rank_profile(n: int, pattern: frozenset[int]) -> RankProfile:
    N = 1 << n
    keep = ((1 << N) - 1) ^ sum(1 << p for p in pattern)
    # basis keyed by leading bit; rows are inserted bottom-up so one pass
    # yields the rank of every tail
    basis: dict[int, int] = {}
    ranks = [0] * N
    for r in range(N - 1, -1, -1):
        if r < N - 1:
            ranks[r] = len(basis)
        v = row_mask(r) & keep
        while v:
            lead = v.bit_length() - 1
            pivot = basis.get(lead)
            if pivot is None:
                basis[lead] = v
                break
            v ^= pivot
    return RankProfile(n=n, pattern=pattern, ranks=tuple(ranks), full_rank=len(basis))


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of packed-integer rows over GF(2)."""
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            lead = v.bit_length() - 1
            pivot = basis.get(lead)
            if pivot is None:
                basis[lead] = v
                break
            v ^= pivot
    return len(basis)
