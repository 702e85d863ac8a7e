"""Code instances: frozen sets, pre-transforms, rate-matching patterns, encoding."""

from __future__ import annotations

import enum
import json
import os
import random
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .gf2 import Bits, bit_reversal, image_mask, pack_bits, row_mask, unpack_bits

RELIABILITY_ENV = "POLARWEF_RELIABILITY_FILE"


class Mode(str, enum.Enum):
    PLAIN = "plain"
    PUNCTURED = "punctured"
    SHORTENED = "shortened"


class Status(enum.IntEnum):
    """Per-coordinate leaf status used by the coset recursion."""

    NORMAL = 0
    PUNCTURED = 1
    SHORTENED = 2


@dataclass(frozen=True)
class PreTransform:
    """Upper-triangular map ``u = v T`` applied before the polar transform.

    ``kind`` is ``"identity"``, ``"pac"`` (convolution with coefficients
    ``g``, ``g[0]`` multiplying ``v_i``) or ``"matrix"`` (explicit rows of T).
    """

    kind: str = "identity"
    g: tuple[int, ...] = ()
    rows: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.kind == "identity":
            return
        if self.kind == "pac":
            if not self.g or self.g[0] != 1:
                raise ValueError("PAC coefficients must start with g_0 = 1")
            if any(b not in (0, 1) for b in self.g):
                raise ValueError("PAC coefficients must be binary")
        elif self.kind == "matrix":
            size = len(self.rows)
            for j, row in enumerate(self.rows):
                if len(row) != size:
                    raise ValueError("pre-transform matrix must be square")
                if any(b not in (0, 1) for b in row):
                    raise ValueError("pre-transform matrix must be binary")
                if row[j] != 1 or any(row[:j]):
                    raise ValueError(
                        "pre-transform matrix must be upper triangular with unit diagonal")
        else:
            raise ValueError(f"unknown pre-transform kind {self.kind!r}")

    @classmethod
    def identity(cls) -> PreTransform:
        return cls()

    @classmethod
    def pac(cls, g: Sequence[int] | str) -> PreTransform:
        if isinstance(g, str):
            g = [int(ch) for ch in g.strip()]
        return cls(kind="pac", g=tuple(int(b) for b in g))

    @classmethod
    def matrix(cls, rows: Sequence[Sequence[int]]) -> PreTransform:
        return cls(kind="matrix", rows=tuple(tuple(int(b) for b in r) for r in rows))

    @classmethod
    def toeplitz(cls, g: Sequence[int], N: int) -> PreTransform:
        """Explicit-matrix form of the PAC convolution with coefficients ``g``."""
        rows = []
        for j in range(N):
            rows.append(tuple(g[i - j] if 0 <= i - j < len(g) else 0 for i in range(N)))
        return cls.matrix(rows)

    def columns(self, N: int) -> tuple[int, ...]:
        """Packed columns of T: bit ``j`` of entry ``i`` is ``T[j][i]``."""
        if self.kind == "identity":
            return tuple(1 << i for i in range(N))
        if self.kind == "pac":
            cols = []
            for i in range(N):
                c = 0
                for j, gj in enumerate(self.g):
                    if gj and i - j >= 0:
                        c |= 1 << (i - j)
                cols.append(c)
            return tuple(cols)
        if len(self.rows) != N:
            raise ValueError(f"pre-transform matrix is {len(self.rows)}x{len(self.rows)}, need N={N}")
        return tuple(sum(1 << j for j in range(i + 1) if self.rows[j][i]) for i in range(N))

    def describe(self) -> dict:
        if self.kind == "pac":
            return {"kind": "pac", "g": "".join(map(str, self.g))}
        if self.kind == "matrix":
            return {"kind": "matrix", "size": len(self.rows)}
        return {"kind": "identity"}


def capability_sets(n: int, pattern: Iterable[int], mode: Mode | str) -> frozenset[int]:
    """Input indices made incapable (punctured) or overcapable (shortened).

    Binary erasure propagation over the even/odd coordinate split: a leaf is
    flagged when it belongs to the pattern; ``u_{2j}`` combines its two child
    flags with OR when puncturing and AND when shortening, ``u_{2j+1}`` with
    the opposite operator.
    """
    mode = Mode(mode)
    N = 1 << n
    pattern = frozenset(pattern)
    for p in pattern:
        if not 0 <= p < N:
            raise IndexError(f"pattern index {p} out of range for N={N}")
    if mode is Mode.PLAIN or not pattern:
        return frozenset()
    punct = mode is Mode.PUNCTURED

    def propagate(flags: list[bool]) -> list[bool]:
        if len(flags) == 1:
            return flags
        a = propagate(flags[0::2])
        b = propagate(flags[1::2])
        out = []
        for fa, fb in zip(a, b):
            if punct:
                out += [fa or fb, fa and fb]
            else:
                out += [fa and fb, fa or fb]
        return out

    flags = propagate([c in pattern for c in range(N)])
    return frozenset(i for i, f in enumerate(flags) if f)


def bit_reversal_pattern(n: int, count: int, mode: Mode | str) -> frozenset[int]:
    """Puncture the first ``count`` / shorten the last ``count`` bit-reversed indices."""
    mode = Mode(mode)
    N = 1 << n
    if not 0 < count < N:
        raise ValueError(f"pattern size must be in (0, {N}), got {count}")
    if mode is Mode.PUNCTURED:
        idx = range(count)
    elif mode is Mode.SHORTENED:
        idx = range(N - count, N)
    else:
        raise ValueError("bit-reversal patterns need punctured or shortened mode")
    return frozenset(bit_reversal(j, n) for j in idx)


def upward_closure(n: int, indices: Iterable[int]) -> frozenset[int]:
    """All indices whose binary support contains the support of some given index."""
    N = 1 << n
    out = set()
    for c in indices:
        free = (N - 1) & ~c
        sub = free
        while True:
            out.add(c | sub)
            if sub == 0:
                break
            sub = (sub - 1) & free
    return frozenset(out)


def random_shortening_pattern(n: int, count: int, rng: random.Random) -> frozenset[int]:
    """Random upward-closed pattern, i.e. one for which freezing it forces ``x_S = 0``.

    Elements are drawn one at a time among the indices all of whose proper
    supersets are already chosen.
    """
    N = 1 << n
    if not 0 < count < N:
        raise ValueError(f"pattern size must be in (0, {N}), got {count}")
    chosen: set[int] = set()
    missing = {c: (N - 1 & ~c).bit_count() for c in range(N)}
    ready = [N - 1]
    while len(chosen) < count:
        c = ready.pop(rng.randrange(len(ready)))
        chosen.add(c)
        for b in range(n):
            if c >> b & 1:
                d = c ^ (1 << b)
                missing[d] -= 1
                if missing[d] == 0:
                    ready.append(d)
                    ready.sort()
    return frozenset(chosen)


def random_puncturing_pattern(n: int, count: int, rng: random.Random) -> frozenset[int]:
    N = 1 << n
    if not 0 < count < N:
        raise ValueError(f"pattern size must be in (0, {N}), got {count}")
    return frozenset(rng.sample(range(N), count))


@dataclass(frozen=True)
class CodeSpec:
    """A (pre-transformed, possibly punctured or shortened) polar code.

    ``frozen`` is the rate-profile as given; the indices forced by the
    pattern are added on top of it in ``effective_frozen``.
    """

    n: int
    frozen: frozenset[int]
    mode: Mode = Mode.PLAIN
    pattern: frozenset[int] = frozenset()
    transform: PreTransform = field(default_factory=PreTransform)

    def __post_init__(self):
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        object.__setattr__(self, "pattern", frozenset(self.pattern))
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        N = 1 << self.n
        for i in self.frozen:
            if not 0 <= i < N:
                raise ValueError(f"frozen index {i} out of range for N={N}")
        for p in self.pattern:
            if not 0 <= p < N:
                raise ValueError(f"pattern index {p} out of range for N={N}")
        if self.mode is Mode.PLAIN and self.pattern:
            raise ValueError("plain codes take no puncturing/shortening pattern")
        if self.mode is not Mode.PLAIN and not self.pattern:
            raise ValueError(f"{self.mode.value} mode needs a non-empty pattern")
        if len(self.pattern) >= N:
            raise ValueError("pattern must leave at least one coordinate")
        if self.transform.kind == "matrix" and len(self.transform.rows) != N:
            raise ValueError(f"pre-transform matrix size {len(self.transform.rows)} != N={N}")

    @property
    def N(self) -> int:
        return 1 << self.n

    @cached_property
    def derived_frozen(self) -> frozenset[int]:
        return capability_sets(self.n, self.pattern, self.mode)

    @cached_property
    def effective_frozen(self) -> frozenset[int]:
        return self.frozen | self.derived_frozen

    @cached_property
    def info_set(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.N) if i not in self.effective_frozen)

    @property
    def K(self) -> int:
        return len(self.info_set)

    @property
    def last_frozen(self) -> int:
        """``s = max(effective_frozen)``, or -1 when nothing is frozen."""
        return max(self.effective_frozen, default=-1)

    @cached_property
    def enumeration_end(self) -> int:
        """Last prefix index that has to be enumerated explicitly.

        For an upward-closed shortening pattern, ``x_S = 0`` holds exactly
        when ``u_S = 0``, so the shortened coset constraint already pins the
        shortened tail bits and enumeration can stop at the last frozen index
        outside the pattern.  Otherwise this is ``last_frozen``.
        """
        if (self.mode is Mode.SHORTENED
                and upward_closure(self.n, self.pattern) == self.pattern
                and self.pattern <= self.derived_frozen):
            return max(self.effective_frozen - self.pattern, default=-1)
        return self.last_frozen

    @property
    def length(self) -> int:
        """Transmitted length (N, N - P or N - S)."""
        return self.N - len(self.pattern)

    @cached_property
    def forced_zero(self) -> frozenset[int]:
        """u-positions pinned to zero regardless of the pre-transform."""
        return self.derived_frozen if self.mode is Mode.SHORTENED else frozenset()

    @cached_property
    def statuses(self) -> tuple[Status, ...]:
        st = Status.NORMAL
        if self.mode is Mode.PUNCTURED:
            st = Status.PUNCTURED
        elif self.mode is Mode.SHORTENED:
            st = Status.SHORTENED
        return tuple(st if c in self.pattern else Status.NORMAL for c in range(self.N))

    @cached_property
    def transform_columns(self) -> tuple[int, ...]:
        return self.transform.columns(self.N)

    @cached_property
    def frozen_mask(self) -> int:
        return sum(1 << i for i in self.effective_frozen)

    def u_bit_word(self, v_word: int, i: int) -> int:
        """``u_i`` from a packed ``v`` prefix (bits above ``i`` are ignored)."""
        if i in self.forced_zero:
            return 0
        return (v_word & self.transform_columns[i]).bit_count() & 1

    def is_valid_shortening(self) -> bool:
        """True when every codeword is zero on the shortened coordinates."""
        if self.mode is not Mode.SHORTENED:
            return True
        zero_u = self.forced_zero
        return upward_closure(self.n, self.pattern) <= zero_u

    def describe(self) -> dict:
        return {
            "n": self.n,
            "N": self.N,
            "K": self.K,
            "length": self.length,
            "mode": self.mode.value,
            "frozen": sorted(self.frozen),
            "pattern": sorted(self.pattern),
            "derived_frozen": sorted(self.derived_frozen),
            "s": self.enumeration_end,
            "transform": self.transform.describe(),
        }


def u_bit(spec: CodeSpec, v_prefix: Sequence[int], i: int) -> int:
    if len(v_prefix) != i + 1:
        raise ValueError(f"v prefix has length {len(v_prefix)}, expected {i + 1}")
    for j, b in enumerate(v_prefix):
        if b and j in spec.effective_frozen:
            raise ValueError(f"v_{j} is frozen but set to 1")
    return spec.u_bit_word(pack_bits(v_prefix), i)


def u_from_v(spec: CodeSpec, v_word: int, length: int | None = None) -> int:
    length = spec.N if length is None else length
    u = 0
    for i in range(length):
        if spec.u_bit_word(v_word, i):
            u |= 1 << i
    return u


def restrict_word(spec: CodeSpec, x_word: int) -> Bits:
    return tuple((x_word >> c) & 1 for c in range(spec.N) if c not in spec.pattern)


def encode(spec: CodeSpec, v: Sequence[int]) -> Bits:
    """Reference encoder: ``x = (v T) G`` restricted to the transmitted coordinates."""
    if len(v) != spec.N:
        raise ValueError(f"v has length {len(v)}, expected N={spec.N}")
    v_word = pack_bits(v)
    if v_word & spec.frozen_mask:
        raise ValueError("v has ones on frozen positions")
    x = image_mask(u_from_v(spec, v_word))
    if spec.mode is Mode.SHORTENED:
        bad = [c for c in spec.pattern if (x >> c) & 1]
        if bad:
            raise ValueError(f"shortened coordinates {sorted(bad)} are nonzero; "
                             "pattern and pre-transform are incompatible")
    return restrict_word(spec, x)


def read_index_file(path: str | os.PathLike) -> list[int]:
    """Indices from a JSON array or a text file with one index per line."""
    text = Path(path).read_text()
    stripped = text.strip()
    if stripped.startswith("["):
        data = json.loads(stripped)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in data):
            raise ValueError(f"{path}: expected a JSON array of integers")
        return list(data)
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(int(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not an integer index: {line!r}") from None
    return out


def reliability_sequence(path: str | os.PathLike | None = None) -> list[int]:
    """The reliability order, least reliable first.

    Defaults to the bundled 5G NR sequence; ``$POLARWEF_RELIABILITY_FILE``
    overrides the default location.
    """
    if path is None:
        path = os.environ.get(RELIABILITY_ENV)
    if path is None:
        text = resources.files("polarwef.data").joinpath("nr_polar_sequence.txt").read_text()
        seq = [int(x) for x in (ln.split("#", 1)[0].strip() for ln in text.splitlines()) if x]
    else:
        seq = read_index_file(path)
    if sorted(seq) != list(range(len(seq))):
        raise ValueError("reliability sequence must be a permutation of 0..len-1")
    return seq


def reliability_frozen_set(n: int, K: int, excluded: Iterable[int] = (),
                           sequence: Sequence[int] | None = None) -> frozenset[int]:
    """Freeze everything except the K most reliable indices outside ``excluded``."""
    N = 1 << n
    seq = reliability_sequence() if sequence is None else sequence
    order = [i for i in seq if i < N]
    if len(order) != N:
        raise ValueError(f"reliability sequence does not cover N={N}")
    excluded = frozenset(excluded)
    candidates = [i for i in order if i not in excluded]
    if not 0 <= K <= len(candidates):
        raise ValueError(f"cannot place K={K} information bits in N={N} "
                         f"with {len(excluded)} excluded positions")
    info = set(candidates[len(candidates) - K:])
    return frozenset(i for i in range(N) if i not in info)


def nr_code(n: int, K: int, mode: Mode | str = Mode.PLAIN, count: int = 0,
            transform: PreTransform | None = None,
            sequence: Sequence[int] | None = None) -> CodeSpec:
    """Reliability-ordered code with a bit-reversal pattern of ``count`` positions."""
    mode = Mode(mode)
    pattern = frozenset() if mode is Mode.PLAIN else bit_reversal_pattern(n, count, mode)
    derived = capability_sets(n, pattern, mode)
    frozen = reliability_frozen_set(n, K, derived, sequence)
    return CodeSpec(n, frozen, mode, pattern, transform or PreTransform())
