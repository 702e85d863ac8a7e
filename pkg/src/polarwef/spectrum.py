"""Partial weight spectrum by prefix enumeration with minimum-weight pruning."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import NamedTuple

from .code import CodeSpec
from .coset import CosetEngine
from .gf2 import unpack_bits
from .weights import WeightPoly

log = logging.getLogger(__name__)


class ListOverflowError(RuntimeError):
    """The prefix list outgrew the configured cap."""


class PrefixEntry(NamedTuple):
    """A surviving prefix; ``v`` and ``u`` are packed (bit j is index j)."""

    v: int
    u: int

    def bits(self, length: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return unpack_bits(self.v, length), unpack_bits(self.u, length)


@dataclass
class SpectrumStats:
    n_c: int = 0
    C: list[int] = field(default_factory=list)
    pruned: int = 0
    survivors: int = 0
    seconds: float = 0.0


@dataclass
class SpectrumResult:
    terms: list[tuple[int, int]]
    w_end: int
    stats: SpectrumStats
    survivors: list[PrefixEntry] | None = None

    def as_poly(self) -> WeightPoly:
        return WeightPoly(self.terms, self.w_end)

    def count(self, w: int) -> int:
        return dict(self.terms).get(w, 0)


def enumerate_spectrum(spec: CodeSpec, w_end: int, *, prune: bool = True,
                       max_list: int | None = None,
                       keep_survivors: bool = False) -> SpectrumResult:
    """All ``(w, A_w)`` with ``w <= w_end`` for the code described by ``spec``.

    Stages run over ``i = 0..s`` with ``s`` the last frozen index (see
    ``CodeSpec.enumeration_end`` for shortened codes).  Every
    extended prefix has its coset minimum weight evaluated and is dropped when
    that exceeds ``w_end``; the enumerators of the survivors at stage ``s``
    are summed.  ``prune=False`` keeps every prefix (reference run).
    """
    if w_end < 1:
        raise ValueError(f"w_end must be >= 1, got {w_end}")
    start = time.perf_counter()
    engine = CosetEngine(spec, w_end)
    stats = SpectrumStats()
    s = spec.enumeration_end
    frozen = spec.effective_frozen
    entries = [PrefixEntry(0, 0)]

    for i in range(s + 1):
        is_frozen = i in frozen
        bit = 1 << i
        nxt: list[PrefixEntry] = []
        for e in entries:
            if is_frozen:
                children = [PrefixEntry(e.v, e.u | (spec.u_bit_word(e.v, i) << i))]
            else:
                v1 = e.v | bit
                children = [PrefixEntry(e.v, e.u | (spec.u_bit_word(e.v, i) << i)),
                            PrefixEntry(v1, e.u | (spec.u_bit_word(v1, i) << i))]
            stats.n_c += len(children)
            if not prune:
                nxt.extend(children)
                continue
            msg = engine.message(e.u, i, "lowest")
            for c in children:
                if msg[c.u >> i & 1] is None:
                    stats.pruned += 1
                else:
                    nxt.append(c)
        stats.C.append(len(entries) * (1 if is_frozen else 2))
        entries = nxt
        if max_list is not None and len(entries) > max_list:
            raise ListOverflowError(
                f"prefix list reached {len(entries)} entries at stage {i} (cap {max_list})")
        if i < s:
            engine.release(i)
        log.debug("stage %d: %d prefixes", i, len(entries))

    total = WeightPoly((), w_end)
    if s < 0:
        # nothing frozen: the code is the single coset with an empty prefix
        total = engine.rwef_word(0, 0)
    else:
        for e in entries:
            total = total + engine.rwef_word(e.u, s + 1)
    stats.survivors = len(entries)
    stats.seconds = time.perf_counter() - start
    return SpectrumResult(
        terms=list(total.items()),
        w_end=w_end,
        stats=stats,
        survivors=entries if keep_survivors else None,
    )


def find_min_distance(spec: CodeSpec, start: int = 4, **kwargs) -> tuple[int, int]:
    """Smallest nonzero weight of the code and its multiplicity."""
    if spec.K == 0:
        raise ValueError("code has no information bits, so no nonzero codeword")
    w_end = max(1, min(start, spec.length))
    while True:
        result = enumerate_spectrum(spec, w_end, **kwargs)
        for w, a in result.terms:
            if w > 0:
                return w, a
        if w_end >= spec.length:
            raise ValueError("no nonzero codeword found; the restricted code is trivial")
        w_end = min(2 * w_end, spec.length)
