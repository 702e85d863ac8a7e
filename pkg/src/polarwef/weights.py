"""Truncated weight-enumerator polynomials with exact integer counts."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, NamedTuple


class Monomial(NamedTuple):
    degree: int
    count: int


class WeightPoly:
    """Sparse polynomial ``sum A_w X^w`` keeping only degrees ``<= w_cap``.

    Counts are Python ints, so they never overflow.  Zero counts are not
    stored and the zero polynomial is the empty mapping.  ``w_cap=None``
    means no truncation.
    """

    __slots__ = ("_terms", "w_cap")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = (),
                 w_cap: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, int] = {}
        for w, c in items:
            if w < 0:
                raise ValueError(f"negative degree {w}")
            if c < 0:
                raise ValueError(f"negative count {c} at degree {w}")
            if w_cap is not None and w > w_cap:
                raise ValueError(f"degree {w} exceeds cap {w_cap}")
            if c:
                clean[w] = clean.get(w, 0) + c
        self._terms = dict(sorted(clean.items()))
        self.w_cap = w_cap

    @classmethod
    def truncated(cls, terms: Mapping[int, int], w_cap: int | None) -> WeightPoly:
        if w_cap is None:
            return cls(terms)
        return cls({w: c for w, c in terms.items() if w <= w_cap}, w_cap)

    @classmethod
    def one(cls, w_cap: int | None = None) -> WeightPoly:
        return cls({0: 1}, w_cap)

    @classmethod
    def monomial(cls, degree: int, count: int = 1, w_cap: int | None = None) -> WeightPoly:
        if w_cap is not None and degree > w_cap:
            return cls((), w_cap)
        return cls({degree: count}, w_cap)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def __getitem__(self, w: int) -> int:
        return self._terms.get(w, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightPoly):
            return NotImplemented
        return self._terms == other._terms and self.w_cap == other.w_cap

    def __hash__(self) -> int:
        return hash((tuple(self._terms.items()), self.w_cap))

    def __repr__(self) -> str:
        return f"WeightPoly({self}, w_cap={self.w_cap})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self._terms.items():
            if w == 0:
                parts.append(str(c))
            else:
                mono = "X" if w == 1 else f"X^{w}"
                parts.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(parts)

    def add(self, other: WeightPoly) -> WeightPoly:
        if self.w_cap != other.w_cap:
            raise ValueError(f"cap mismatch: {self.w_cap} vs {other.w_cap}")
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return WeightPoly(out, self.w_cap)

    __add__ = add

    def mul_trunc(self, other: WeightPoly, w_end: int | None) -> WeightPoly:
        """Product with every term above ``w_end`` discarded."""
        out: dict[int, int] = {}
        for wa, ca in self._terms.items():
            if w_end is not None and wa > w_end:
                break
            for wb, cb in other._terms.items():
                w = wa + wb
                if w_end is not None and w > w_end:
                    break
                out[w] = out.get(w, 0) + ca * cb
        return WeightPoly(out, w_end)

    def lowest(self) -> Monomial | None:
        for w, c in self._terms.items():
            return Monomial(w, c)
        return None

    def lowest_only(self) -> WeightPoly:
        low = self.lowest()
        return WeightPoly(() if low is None else [low], self.w_cap)

    def div_pow2(self, k: int) -> WeightPoly:
        if k < 0:
            raise ValueError(f"negative exponent {k}")
        if k == 0:
            return self
        mask = (1 << k) - 1
        out = {}
        for w, c in self._terms.items():
            if c & mask:
                raise ArithmeticError(
                    f"count {c} at degree {w} is not divisible by 2^{k}")
            out[w] = c >> k
        return WeightPoly(out, self.w_cap)

    def with_cap(self, w_cap: int | None) -> WeightPoly:
        return WeightPoly.truncated(self._terms, w_cap)

    def total(self) -> int:
        return sum(self._terms.values())

    def to_pairs(self) -> list[list]:
        """``[[w, "A_w"], ...]`` with counts as decimal strings."""
        return [[w, str(c)] for w, c in self._terms.items()]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable], w_cap: int | None = None) -> WeightPoly:
        return cls(((int(w), int(c)) for w, c in pairs), w_cap)


def wp_add(a: WeightPoly, b: WeightPoly) -> WeightPoly:
    return a.add(b)


def wp_mul_trunc(a: WeightPoly, b: WeightPoly, w_end: int | None) -> WeightPoly:
    return a.mul_trunc(b, w_end)


def wp_lowest(a: WeightPoly) -> Monomial | None:
    return a.lowest()


def wp_div_pow2(a: WeightPoly, k: int) -> WeightPoly:
    return a.div_pow2(k)
