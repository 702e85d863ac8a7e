"""Weight enumerators of (punctured / shortened) polar cosets.

The coset ``C(u_0..u_i)`` fixes a prefix of ``u`` and leaves the tail free.
Writing ``a_j = u_{2j} xor u_{2j+1}`` and ``b_j = u_{2j+1}``, the even
coordinates of ``x = u G_N`` are ``a G_{N/2}`` and the odd ones ``b G_{N/2}``,
so the enumerator of a length-L block splits into two length-L/2 blocks
joined by a check node (next bit is ``u_{2m}``) or an equality node (next bit
is ``u_{2m+1}``, with ``u_{2m}`` already known).  This is the Tanner-tree
message passing of the coset, evaluated top-down with memoization.

A subproblem at depth ``d`` with residue ``r`` covers coordinates
``c = r (mod 2^d)``; the j-th entry of its prefix is bit ``r`` of the
polar transform of the u-block ``u[j*2^d:(j+1)*2^d]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .code import CodeSpec, Mode, Status
from .gf2 import pack_bits, rank_profile
from .weights import WeightPoly

INFINITE = math.inf


class Message(NamedTuple):
    """Enumerators conditioned on the attached bit being 0 and 1."""

    theta0: WeightPoly
    theta1: WeightPoly

    def swapped(self) -> Message:
        return Message(self.theta1, self.theta0)


def leaf_init(p_j: int, status: Status | str, w_end: int | None = None) -> Message:
    """Message sent by a codeword coordinate whose prefix offset is ``p_j``."""
    status = Status[status.upper()] if isinstance(status, str) else Status(status)
    one = WeightPoly.one(w_end)
    if status is Status.PUNCTURED:
        msg = Message(one, one)
    elif status is Status.SHORTENED:
        msg = Message(one, WeightPoly((), w_end))
    else:
        msg = Message(one, WeightPoly.monomial(1, 1, w_end))
    return msg.swapped() if p_j else msg


def _finish(p: WeightPoly, lowest: bool) -> WeightPoly:
    return p.lowest_only() if lowest else p


def check_combine(a: Message, b: Message, w_end: int | None, lowest: bool = False) -> Message:
    """Parity node: the outgoing bit is the XOR of the two incoming bits."""
    t0 = a.theta0.mul_trunc(b.theta0, w_end) + a.theta1.mul_trunc(b.theta1, w_end)
    t1 = a.theta0.mul_trunc(b.theta1, w_end) + a.theta1.mul_trunc(b.theta0, w_end)
    return Message(_finish(t0, lowest), _finish(t1, lowest))


def var_combine(a: Message, b: Message, w_end: int | None, lowest: bool = False) -> Message:
    """Equality node: both incoming bits equal the outgoing one."""
    t0 = a.theta0.mul_trunc(b.theta0, w_end)
    t1 = a.theta1.mul_trunc(b.theta1, w_end)
    return Message(_finish(t0, lowest), _finish(t1, lowest))


# Lowest-term messages on the pruning path are pairs of (degree, count) or
# None, where None means "empty, or every word above the cap".

def _lp_mul(x, y, cap):
    if x is None or y is None:
        return None
    w = x[0] + y[0]
    if w > cap:
        return None
    return (w, x[1] * y[1])


def _lp_add(x, y):
    if x is None:
        return y
    if y is None:
        return x
    if x[0] < y[0]:
        return x
    if y[0] < x[0]:
        return y
    return (x[0], x[1] + y[1])


class _RwefAlgebra:
    def __init__(self, cap: int):
        self.cap = cap
        self.leaves = {st: leaf_init(0, st, cap) for st in Status}

    def check(self, a, b):
        return check_combine(a, b, self.cap)

    def var(self, a, b, swap):
        if swap:
            a = Message(a.theta1, a.theta0)
        return var_combine(a, b, self.cap)


class _LowestAlgebra:
    def __init__(self, cap: int):
        self.cap = cap
        self.leaves = {
            Status.NORMAL: ((0, 1), (1, 1) if cap >= 1 else None),
            Status.PUNCTURED: ((0, 1), (0, 1)),
            Status.SHORTENED: ((0, 1), None),
        }

    def check(self, a, b):
        cap = self.cap
        return (_lp_add(_lp_mul(a[0], b[0], cap), _lp_mul(a[1], b[1], cap)),
                _lp_add(_lp_mul(a[0], b[1], cap), _lp_mul(a[1], b[0], cap)))

    def var(self, a, b, swap):
        cap = self.cap
        if swap:
            return (_lp_mul(a[1], b[0], cap), _lp_mul(a[0], b[1], cap))
        return (_lp_mul(a[0], b[0], cap), _lp_mul(a[1], b[1], cap))


class CosetEngine:
    """Evaluates coset enumerators of one code, caching shared subtrees.

    Cache entries are keyed by depth, sub-prefix length, residue and the
    sub-prefix itself (stored unpacked at stride ``2^d`` inside the
    depth-``d`` butterfly image of ``u``).  ``release(i)`` drops entries that
    no prefix of length ``> i`` can reach again.
    """

    def __init__(self, spec: CodeSpec, w_end: int | None = None):
        self.spec = spec
        self.n = spec.n
        self.N = spec.N
        self.w_end = spec.length if w_end is None else w_end
        if self.w_end < 0:
            raise ValueError(f"w_end must be non-negative, got {self.w_end}")
        self.statuses = spec.statuses
        self.profile = rank_profile(spec.n, spec.pattern) if spec.mode is Mode.PUNCTURED else None
        self._algebras = {"rwef": _RwefAlgebra(self.w_end), "lowest": _LowestAlgebra(self.w_end)}
        self._caches: dict[str, dict[tuple[int, int], dict]] = {"rwef": {}, "lowest": {}}
        self._released = -1
        N, n = self.N, self.n
        # butterfly masks: positions whose bit t is 0
        self._bfly = []
        for t in range(n):
            m = 0
            for p in range(N):
                if not p >> t & 1:
                    m |= 1 << p
            self._bfly.append(m)
        # residue masks: positions p = r (mod 2^d)
        self._residue = []
        for d in range(n + 1):
            step = 1 << d
            base = sum(1 << p for p in range(0, N, step))
            self._residue.append([base << r for r in range(step)])
        self.evaluations = 0

    # -- core recursion -------------------------------------------------

    def _images(self, u: int) -> list[int]:
        imgs = [u]
        for t in range(self.n):
            v = imgs[-1]
            imgs.append(v ^ ((v >> (1 << t)) & self._bfly[t]))
        return imgs

    def message(self, u: int, k: int, kind: str = "rwef"):
        """Message on ``u_k`` for the coset fixing ``u_0..u_{k-1}`` (packed in ``u``)."""
        if not 0 <= k < self.N:
            raise ValueError(f"bit index {k} out of range for N={self.N}")
        imgs = self._images(u & ((1 << k) - 1))
        return self._eval(0, 0, k, imgs, self._algebras[kind], self._caches[kind])

    def _eval(self, d, r, k, imgs, alg, cache):
        # prefix mask of the k complete blocks of size 2^d
        key = imgs[d] & self._residue[d][r] & ((1 << (k << d)) - 1)
        bucket = cache.get((d, k))
        if bucket is None:
            bucket = cache[(d, k)] = {}
        else:
            hit = bucket.get((r, key))
            if hit is not None:
                return hit
        if d == self.n:
            msg = alg.leaves[self.statuses[r]]
        else:
            m = k >> 1
            even = self._eval(d + 1, r, m, imgs, alg, cache)
            odd = self._eval(d + 1, r + (1 << d), m, imgs, alg, cache)
            if k & 1:
                swap = imgs[d] >> (((k - 1) << d) + r) & 1
                msg = alg.var(even, odd, swap)
            else:
                msg = alg.check(even, odd)
            self.evaluations += 1
        bucket[(r, key)] = msg
        return msg

    def release(self, i: int) -> None:
        """Forget subproblems only reachable from prefixes of length ``<= i``."""
        if i <= self._released:
            return
        self._released = i
        for cache in self._caches.values():
            dead = [dk for dk in cache if dk[1] < (i + 1) >> dk[0]]
            for dk in dead:
                del cache[dk]

    def clear(self) -> None:
        for cache in self._caches.values():
            cache.clear()
        self._released = -1

    # -- coset-level queries --------------------------------------------

    def _deficiency(self, i: int) -> int:
        return 0 if self.profile is None else self.profile.deficiency(i)

    def rwef_word(self, u: int, length: int) -> WeightPoly:
        """Truncated enumerator of the coset fixing ``length`` leading u-bits."""
        if not 0 <= length <= self.N:
            raise ValueError(f"prefix length {length} out of range for N={self.N}")
        if length == self.N:
            msg = self.message(u, self.N - 1)
        elif length == 0:
            msg = self.message(0, 0)
            return (msg.theta0 + msg.theta1).div_pow2(self._deficiency(-1))
        else:
            msg = self.message(u, length - 1)
        poly = msg[u >> (length - 1) & 1]
        return poly.div_pow2(self._deficiency(length - 1))

    def lowest_word(self, u: int, length: int) -> tuple[int, int] | None:
        """``(w*, A*)`` of the coset, or None if it is empty or above ``w_end``."""
        if not 0 <= length <= self.N:
            raise ValueError(f"prefix length {length} out of range for N={self.N}")
        if length == 0:
            msg = self.message(0, 0, "lowest")
            low = _lp_add(msg[0], msg[1])
        else:
            msg = self.message(u, length - 1, "lowest")
            low = msg[u >> (length - 1) & 1]
        if low is None:
            return None
        k = self._deficiency(length - 1)
        count = low[1]
        if count & ((1 << k) - 1):
            raise ArithmeticError(f"minimum-weight count {count} not divisible by 2^{k}")
        return (low[0], count >> k)


@dataclass(frozen=True)
class CosetQuery:
    spec: CodeSpec
    u_prefix: tuple[int, ...]
    w_end: int | None = None
    semantics: str = "rwef"

    def __post_init__(self):
        object.__setattr__(self, "u_prefix", tuple(int(b) for b in self.u_prefix))
        if len(self.u_prefix) > self.spec.N:
            raise ValueError("prefix longer than N")
        if self.semantics not in ("rwef", "mwef"):
            raise ValueError(f"unknown semantics {self.semantics!r}")


def coset_rwef(q: CosetQuery) -> WeightPoly:
    """Truncated weight enumerator of the restricted coset (one entry per distinct word)."""
    engine = CosetEngine(q.spec, q.w_end)
    poly = engine.rwef_word(pack_bits(q.u_prefix), len(q.u_prefix))
    if q.semantics == "mwef":
        return poly.lowest_only()
    return poly


def coset_mwef(spec: CodeSpec, u_prefix: Sequence[int], w_end: int | None = None) -> WeightPoly:
    """``A* X^{w*}`` as a one-term polynomial; empty if the coset is empty or above ``w_end``."""
    engine = CosetEngine(spec, w_end)
    low = engine.lowest_word(pack_bits(u_prefix), len(u_prefix))
    return WeightPoly(() if low is None else [low], engine.w_end)


def coset_min_weight(q: CosetQuery) -> float | int:
    """Minimum weight of the restricted coset, ``INFINITE`` when it is empty.

    With an explicit ``w_end`` the answer is also ``INFINITE`` whenever the
    minimum exceeds ``w_end``.
    """
    engine = CosetEngine(q.spec, q.w_end)
    low = engine.lowest_word(pack_bits(q.u_prefix), len(q.u_prefix))
    return INFINITE if low is None else low[0]
