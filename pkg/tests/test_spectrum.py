import random

import pytest

from conftest import punct8_code, random_instance
from polarwef import (
    CodeSpec, ListOverflowError, PreTransform, enumerate_spectrum, find_min_distance, nr_code,
)
from polarwef.oracle import brute_spectrum

RM84 = CodeSpec(3, {0, 1, 2, 4})


def test_examples():
    assert enumerate_spectrum(punct8_code(), 4).terms == [(0, 1), (2, 2), (4, 1)]
    assert enumerate_spectrum(CodeSpec(4, range(16)), 16).terms == [(0, 1)]
    assert enumerate_spectrum(RM84, 8).terms == [(0, 1), (4, 14), (8, 1)]


def test_nothing_frozen():
    res = enumerate_spectrum(CodeSpec(2, ()), 4)
    assert res.terms == [(0, 1), (1, 4), (2, 6), (3, 4), (4, 1)]


def test_find_min_distance():
    assert find_min_distance(RM84) == (4, 14)
    assert find_min_distance(CodeSpec(2, {0, 1})) == (2, 2)
    with pytest.raises(ValueError):
        find_min_distance(CodeSpec(3, range(8)))


def test_w_end_validated():
    with pytest.raises(ValueError):
        enumerate_spectrum(RM84, 0)


def test_list_cap():
    with pytest.raises(ListOverflowError):
        enumerate_spectrum(nr_code(5, 16), 32, prune=False, max_list=10)


def test_stats_shape():
    spec = nr_code(5, 12, "punctured", 6)
    res = enumerate_spectrum(spec, 8, keep_survivors=True)
    assert len(res.stats.C) == spec.enumeration_end + 1
    assert res.stats.n_c == sum(res.stats.C)
    assert res.stats.survivors == len(res.survivors)
    # survivors come out in lexicographic order of v (bit 0 most significant)
    keys = [e.bits(spec.enumeration_end + 1)[0] for e in res.survivors]
    assert keys == sorted(keys)


def test_deterministic_counts():
    spec = nr_code(6, 24, "shortened", 12, PreTransform.pac("1011011"))
    a = enumerate_spectrum(spec, 12)
    b = enumerate_spectrum(spec, 12)
    assert a.terms == b.terms and a.stats.n_c == b.stats.n_c and a.stats.C == b.stats.C


def test_truncation_consistent():
    spec = nr_code(6, 20, "punctured", 10)
    full = enumerate_spectrum(spec, spec.length)
    for w_end in (2, 5, 9, 14):
        part = enumerate_spectrum(spec, w_end)
        assert part.terms == [(w, a) for w, a in full.terms if w <= w_end]


def test_random_against_oracle_and_unpruned():
    rng = random.Random(99)
    for _ in range(60):
        spec = random_instance(rng)
        w_end = rng.randrange(1, spec.length + 1)
        pruned = enumerate_spectrum(spec, w_end)
        assert pruned.terms == enumerate_spectrum(spec, w_end, prune=False).terms
        assert pruned.terms == brute_spectrum(spec, w_end).terms


def test_shortened_full_mass():
    rng = random.Random(5)
    for _ in range(40):
        spec = random_instance(rng, modes=("shortened",))
        res = enumerate_spectrum(spec, spec.length)
        assert sum(a for _, a in res.terms) == 2 ** spec.K


def test_punctured_80_20_small_weights():
    spec = nr_code(7, 20, "punctured", 48)
    assert enumerate_spectrum(spec, 16).terms == [(0, 1), (8, 30), (16, 173)]
