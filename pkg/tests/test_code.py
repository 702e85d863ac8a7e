import random

import pytest

from polarwef import (
    CodeSpec, PreTransform, bit_reversal_pattern, capability_sets, encode, nr_code,
    reliability_frozen_set, reliability_sequence, u_bit,
)
from polarwef.code import (
    RELIABILITY_ENV, random_shortening_pattern, read_index_file, upward_closure,
)
from polarwef.oracle import codeword_table


def test_capability_sets_examples():
    assert capability_sets(3, {0, 2, 4, 6}, "punctured") == {0, 2, 4, 6}
    assert capability_sets(4, {7, 15}, "shortened") == {7, 15}
    for mode in ("punctured", "shortened"):
        assert capability_sets(5, (), mode) == frozenset()


def test_capability_set_size_matches_pattern():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(2, 6)
        N = 1 << n
        for mode in ("punctured", "shortened"):
            pat = set(rng.sample(range(N), rng.randrange(1, N)))
            assert len(capability_sets(n, pat, mode)) == len(pat)


def test_punctured_capability_set_is_incapable():
    # every frozen U_P row restricted to the kept coordinates lies in the span of later rows
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(2, 4)
        N = 1 << n
        pat = frozenset(rng.sample(range(N), rng.randrange(1, N)))
        spec = CodeSpec(n, capability_sets(n, pat, "punctured"), "punctured", pat)
        words, _ = codeword_table(spec)
        keep = sum(1 << c for c in range(N) if c not in pat)
        assert len({int(w) & keep for w in words}) == 1 << spec.K


def test_bit_reversal_pattern_examples():
    assert bit_reversal_pattern(3, 4, "punctured") == {0, 2, 4, 6}
    assert bit_reversal_pattern(4, 2, "shortened") == {7, 15}
    assert bit_reversal_pattern(2, 1, "punctured") == {0}
    with pytest.raises(ValueError):
        bit_reversal_pattern(3, 0, "punctured")


def test_bit_reversal_shortening_is_valid():
    for n in range(2, 8):
        for count in range(1, (1 << n) - 1):
            pat = bit_reversal_pattern(n, count, "shortened")
            assert upward_closure(n, pat) == pat


def test_u_bit():
    g = (1, 0, 1, 1, 0, 1, 1)
    spec = CodeSpec(3, (), transform=PreTransform.pac(g))
    for i in range(7):
        v = [1] + [0] * i
        assert u_bit(spec, v, i) == g[i]
    ident = CodeSpec(3, ())
    rng = random.Random(1)
    for _ in range(20):
        v = [rng.randint(0, 1) for _ in range(8)]
        assert all(u_bit(ident, v[:i + 1], i) == v[i] for i in range(8))
    short = CodeSpec(4, (), "shortened", {7, 15}, PreTransform.pac(g))
    assert u_bit(short, [0, 0, 0, 0, 0, 1, 1, 0], 7) == 0


def test_u_bit_rejects_frozen_one():
    spec = CodeSpec(2, {0})
    with pytest.raises(ValueError):
        u_bit(spec, [1], 0)


def test_pac_matches_toeplitz_columns():
    g = (1, 0, 1, 1, 0, 1, 1)
    assert PreTransform.pac(g).columns(16) == PreTransform.toeplitz(g, 16).columns(16)


def test_pretransform_validation():
    with pytest.raises(ValueError):
        PreTransform.pac("011")
    with pytest.raises(ValueError):
        PreTransform.matrix([[1, 0], [1, 1]])
    with pytest.raises(ValueError):
        CodeSpec(2, (), transform=PreTransform.matrix([[1]]))


def test_encode_examples():
    spec = CodeSpec(2, ())
    assert encode(spec, (0, 0, 0, 1)) == (1, 1, 1, 1)
    assert encode(spec, (0,) * 4) == (0,) * 4
    punct = CodeSpec(3, {0, 2, 4, 6}, "punctured", {0, 2, 4, 6})
    v = [0] * 8
    v[5] = 1
    assert encode(punct, v) == (1, 0, 1, 0)


def test_encode_rejects_frozen_ones():
    with pytest.raises(ValueError):
        encode(CodeSpec(2, {3}), (0, 0, 0, 1))


def test_mode_pattern_consistency():
    with pytest.raises(ValueError):
        CodeSpec(3, (), "plain", {1})
    with pytest.raises(ValueError):
        CodeSpec(3, (), "punctured")
    with pytest.raises(ValueError):
        CodeSpec(3, {9})


def test_invalid_shortening_detected():
    spec = CodeSpec(1, (), "shortened", {0})
    assert spec.derived_frozen == {1}
    assert not spec.is_valid_shortening()
    with pytest.raises(ValueError):
        encode(spec, (1, 0))


def test_random_shortening_pattern_upward_closed():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 8)
        count = rng.randrange(1, 1 << n)
        pat = random_shortening_pattern(n, count, rng)
        assert len(pat) == count
        assert upward_closure(n, pat) == pat
        assert capability_sets(n, pat, "shortened") == pat


def test_enumeration_end_for_shortening():
    spec = CodeSpec(4, {0, 1, 2, 3, 4, 8}, "shortened", {7, 15})
    assert spec.last_frozen == 15
    assert spec.enumeration_end == 8
    punct = CodeSpec(3, {0, 2, 4, 6}, "punctured", {0, 2, 4, 6})
    assert punct.enumeration_end == punct.last_frozen == 6


def test_reliability_sequence_bundled():
    seq = reliability_sequence()
    assert sorted(seq) == list(range(1024))
    assert seq[0] == 0 and seq[-1] == 1023


def test_reliability_env_override(tmp_path, monkeypatch):
    f = tmp_path / "seq.txt"
    f.write_text("# toy order\n0\n1\n2\n4\n3\n5\n6\n7\n")
    monkeypatch.setenv(RELIABILITY_ENV, str(f))
    assert reliability_sequence() == [0, 1, 2, 4, 3, 5, 6, 7]
    assert reliability_frozen_set(3, 4) == {0, 1, 2, 4}


def test_reliability_frozen_set_excludes_derived():
    spec = nr_code(7, 20, "punctured", 48)
    assert spec.derived_frozen <= spec.effective_frozen
    assert spec.K == 20 and spec.length == 80
    assert spec.frozen >= spec.derived_frozen


def test_read_index_file(tmp_path):
    a = tmp_path / "a.json"
    a.write_text("[3, 1, 2]")
    assert read_index_file(a) == [3, 1, 2]
    b = tmp_path / "b.txt"
    b.write_text("# comment\n5\n\n6  # six\n")
    assert read_index_file(b) == [5, 6]
    c = tmp_path / "c.txt"
    c.write_text("5\nx\n")
    with pytest.raises(ValueError):
        read_index_file(c)
