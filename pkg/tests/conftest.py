import random

import pytest

from polarwef import CodeSpec, PreTransform, bit_reversal_pattern, capability_sets
from polarwef.code import random_puncturing_pattern, random_shortening_pattern


def random_instance(rng: random.Random, sizes=(3, 4, 5), max_k: int = 14,
                    modes=("plain", "punctured", "shortened")) -> CodeSpec:
    """Random code with a frozen set containing the derived capability set."""
    n = rng.choice(sizes)
    N = 1 << n
    mode = rng.choice(modes)
    pattern = frozenset()
    if mode != "plain":
        count = rng.randrange(1, N // 2 + 1)
        if rng.random() < 0.5:
            pattern = bit_reversal_pattern(n, count, mode)
        elif mode == "punctured":
            pattern = random_puncturing_pattern(n, count, rng)
        else:
            pattern = random_shortening_pattern(n, count, rng)
    kind = rng.choice(["identity", "pac", "matrix"])
    if kind == "identity":
        transform = PreTransform()
    elif kind == "pac":
        transform = PreTransform.pac([1] + [rng.randint(0, 1) for _ in range(rng.randrange(0, 7))])
    else:
        transform = PreTransform.matrix(
            [[1 if j == i else (rng.randint(0, 1) if j > i else 0) for j in range(N)]
             for i in range(N)])
    derived = capability_sets(n, pattern, mode)
    free = [i for i in range(N) if i not in derived]
    K = rng.randrange(0, min(max_k, len(free)) + 1)
    info = set(rng.sample(free, K))
    return CodeSpec(n, frozenset(range(N)) - info, mode, pattern, transform)


def punct8_spec() -> CodeSpec:
    """N=8, even coordinates punctured, first three inputs frozen."""
    return CodeSpec(3, {0, 1, 2}, "punctured", {0, 2, 4, 6})


def punct8_code() -> CodeSpec:
    """N=8, information bits {5, 7}, even coordinates punctured."""
    return CodeSpec(3, {0, 1, 2, 3, 4, 6}, "punctured", {0, 2, 4, 6})


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
