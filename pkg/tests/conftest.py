import pytest

from orbiteq import (
    RunConfig,
    build_shift_space,
    compile_block_code,
    transducer,
)


@pytest.fixture(scope="session")
def full2():
    return build_shift_space([[1, 1], [1, 1]])


@pytest.fixture(scope="session")
def full3():
    return build_shift_space([[1, 1, 1], [1, 1, 1], [1, 1, 1]])


@pytest.fixture(scope="session")
def golden():
    return build_shift_space([[1, 1], [1, 0]])


@pytest.fixture(scope="session")
def cfg():
    return RunConfig()


@pytest.fixture(scope="session")
def swap2(full2):
    return compile_block_code(full2, full2, 1, {(1,): 2, (2,): 1})


@pytest.fixture(scope="session")
def xor2(full2):
    # output 1 when the window repeats a symbol, 2 when it alternates
    return compile_block_code(
        full2, full2, 2, {(1, 1): 1, (2, 2): 1, (1, 2): 2, (2, 1): 2}
    )


@pytest.fixture(scope="session")
def duplicator(full2):
    """x1 x2 x3 ... -> x1 x1 x2 x3 ...; injective but not surjective."""
    return transducer(
        full2,
        full2,
        ["init", "copy"],
        "init",
        {
            ("init", 1): ("copy", (1, 1)),
            ("init", 2): ("copy", (2, 2)),
            ("copy", 1): ("copy", (1,)),
            ("copy", 2): ("copy", (2,)),
        },
    )


@pytest.fixture(scope="session")
def recoder(full2):
    """Involutive homeomorphism replacing x1 by 1 if x1 == x2 else 2.

    Only the first output symbol differs from the input, so the lag-1
    intertwining holds in both directions while the plain one fails:
    an eventual conjugacy that is not a conjugacy.
    """
    return transducer(
        full2,
        full2,
        ["q0", "s1", "s2", "copy"],
        "q0",
        {
            ("q0", 1): ("s1", ()),
            ("q0", 2): ("s2", ()),
            ("s1", 1): ("copy", (1, 1)),
            ("s1", 2): ("copy", (2, 2)),
            ("s2", 1): ("copy", (2, 1)),
            ("s2", 2): ("copy", (1, 2)),
            ("copy", 1): ("copy", (1,)),
            ("copy", 2): ("copy", (2,)),
        },
    )


# --- raw sequence helpers used as test-side oracles -------------------------


def raw_expand(pre, cyc, n):
    """First n symbols of pre . cyc^inf, independent of library code."""
    seq = list(pre)
    while len(seq) < n:
        seq.extend(cyc)
    return tuple(seq[:n])


def expand_point(p, n):
    return raw_expand(p.preperiod, p.cycle, n)


def points_agree(p, q, margin=4):
    """Exact equality of two eventually periodic points via expansion.

    Two sequences that are eventually periodic with preperiods <= a and
    periods <= c are equal iff their first a + 2c symbols agree once a
    bounds both preperiods and c both cycle lengths.
    """
    a = max(len(p.preperiod), len(q.preperiod))
    c = max(len(p.cycle), len(q.cycle))
    n = a + 2 * c * max(len(p.cycle), len(q.cycle)) + margin
    return expand_point(p, n) == expand_point(q, n)
