"""Seeded generators for ground-truth test corpora.

Out-splittings come with their conjugacy codes, so chains of random
splittings produce pairs of shift spaces that are conjugate by
construction, together with the witnessing block codes.  All randomness
flows through a caller-supplied :class:`random.Random`, so corpora are
reproducible from a seed.
"""

import random

from .errors import OrbiteqError
from .invariants import out_split
from .maps import compose_block_codes, identity_code
from .shifts import build_shift_space

__all__ = [
    "random_shift_space",
    "random_single_split",
    "split_chain",
]


def random_shift_space(rng, n, density=0.6):
    """A random valid shift space on ``n`` states."""
    while True:
        rows = [
            [1 if rng.random() < density else 0 for _ in range(n)]
            for _ in range(n)
        ]
        try:
            return build_shift_space(rows)
        except OrbiteqError:
            continue


def random_single_split(rng, space):
    """Out-split one random branching state into two follower blocks.

    Grows the state count by exactly one.  Returns the same triple as
    :func:`orbiteq.invariants.out_split`.
    """
    branching = [
        i
        for i in range(1, space.n + 1)
        if len(space.matrix.followers[i - 1]) >= 2
    ]
    state = rng.choice(branching)
    followers = list(space.matrix.followers[state - 1])
    rng.shuffle(followers)
    cut = rng.randint(1, len(followers) - 1)
    blocks = [tuple(sorted(followers[:cut])), tuple(sorted(followers[cut:]))]
    return out_split(space, {state: blocks})


def split_chain(rng, base, max_splits=2):
    """Compose 1..``max_splits`` random single-state splittings.

    Returns ``(space, code, inverse)`` where ``code`` is the composed
    conjugacy from ``base`` onto the final space and ``inverse`` its
    exact inverse, both block codes.
    """
    space = base
    code = identity_code(base)
    inverse = identity_code(base)
    for _ in range(rng.randint(1, max_splits)):
        space, c, iv = random_single_split(rng, space)
        code = compose_block_codes(c, code)
        inverse = compose_block_codes(inverse, iv)
    return space, code, inverse
