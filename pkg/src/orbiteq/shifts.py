"""One-sided shift spaces over 0-1 transition matrices.

A shift space is the set of right-infinite sequences ``(x_n)`` over the
alphabet ``{1, ..., N}`` with ``A[x_n, x_{n+1}] = 1`` for every ``n``,
together with the left shift that drops the first symbol.  The matrix is
required to be irreducible (strongly connected transition graph) and not
a permutation matrix, so the space is infinite and has dense periodic
orbits.

Points are kept exactly: every value handled here is eventually periodic
and stored in the canonical form ``(preperiod, cycle)`` with a primitive
cycle and the shortest possible preperiod.  Those points are dense, are
closed under shifting and under finite-state maps, and two of them are
equal as sequences iff their canonical forms are equal, which is what
makes every downstream check exact.

Words are tuples of ints; the empty word is ``()``.
"""

from dataclasses import dataclass

import numpy as np

from .config import MAX_ALPHABET, MAX_DEPTH, WORD_TABLE_LIMIT
from .errors import (
    InadmissibleWord,
    NotIrreducible,
    NotZeroOne,
    PermutationMatrix,
    TooLarge,
)

__all__ = [
    "TransitionMatrix",
    "ShiftSpace",
    "Point",
    "build_shift_space",
    "allowed_words",
    "canonical_point",
    "shift_point",
    "enumerate_points",
    "point_with_prefix",
    "count_periodic",
]


class TransitionMatrix:
    """A validated square 0-1 matrix with its transition graph.

    Raises
    ------
    NotZeroOne
        if any entry is outside ``{0, 1}`` (or the array is not square).
    TooLarge
        if the alphabet exceeds the configured cap.
    PermutationMatrix
        if every row and column sums to 1.
    NotIrreducible
        if the transition graph is not strongly connected, or some state
        has no outgoing or incoming edge.

    Examples
    --------
    >>> TransitionMatrix([[1, 1], [1, 0]]).n
    2
    """

    def __init__(self, rows):
        a = np.asarray(rows, dtype=int)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise NotZeroOne("transition matrix must be square and nonempty")
        if not np.isin(a, (0, 1)).all():
            raise NotZeroOne("transition matrix entries must be 0 or 1")
        n = a.shape[0]
        if n > MAX_ALPHABET:
            raise TooLarge(f"alphabet size {n} exceeds cap {MAX_ALPHABET}")
        if (a.sum(axis=1) == 1).all() and (a.sum(axis=0) == 1).all():
            raise PermutationMatrix("matrix is a permutation matrix")
        if (a.sum(axis=1) == 0).any() or (a.sum(axis=0) == 0).any():
            raise NotIrreducible("some state has no outgoing or incoming edge")
        self.n = n
        self.entries = a
        self.entries.setflags(write=False)
        # followers[i] = sorted tuple of symbols j (1-based) with i -> j
        self.followers = tuple(
            tuple(int(j) + 1 for j in np.flatnonzero(a[i])) for i in range(n)
        )
        if not self._strongly_connected():
            raise NotIrreducible("transition graph is not strongly connected")

    def _strongly_connected(self):
        def reach(adj):
            seen = {0}
            stack = [0]
            while stack:
                i = stack.pop()
                for j in np.flatnonzero(adj[i]):
                    if int(j) not in seen:
                        seen.add(int(j))
                        stack.append(int(j))
            return len(seen) == self.n

        return reach(self.entries) and reach(self.entries.T)

    def allows(self, i, j):
        """True iff the transition ``i -> j`` (1-based symbols) is allowed."""
        return bool(self.entries[i - 1, j - 1])

    def __eq__(self, other):
        return isinstance(other, TransitionMatrix) and np.array_equal(
            self.entries, other.entries
        )

    def __hash__(self):
        return hash((self.n, self.entries.tobytes()))

    def __repr__(self):
        return f"TransitionMatrix({self.entries.tolist()})"


class ShiftSpace:
    """A shift space with cached word tables per depth.

    The table at depth ``m`` holds exactly the admissible words
    ``w_1 ... w_m`` (every consecutive pair an allowed transition), in
    lexicographic order.  Tables are filled lazily and never mutated
    afterwards, so concurrent reads are safe.
    """

    def __init__(self, matrix):
        self.matrix = matrix
        self._words = {1: tuple((i,) for i in range(1, matrix.n + 1))}
        self._enum_cache = {}
        self._rep_cache = {}

    @property
    def n(self):
        return self.matrix.n

    def words(self, m):
        """All admissible words of length ``m``, lexicographically sorted.

        Examples
        --------
        >>> s = build_shift_space([[1, 1], [1, 0]])
        >>> s.words(2)
        ((1, 1), (1, 2), (2, 1))
        """
        if m < 1:
            raise ValueError("word length must be >= 1")
        if m > MAX_DEPTH:
            raise TooLarge(f"depth {m} exceeds cap {MAX_DEPTH}")
        have = max(self._words)
        while have < m:
            prev = self._words[have]
            fol = self.matrix.followers
            nxt = tuple(w + (b,) for w in prev for b in fol[w[-1] - 1])
            if len(nxt) > WORD_TABLE_LIMIT:
                raise TooLarge(f"word table at depth {have + 1} too large")
            have += 1
            self._words[have] = nxt
        return self._words[m]

    def word_count(self, m):
        return len(self.words(m))

    def is_admissible(self, word):
        """True iff every consecutive pair in ``word`` is an allowed transition."""
        if any(not (1 <= a <= self.n) for a in word):
            return False
        return all(self.matrix.allows(a, b) for a, b in zip(word, word[1:]))

    def __eq__(self, other):
        return isinstance(other, ShiftSpace) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"ShiftSpace({self.matrix.entries.tolist()})"


def build_shift_space(rows):
    """Validate a 0-1 matrix and wrap it in a :class:`ShiftSpace`.

    Validation is eager: irreducibility, the non-permutation requirement
    and the entry range are all checked here.

    Examples
    --------
    >>> build_shift_space([[1, 1], [1, 1]]).n
    2
    """
    if isinstance(rows, TransitionMatrix):
        return ShiftSpace(rows)
    return ShiftSpace(TransitionMatrix(rows))


def allowed_words(space, m):
    """All admissible words of length ``m``, lexicographically sorted.

    There is one word per nonempty cylinder of depth ``m``.

    Examples
    --------
    >>> s = build_shift_space([[1, 1], [1, 0]])
    >>> allowed_words(s, 2)
    ((1, 1), (1, 2), (2, 1))
    """
    return space.words(m)


@dataclass(frozen=True, order=True)
class Point:
    """An eventually periodic point in canonical form.

    ``preperiod`` may be empty; ``cycle`` is nonempty and primitive (not a
    power of a shorter word), and no preperiod symbol can be absorbed by
    rotating the cycle.  Two Point values are equal iff they denote the
    same sequence.  Construct through :func:`canonical_point`, which
    establishes the invariants.
    """

    preperiod: tuple
    cycle: tuple

    def expand(self, n):
        """The first ``n`` symbols of the sequence, as a tuple."""
        pre, cyc = self.preperiod, self.cycle
        if n <= len(pre):
            return pre[:n]
        k = n - len(pre)
        reps = -(-k // len(cyc))
        return pre + (cyc * reps)[:k]

    def is_periodic(self):
        return not self.preperiod

    def __repr__(self):
        p = ",".join(map(str, self.preperiod))
        c = ",".join(map(str, self.cycle))
        return f"Point({p}|{c})"


def _primitive(cycle):
    n = len(cycle)
    for d in range(1, n):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            return cycle[:d]
    return cycle


def _canonical_unchecked(pre, cyc):
    """Canonical form without admissibility validation.

    Only for sequences that are admissible by construction (shifts of
    valid points, outputs of validated maps).
    """
    cyc = _primitive(cyc)
    k = len(pre)
    while k and pre[k - 1] == cyc[-1]:
        cyc = (cyc[-1],) + cyc[:-1]
        k -= 1
    return Point(pre[:k], cyc)


def canonical_point(space, pre, cyc):
    """Build the canonical :class:`Point` for the sequence ``pre . cyc^inf``.

    The cycle is reduced to its primitive root, then preperiod symbols are
    absorbed into the cycle while the last preperiod symbol equals the
    last cycle symbol (rotating the cycle right each time).  Both steps
    are forced, so any two descriptions of the same sequence canonicalize
    identically.

    Raises
    ------
    InadmissibleWord
        if ``pre . cyc . cyc`` is not admissible (this includes the wrap
        transition from the last cycle symbol to the first).

    Examples
    --------
    >>> s = build_shift_space([[1, 1], [1, 1]])
    >>> canonical_point(s, (), (1, 2, 1, 2))
    Point(|1,2)
    >>> canonical_point(s, (1,), (2, 1))
    Point(|1,2)
    """
    pre, cyc = tuple(pre), tuple(cyc)
    if not cyc:
        raise InadmissibleWord("cycle must be nonempty")
    word = pre + cyc + cyc
    if not space.is_admissible(word):
        raise InadmissibleWord(f"word {word} not admissible")
    return _canonical_unchecked(pre, cyc)


def shift_point(space, p):
    """Drop the first symbol of ``p`` and return the canonical result.

    Examples
    --------
    >>> s = build_shift_space([[1, 1], [1, 1]])
    >>> shift_point(s, canonical_point(s, (2,), (1,)))
    Point(|1)
    >>> shift_point(s, canonical_point(s, (), (1, 2)))
    Point(|2,1)
    """
    if p.preperiod:
        return Point(p.preperiod[1:], p.cycle)
    c = p.cycle
    return Point((), c[1:] + c[:1])


def enumerate_points(space, max_pre, max_cyc):
    """All canonical points with ``|preperiod| <= max_pre, |cycle| <= max_cyc``.

    The result is duplicate-free and sorted, so enumeration order is
    deterministic.

    Examples
    --------
    >>> s = build_shift_space([[1, 1], [1, 1]])
    >>> len(enumerate_points(s, 0, 1))
    2
    """
    if max_cyc < 1:
        raise ValueError("max_cyc must be >= 1")
    cached = space._enum_cache.get((max_pre, max_cyc))
    if cached is not None:
        return cached
    out = set()
    cycles = []
    for m in range(1, max_cyc + 1):
        for w in space.words(m):
            if space.matrix.allows(w[-1], w[0]) and _primitive(w) == w:
                cycles.append(w)
    prefixes = [()]
    for m in range(1, max_pre + 1):
        prefixes.extend(space.words(m))
    for cyc in cycles:
        for pre in prefixes:
            if pre and not space.matrix.allows(pre[-1], cyc[0]):
                continue
            out.add(_canonical_unchecked(pre, cyc))
    result = sorted(out)
    space._enum_cache[(max_pre, max_cyc)] = result
    return result


def point_with_prefix(space, word):
    """Some canonical point whose sequence starts with ``word``.

    Used to guarantee every cylinder of a given depth has at least one
    representative: the word is closed up by the shortest cycle through
    its last symbol.
    """
    word = tuple(word)
    cached = space._rep_cache.get(word)
    if cached is not None:
        return cached
    if not space.is_admissible(word) or not word:
        raise InadmissibleWord(f"word {word} not admissible")
    # BFS for the shortest path last -> last; the path symbols after the
    # start form an admissible cycle word whose wrap is the first step.
    start = word[-1]
    fol = space.matrix.followers
    parent = {}
    frontier = [start]
    found = None
    seen = set()
    while found is None:
        nxt = []
        for i in frontier:
            for j in fol[i - 1]:
                if j == start:
                    found = i
                    break
                if j not in seen:
                    seen.add(j)
                    parent[j] = i
                    nxt.append(j)
            if found is not None:
                break
        frontier = nxt
    path = []
    i = found
    while i != start:
        path.append(i)
        i = parent[i]
    path.reverse()
    cyc = tuple(path) + (start,)
    p = _canonical_unchecked(word, cyc)
    space._rep_cache[word] = p
    return p


def count_periodic(space, n):
    """Number of points fixed by the n-fold shift.

    Those are exactly the canonical points with empty preperiod whose
    cycle length divides ``n``; the count equals ``trace(A^n)``.
    """
    a = np.linalg.matrix_power(space.matrix.entries.astype(object), n)
    return int(np.trace(a))
