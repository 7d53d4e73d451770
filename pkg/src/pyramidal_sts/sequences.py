"""Extended Skolem and Langford sequences.

A k-extended Langford sequence of order n and defect d is a list
``(l_1, ..., l_n)`` such that the pairs ``{l_i, l_i + i + d - 1}`` partition
``{1, ..., 2n+1} \\ {k}``.  Defect 1 gives the extended Skolem sequences.

Both are found by a deterministic backtracking search that always branches
on the most constrained unused gap and prunes positions nobody can still
cover.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from .errors import DomainError, SearchLimitExceeded

DEFAULT_NODE_LIMIT = int(os.environ.get("PYRAMIDAL_NODE_LIMIT", "20000000"))


@dataclass(frozen=True)
class ExtendedLangfordSequence:
    n: int
    d: int
    k: int
    entries: tuple

    def pairs(self):
        return [(l, l + i + self.d - 1) for i, l in enumerate(self.entries, start=1)]


@dataclass(frozen=True)
class ExtendedSkolemSequence(ExtendedLangfordSequence):
    def __init__(self, n, k, entries):
        super().__init__(n, 1, k, tuple(entries))


def _check_range(n, k):
    if n < 1:
        raise DomainError(f"order must be positive, got {n}")
    if not 1 <= k <= 2 * n + 1:
        raise DomainError(f"k={k} outside [1, {2 * n + 1}]")


def skolem_exists(n, k):
    """Parity criterion for a k-extended Skolem sequence of order n."""
    _check_range(n, k)
    if k % 2:
        return n % 4 in (0, 1)
    return n % 4 in (2, 3)


def _covers(n, d, k, entries):
    if len(entries) != n:
        return False
    seen = set()
    for i, l in enumerate(entries, start=1):
        seen.add(l)
        seen.add(l + i + d - 1)
    return len(seen) == 2 * n and seen == set(range(1, 2 * n + 2)) - {k}


def validate_extended_skolem(seq):
    return seq.d == 1 and _covers(seq.n, 1, seq.k, seq.entries)


def validate_extended_langford(seq):
    return seq.d >= 1 and _covers(seq.n, seq.d, seq.k, seq.entries)


class _OutOfBudget(Exception):
    pass


def _attempt(n, d, k, budget, rng):
    """One complete backtracking pass; ``rng`` reorders branches when given.

    Exact cover with the usual fewest-options-first rule: every free
    position must be an end of exactly one pair and every gap used once, so
    at each node we branch on whichever position or gap currently has the
    fewest legal placements.  Ties go to positions, then lower positions /
    larger gaps; options are tried left to right unless ``rng`` shuffles
    them.
    """
    top = 2 * n + 1
    full = ((1 << (top + 1)) - 1) & ~1
    free0 = full & ~(1 << k)
    gaps = {i: i + d - 1 for i in range(1, n + 1)}
    entries = [0] * (n + 1)
    nodes = 0

    def solve(free, unused):
        nonlocal nodes
        if not unused:
            return True
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget(nodes)
        # (start, gap index) options per position
        options = {}
        tightest = None
        for i in unused:
            g = gaps[i]
            starts = free & (free >> g)
            if not starts:
                return False
            gap_opts = []
            while starts:
                low = starts & -starts
                starts ^= low
                p = low.bit_length() - 1
                gap_opts.append((p, i))
                options.setdefault(p, []).append((p, i))
                options.setdefault(p + g, []).append((p, i))
            if tightest is None or len(gap_opts) < len(tightest):
                tightest = gap_opts
        best = None
        f = free
        while f:
            low = f & -f
            f ^= low
            opts = options.get(low.bit_length() - 1)
            if not opts:
                return False
            if best is None or len(opts) < len(best):
                best = opts
                if len(best) == 1:
                    break
        if len(tightest) < len(best):
            best = tightest
        if rng is not None:
            best = list(best)
            rng.shuffle(best)
        for p, i in best:
            g = gaps[i]
            entries[i] = p
            if solve(free & ~(1 << p) & ~(1 << (p + g)), [u for u in unused if u != i]):
                return True
        return False

    if solve(free0, list(range(n, 0, -1))):
        return tuple(entries[1:]), nodes
    return None, nodes


def _search(n, d, k, node_limit, first_budget=20000):
    """Return entries as a tuple, ``None`` after exhausting the space.

    The first pass uses the canonical branch order.  If it runs out of
    budget we restart with seeded shuffles and a doubled budget each time,
    which tames the heavy-tailed run times of large-defect Langford
    instances while staying reproducible.  Any pass that finishes without a
    solution has covered the whole space.
    """
    spent = 0
    budget = first_budget
    attempt = 0
    while True:
        budget = min(budget, node_limit - spent)
        if budget <= 0:
            raise SearchLimitExceeded(f"Langford search n={n} d={d} k={k}", node_limit)
        rng = None if attempt == 0 else random.Random(attempt)
        try:
            found, nodes = _attempt(n, d, k, budget, rng)
            return found
        except _OutOfBudget as exc:
            spent += exc.args[0]
        attempt += 1
        budget *= 2


def find_extended_skolem(n, k, node_limit=None):
    """Lexicographically first k-extended Skolem sequence of order n in search order.

    Returns ``None`` when no sequence exists.  Raises
    :class:`SearchLimitExceeded` if the search gives up.
    """
    _check_range(n, k)
    if not skolem_exists(n, k):
        return None
    found = _search(n, 1, k, DEFAULT_NODE_LIMIT if node_limit is None else node_limit)
    return None if found is None else ExtendedSkolemSequence(n, k, found)


def langford_guaranteed(n, d, k):
    """Sufficient condition under which a Langford sequence is known to exist."""
    return n >= 2 * d and n % 4 == 2 and k % 2 == 0


def find_extended_langford(n, d, k, node_limit=None):
    if d < 1:
        raise DomainError(f"defect must be >= 1, got {d}")
    _check_range(n, k)
    if d == 1 and not skolem_exists(n, k):
        return None
    found = _search(n, d, k, DEFAULT_NODE_LIMIT if node_limit is None else node_limit)
    return None if found is None else ExtendedLangfordSequence(n, d, k, found)
