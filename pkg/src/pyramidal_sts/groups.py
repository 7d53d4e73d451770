"""Finite groups built as direct products of cyclic and dihedral factors.

Elements are plain tuples with one coordinate per factor.  A cyclic
coordinate is an ``int`` in ``[0, m)``; a dihedral coordinate is a pair
``(r, j)`` standing for ``x**r * y**j`` in ``D_2m``.  Tuples compare and
hash coordinate-wise, so elements can be used directly as dict keys.

Besides the element-level operations every group can work on integer
indices (the position of an element in :meth:`GroupSpec.elements`) with
numpy arrays, which is what the developers and verifiers use for large
orders.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from operator import mul

import numpy as np

from .errors import DomainError, StructureError

__all__ = [
    "Cyclic",
    "Dihedral",
    "GroupSpec",
    "parse_descriptor",
    "involutions",
    "subgroups_of_prime_order",
    "patterned_starter",
    "element_to_json",
    "element_from_json",
]


@dataclass(frozen=True)
class Cyclic:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"cyclic modulus must be >= 1, got {self.m}")

    @property
    def order(self):
        return self.m

    @property
    def descriptor(self):
        return f"Z{self.m}"

    def elements(self):
        return list(range(self.m))

    def identity(self):
        return 0

    def valid(self, c):
        return isinstance(c, (int, np.integer)) and not isinstance(c, bool) and 0 <= c < self.m

    def compose(self, a, b):
        return (a + b) % self.m

    def invert(self, a):
        return -a % self.m

    def local_index(self, c):
        return c

    # vectorised on local indices
    def compose_local(self, a, b):
        return (a + b) % self.m

    def invert_local(self, a):
        return (-a) % self.m

    def generators(self):
        return [1 % self.m]


@dataclass(frozen=True)
class Dihedral:
    """``D_2m = <x, y | x^m = y^2 = 1, yx = x^-1 y>``, elements ``(r, j)``."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"dihedral half-order must be >= 1, got {self.m}")

    @property
    def order(self):
        return 2 * self.m

    @property
    def descriptor(self):
        return f"D{2 * self.m}"

    def elements(self):
        return [(r, j) for r in range(self.m) for j in (0, 1)]

    def identity(self):
        return (0, 0)

    def valid(self, c):
        return (
            isinstance(c, tuple)
            and len(c) == 2
            and 0 <= c[0] < self.m
            and c[1] in (0, 1)
        )

    def compose(self, a, b):
        r1, j1 = a
        r2, j2 = b
        r = (r1 - r2 if j1 else r1 + r2) % self.m
        return (r, j1 ^ j2)

    def invert(self, a):
        r, j = a
        return (r, 1) if j else ((-r) % self.m, 0)

    def local_index(self, c):
        return 2 * c[0] + c[1]

    def compose_local(self, a, b):
        r1, j1 = a >> 1, a & 1
        r2, j2 = b >> 1, b & 1
        sign = 1 - 2 * j1
        r = (r1 + sign * r2) % self.m
        return 2 * r + (j1 ^ j2)

    def invert_local(self, a):
        r, j = a >> 1, a & 1
        r = np.where(j == 1, r, (-r) % self.m)
        return 2 * r + j

    def generators(self):
        return [(1 % self.m, 0), (0, 1)]


TABLE_MAX_ORDER = 4096

_FACTOR_RE = re.compile(r"([ZD])(\d+)$")


def _parse_factor(token):
    match = _FACTOR_RE.match(token)
    if not match:
        raise StructureError(f"bad group factor {token!r}")
    kind, num = match.group(1), int(match.group(2))
    if kind == "Z":
        return Cyclic(num)
    if num < 2 or num % 2:
        raise StructureError(f"dihedral factor needs an even order >= 2, got {token!r}")
    return Dihedral(num // 2)


def parse_descriptor(text):
    """Parse ``"Z4xZ12"``, ``"D6xZ9"`` and friends into a :class:`GroupSpec`."""
    text = text.strip()
    if not text:
        raise StructureError("empty group descriptor")
    return GroupSpec(tuple(_parse_factor(tok) for tok in text.split("x")))


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if not isinstance(f, (Cyclic, Dihedral)):
                raise StructureError(f"unsupported factor {f!r}")

    @classmethod
    def of(cls, *factors):
        return cls(tuple(factors))

    def __str__(self):
        return self.descriptor

    @property
    def descriptor(self):
        return "x".join(f.descriptor for f in self.factors)

    @cached_property
    def order(self):
        return reduce(mul, (f.order for f in self.factors), 1)

    @cached_property
    def identity(self):
        return tuple(f.identity() for f in self.factors)

    @cached_property
    def _elements(self):
        return tuple(itertools.product(*(f.elements() for f in self.factors)))

    def elements(self):
        """All elements, sorted; position in this list is the element's index."""
        return list(self._elements)

    @cached_property
    def _index(self):
        return {e: i for i, e in enumerate(self._elements)}

    @cached_property
    def _strides(self):
        strides = []
        acc = 1
        for f in reversed(self.factors):
            strides.append(acc)
            acc *= f.order
        return tuple(reversed(strides))

    def check(self, a):
        if not isinstance(a, tuple) or len(a) != len(self.factors):
            raise StructureError(f"{a!r} does not have {len(self.factors)} coordinates for {self}")
        for f, c in zip(self.factors, a):
            if not f.valid(c):
                raise StructureError(f"coordinate {c!r} of {a!r} invalid for factor {f.descriptor}")
        return a

    def __contains__(self, a):
        try:
            self.check(a)
        except StructureError:
            return False
        return True

    def normalize(self, coords):
        """Reduce raw coordinates (possibly negative or lists) into canonical form."""
        if len(coords) != len(self.factors):
            raise StructureError(f"{coords!r} does not have {len(self.factors)} coordinates for {self}")
        out = []
        for f, c in zip(self.factors, coords):
            if isinstance(f, Cyclic):
                out.append(int(c) % f.m)
            else:
                r, j = c
                if j not in (0, 1):
                    raise StructureError(f"dihedral reflection bit must be 0 or 1, got {j!r}")
                out.append((int(r) % f.m, int(j)))
        return tuple(out)

    def compose(self, a, b):
        self.check(a)
        self.check(b)
        return tuple(f.compose(x, y) for f, x, y in zip(self.factors, a, b))

    def invert(self, a):
        self.check(a)
        return tuple(f.invert(x) for f, x in zip(self.factors, a))

    def right_difference(self, a, b):
        """``a * b^-1``; unchanged when both arguments are multiplied on the right."""
        return self.compose(a, self.invert(b))

    def power(self, a, k):
        out = self.identity
        for _ in range(k):
            out = self.compose(out, a)
        return out

    def element_order(self, a):
        k, cur = 1, self.check(a)
        while cur != self.identity:
            cur = self.compose(cur, a)
            k += 1
        return k

    def generators(self):
        """One or two generators per factor, identity elsewhere."""
        gens = []
        ident = list(self.identity)
        for pos, f in enumerate(self.factors):
            for g in f.generators():
                e = list(ident)
                e[pos] = g
                gens.append(tuple(e))
        return gens

    # index arithmetic ----------------------------------------------------

    def index(self, a):
        try:
            return self._index[a]
        except KeyError:
            self.check(a)
            raise

    def element(self, i):
        return self._elements[i]

    def _split(self, idx):
        return [(idx // s) % f.order for f, s in zip(self.factors, self._strides)]

    def _join(self, parts):
        out = 0
        for p, s in zip(parts, self._strides):
            out = out + p * s
        return out

    def _compose_arith(self, a, b):
        parts = [f.compose_local(x, y) for f, x, y in zip(self.factors, self._split(a), self._split(b))]
        return self._join(parts)

    @cached_property
    def _table(self):
        idx = np.arange(self.order, dtype=np.int64)
        return self._compose_arith(idx[:, None], idx[None, :]).astype(np.int32)

    @cached_property
    def _inverse(self):
        idx = np.arange(self.order, dtype=np.int64)
        return self._join([f.invert_local(x) for f, x in zip(self.factors, self._split(idx))])

    def compose_indices(self, a, b):
        """Vectorised compose on element indices; broadcasts like numpy.

        Groups up to ``TABLE_MAX_ORDER`` use a cached Cayley table.
        """
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if not self.factors:
            return np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        if self.order <= TABLE_MAX_ORDER:
            return self._table[a, b].astype(np.int64)
        return self._compose_arith(a, b)

    def invert_indices(self, a):
        a = np.asarray(a, dtype=np.int64)
        if not self.factors:
            return np.zeros_like(a)
        if self.order <= TABLE_MAX_ORDER:
            return self._inverse[a]
        return self._join([f.invert_local(x) for f, x in zip(self.factors, self._split(a))])


def involutions(G):
    """Every ``g != 1`` with ``g*g == 1``, in canonical order."""
    idx = np.arange(G.order)
    sq = G.compose_indices(idx, idx)
    return [G.element(int(i)) for i in np.flatnonzero(sq == 0) if i != 0]


def subgroups_of_prime_order(G, p):
    """All subgroups of order ``p`` (``p`` in {2, 3}) as frozensets."""
    if p not in (2, 3):
        raise DomainError(f"only p in {{2, 3}} supported, got {p}")
    idx = np.arange(G.order)
    pw = idx.copy()
    for _ in range(p - 1):
        pw = G.compose_indices(pw, idx)
    seen = set()
    out = []
    for i in np.flatnonzero(pw == 0):
        if i == 0:
            continue
        sub = frozenset(G.power(G.element(int(i)), k) for k in range(p))
        if sub not in seen:
            seen.add(sub)
            out.append(sub)
    return out


def patterned_starter(H):
    """One representative from each pair ``{h, h^-1}``, ``h != 1``."""
    if H.order % 2 == 0:
        raise DomainError(f"patterned starter needs odd order, {H} has order {H.order}")
    seen = {H.identity}
    reps = []
    for h in H.elements():
        if h in seen:
            continue
        reps.append(h)
        seen.add(h)
        seen.add(H.invert(h))
    return reps


def element_to_json(a):
    return [list(c) if isinstance(c, tuple) else c for c in a]


def element_from_json(G, data):
    if not isinstance(data, list):
        raise StructureError(f"element must be a JSON array, got {data!r}")
    coords = [tuple(c) if isinstance(c, list) else c for c in data]
    el = tuple(coords)
    return G.check(el)
