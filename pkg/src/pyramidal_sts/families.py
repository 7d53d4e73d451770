"""Relative difference families and their constructions.

A family ``F`` of base triples in a group ``G`` is a ``(G, S, 3, 1)``-DF for
a partial spread ``S`` when the right differences ``a * b^-1`` taken over
ordered pairs inside each triple hit every element outside the spread
exactly once and never hit the spread.  Developing ``F`` together with the
spread gives a pyramidal Steiner triple system (see :mod:`.builder`).

All constructors return blocks in canonical order and audit their own
output with :func:`infer_spread` / :func:`validate_df`; a failed audit raises
:class:`ConstructionError` naming the rows responsible.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError, DomainError, SearchLimitExceeded, StructureError
from .groups import Cyclic, Dihedral, GroupSpec, element_to_json, element_from_json
from .groups import patterned_starter
from .sequences import DEFAULT_NODE_LIMIT, find_extended_langford, find_extended_skolem

SEARCH_MAX_ORDER = 200


def _canon_block(G, block):
    els = [G.check(e) for e in block]
    if len(set(els)) != len(els):
        raise StructureError(f"block {block!r} has repeated elements")
    return tuple(sorted(els))


def _is_subgroup(G, members):
    if G.identity not in members:
        return False
    return all(G.compose(a, G.invert(b)) in members for a in members for b in members)


@dataclass(frozen=True)
class PartialSpread:
    group: GroupSpec
    members: tuple = ()

    def __post_init__(self):
        G = self.group
        mem = tuple(sorted((frozenset(G.check(e) for e in m) for m in self.members),
                           key=lambda m: (len(m), sorted(m))))
        object.__setattr__(self, "members", mem)
        for m in mem:
            if not _is_subgroup(G, m):
                raise StructureError(f"{sorted(m)} is not a subgroup of {G}")
        for i, a in enumerate(mem):
            for b in mem[i + 1:]:
                if a & b != {G.identity}:
                    raise StructureError(f"spread members {sorted(a)} and {sorted(b)} meet non-trivially")

    @property
    def type_multiset(self):
        return Counter(len(m) for m in self.members)

    @property
    def type_label(self):
        t = self.type_multiset
        return "{" + ",".join(f"{o}^{t[o]}" for o in sorted(t)) + "}"

    def covered(self):
        out = set()
        for m in self.members:
            out |= m
        return out

    def of_order(self, o):
        return [m for m in self.members if len(m) == o]


@dataclass(frozen=True)
class DifferenceFamily:
    group: GroupSpec
    blocks: tuple = ()
    # free-form origin of each block, parallel to ``blocks``; not compared
    rows: tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def from_blocks(cls, G, blocks, rows=None):
        canon = [_canon_block(G, b) for b in blocks]
        if rows is None:
            rows = [""] * len(canon)
        pairs = sorted(zip(canon, rows))
        return cls(G, tuple(b for b, _ in pairs), tuple(r for _, r in pairs))

    def __len__(self):
        return len(self.blocks)


def delta(F):
    """Right differences over ordered pairs of distinct points in each block."""
    G = F.group
    out = []
    for block in F.blocks:
        for a in block:
            for b in block:
                if a != b:
                    out.append(G.right_difference(a, b))
    return out


def _problems(F, spread):
    G = F.group
    counts = Counter(delta(F))
    forbidden = spread.covered() | {G.identity}
    for g in G.elements():
        c = counts.get(g, 0)
        if g in forbidden:
            if c:
                return g, c, "spread element hit"
        elif c != 1:
            return g, c, "missing" if c == 0 else "repeated"
    return None


def validate_df(F, spread):
    if F.group != spread.group:
        raise StructureError(f"family over {F.group} but spread over {spread.group}")
    return _problems(F, spread) is None


def infer_spread(F, orders=(2, 3)):
    """Partial spread made of the cyclic subgroups that ``delta(F)`` misses.

    Returns ``None`` when ``delta(F)`` repeats an element or the missed
    elements do not split into cyclic subgroups with orders in ``orders``.
    Elements are claimed highest order first, so with ``orders=(2, 3, 4)`` an
    element of order 4 takes its square with it.
    """
    G = F.group
    counts = Counter(delta(F))
    if any(c > 1 for c in counts.values()) or G.identity in counts:
        return None
    missed = [g for g in G.elements() if g not in counts and g != G.identity]
    ranked = sorted(missed, key=lambda g: (-G.element_order(g), g))
    left = set(missed)
    members = []
    for g in ranked:
        if g not in left:
            continue
        o = G.element_order(g)
        if o not in orders:
            return None
        sub = {G.power(g, k) for k in range(o)}
        if not sub - {G.identity} <= left:
            return None
        left -= sub
        members.append(frozenset(sub))
    return PartialSpread(G, tuple(members))


def df_search(G, spread, node_limit=None, max_order=SEARCH_MAX_ORDER):
    """Exhaustive backtracking for a ``(G, spread, 3, 1)``-DF.

    Returns the first family found, ``None`` once the whole space has been
    ruled out, and raises :class:`SearchLimitExceeded` past ``node_limit``.
    Every block orbit has a unique representative ``{1, d, z}`` where ``d``
    is the smallest uncovered difference, so the search only branches on
    ``z``.
    """
    if spread.group != G:
        raise StructureError(f"spread over {spread.group} used with {G}")
    if G.order > max_order:
        raise DomainError(f"df_search guarded to |G| <= {max_order}, got {G.order}")
    limit = DEFAULT_NODE_LIMIT if node_limit is None else node_limit
    n = G.order
    idx = np.arange(n)
    inv = G.invert_indices(idx).tolist()
    table = G.compose_indices(idx[:, None], idx[None, :]).tolist()
    covered = {G.index(g) for g in spread.covered()} | {0}
    todo = 0
    for i in range(n):
        if i not in covered:
            todo |= 1 << i
    chosen = []
    nodes = 0

    def solve(todo):
        nonlocal nodes
        if not todo:
            return True
        nodes += 1
        if nodes > limit:
            raise SearchLimitExceeded(f"DF search over {G}", limit)
        d = (todo & -todo).bit_length() - 1
        di = inv[d]
        if di == d:
            return False
        for z in range(1, n):
            if z == d:
                continue
            zi = inv[z]
            diffs = {d, di, z, zi, table[z][di], table[d][zi]}
            if len(diffs) != 6:
                continue
            mask = 0
            for x in diffs:
                mask |= 1 << x
            if todo & mask != mask:
                continue
            chosen.append((0, d, z))
            if solve(todo & ~mask):
                return True
            chosen.pop()
        return False

    if not solve(todo):
        return None
    return DifferenceFamily.from_blocks(G, [[G.element(i) for i in b] for b in chosen])


# -- audits ---------------------------------------------------------------


def _audit(F, case, expected, orders=(2, 3)):
    """Infer the spread of a freshly built family and check its type."""
    spread = infer_spread(F, orders)
    if spread is None:
        G = F.group
        counts = Counter(delta(F))
        culprit = next((g for g, c in counts.items() if c > 1), None)
        if culprit is None:
            raise ConstructionError(f"{case}: missed differences do not form a spread of orders {orders}")
        rows = sorted({r for b, r in zip(F.blocks, F.rows)
                       if any(G.right_difference(a, c) == culprit for a in b for c in b if a != c)})
        raise ConstructionError(f"{case}: difference {culprit} repeated, from rows {rows}")
    if spread.type_multiset != Counter(expected):
        raise ConstructionError(f"{case}: spread type {spread.type_label}, expected {dict(expected)}")
    if not validate_df(F, spread):
        raise ConstructionError(f"{case}: family does not validate against its own spread")
    return spread


# -- cyclic ---------------------------------------------------------------


def _skolem_or_fail(n, k, case):
    seq = find_extended_skolem(n, k)
    if seq is None:
        raise ConstructionError(f"{case}: no {k}-extended Skolem sequence of order {n}")
    return seq.entries


def cyclic_df(order):
    """Base blocks of a cyclic STS(order) as a DF over ``Z_order``.

    ``6n+1``: blocks ``{0, i, n + s_i + i}`` from an extended Skolem sequence
    of order n.  ``6n+3``: found by :func:`df_search` against the subgroup of
    order 3.
    """
    if order % 6 not in (1, 3):
        raise DomainError(f"cyclic STS needs order ≡ 1, 3 (mod 6), got {order}")
    if order == 9:
        raise DomainError("there is no cyclic STS(9)")
    G = GroupSpec.of(Cyclic(order))
    if order % 6 == 1:
        n = (order - 1) // 6
        if n == 0:
            F = DifferenceFamily.from_blocks(G, [])
        else:
            k = 2 * n + 1 if n % 4 in (0, 1) else 2 * n
            s = _skolem_or_fail(n, k, f"cyclic_df({order})")
            F = DifferenceFamily.from_blocks(
                G, [[G.normalize(p) for p in ((0,), (i,), (n + s[i - 1] + i,))] for i in range(1, n + 1)])
        _audit(F, f"cyclic_df({order})", {})
        return F
    third = order // 3
    spread = PartialSpread(G, (frozenset({(0,), (third,), (2 * third,)}),))
    F = df_search(G, spread)
    if F is None:
        raise ConstructionError(f"cyclic_df({order}): search found nothing")
    _audit(F, f"cyclic_df({order})", {3: 1})
    return F


# -- cases v ≡ 7, 15 (mod 24) ---------------------------------------------


def _drop_trivial(H):
    keep = [i for i, f in enumerate(H.factors) if f.order > 1]
    return GroupSpec(tuple(H.factors[i] for i in keep)), keep


def df_v7_v15(v):
    """DF over ``Z2 x Z2 x H`` for ``v = 24n + 7`` or ``24n + 15``."""
    if v % 24 not in (7, 15):
        raise DomainError(f"df_v7_v15 needs v ≡ 7, 15 (mod 24), got {v}")
    n = v // 24
    if v % 24 == 7:
        H = GroupSpec.of(Cyclic(6 * n + 1))
        inner = [list(b) for b in cyclic_df(6 * n + 1).blocks]
        expected = {2: 3}
    else:
        H = GroupSpec.of(Cyclic(3), Cyclic(2 * n + 1))
        inner = [[(0, 0), (1, i), (1, -i)] for i in range(1, n + 1)]
        expected = {2: 3, 3: 1}
    Hs, keep = _drop_trivial(H)
    G = GroupSpec((Cyclic(2), Cyclic(2)) + Hs.factors)

    def lift(a, b, h):
        h = H.normalize(h)
        return G.normalize((a, b) + tuple(h[i] for i in keep))

    blocks, rows = [], []
    for B in inner:
        blocks.append([lift(0, 0, h) for h in B])
        rows.append("{0}xB")
    for h in patterned_starter(H):
        minus = H.invert(h)
        blocks.append([lift(0, 1, H.identity), lift(1, 0, h), lift(1, 1, minus)])
        rows.append("starter")
    F = DifferenceFamily.from_blocks(G, blocks, rows)
    _audit(F, f"df_v7_v15({v})", expected)
    return F


# -- case v ≡ 9 (mod 24) --------------------------------------------------

_ONE, _X, _X2, _Y = (0, 0), (1, 0), (2, 0), (0, 1)


def df_v9(v):
    """DF over ``D6 x Z_{4n+1}`` for ``v = 24n + 9``, ``n >= 1``."""
    if v % 24 != 9 or v < 33:
        raise DomainError(f"df_v9 needs v ≡ 9 (mod 24) and v >= 33, got {v}")
    n = (v - 9) // 24
    G = GroupSpec.of(Dihedral(3), Cyclic(4 * n + 1))
    blocks, rows = [], []

    def add(row, *pts):
        blocks.append([G.normalize(p) for p in pts])
        rows.append(row)

    add("r1", (_ONE, 0), (_X, n), (_X, 2 * n))
    if n % 2:
        add("r2", (_Y, 0), (_ONE, -(n + 1) // 2), (_ONE, (3 * n + 1) // 2))
        r4 = [i for i in range(1, n + 1) if i != (n + 1) // 2]
        r5 = list(range(1, n + 1))
        r6 = list(range(n + 1, 2 * n + 1))
        r7 = list(range(1, n))
    else:
        add("r3", (_ONE, 0), (_X, -n // 2), (_X, 3 * n // 2))
        r4 = list(range(1, n + 1))
        r7 = [i for i in range(1, n) if i != n // 2]
        if n % 4 == 0:
            r5 = [i for i in range(1, n + 1) if i != n // 4]
            r6 = list(range(n + 1, 2 * n + 1)) + [n // 4]
        else:
            swap = (7 * n + 2) // 4
            r5 = list(range(1, n + 1)) + [swap]
            r6 = [i for i in range(n + 1, 2 * n + 1) if i != swap]
    for i in r4:
        add("r4", (_Y, 0), (_ONE, i), (_ONE, 2 * n + 1 - i))
    for i in r5:
        add("r5", (_Y, 0), (_X, i), (_X2, -i))
    for i in r6:
        add("r6", (_Y, 0), (_X, -i), (_X2, i))
    for i in r7:
        add("r7", (_ONE, 0), (_X, i), (_X, 2 * n - i))
    F = DifferenceFamily.from_blocks(G, blocks, rows)
    spread = _audit(F, f"df_v9({v})", {2: 3, 3: 1})
    want = frozenset({(_ONE, 0), (_X, 0), (_X2, 0)})
    if spread.of_order(3) != [want]:
        raise ConstructionError(f"df_v9({v}): order-3 spread member {spread.of_order(3)}")
    return F


# -- Z_12n with spread {3, 4} ---------------------------------------------

LEMMA_TABLE = {
    2: (5, 9, 13),
    4: (40, 37, 34, 30, 38, 29, 28),
    6: (13, 16, 20, 19, 26, 28, 30, 39, 34, 37, 40),
    8: (17, 20, 22, 25, 28, 33, 36, 34, 39, 47, 46, 52, 54, 45, 53),
    12: (66, 63, 37, 64, 38, 62, 39, 58, 40, 59, 41, 67, 42, 68, 43, 69, 44, 70,
         45, 71, 46, 57, 47),
    14: (76, 74, 43, 70, 44, 77, 45, 73, 46, 68, 47, 69, 48, 78, 49, 79, 50, 80,
         51, 81, 52, 82, 53, 83, 54, 67, 55),
    20: (110, 103, 61, 108, 62, 102, 63, 100, 64, 105, 65, 106, 66, 107, 67, 98,
         68, 99, 69, 111, 70, 112, 71, 113, 72, 114, 73, 115, 74, 116, 75, 117,
         76, 118, 77, 119, 78, 97, 79),
}


def lemma_spread(n):
    G = GroupSpec.of(Cyclic(12 * n))
    return PartialSpread(G, (
        frozenset({(0,), (4 * n,), (8 * n,)}),
        frozenset({(0,), (3 * n,), (6 * n,), (9 * n,)}),
    ))


def df_lemma_z12n(n, use_table=True):
    """``(Z_12n, {3, 4}, 3, 1)``-DF for even ``n >= 2``.

    Small ``n`` come from a fixed table of triples ``{0, i, b_i}``; the rest
    (and every ``n`` with ``use_table=False`` that the formula covers) from
    one extended Skolem and one extended Langford sequence.
    """
    if n < 2 or n % 2:
        raise DomainError(f"need even n >= 2, got {n}")
    G = GroupSpec.of(Cyclic(12 * n))
    if use_table and n in LEMMA_TABLE:
        b = LEMMA_TABLE[n]
        F = DifferenceFamily.from_blocks(
            G, [[(0,), (i,), (bi,)] for i, bi in enumerate(b, start=1)], ["table"] * len(b))
    else:
        m = n // 2
        r = m % 4
        eps = r + (-1) ** r
        sk_order, lf_order, defect = m + eps, 3 * m - eps - 1, m + eps + 1
        lf_k = 2 * m - 2 * eps
        if lf_k < 1:
            raise DomainError(f"n={n}: no sequence route (Langford k={lf_k}); use the table")
        case = f"df_lemma_z12n({n})"
        s = _skolem_or_fail(sk_order, 2 * m + 1, case)
        # existence is only guaranteed for lf_order >= 2 * defect; below that
        # the search decides
        lf = find_extended_langford(lf_order, defect, lf_k)
        if lf is None:
            raise DomainError(f"n={n}: no {lf_k}-extended Langford sequence of order {lf_order}, "
                              f"defect {defect}; use the table")
        blocks = [[(0,), (-i,), (s[i - 1] + 4 * m - 1,)] for i in range(1, sk_order + 1)]
        blocks += [[(0,), (-(m + eps + i),), (lf.entries[i - 1] + 6 * m + 2 * eps,)]
                   for i in range(1, lf_order + 1)]
        F = DifferenceFamily.from_blocks(
            G, [[G.normalize(p) for p in b] for b in blocks],
            ["skolem"] * sk_order + ["langford"] * lf_order)
    spread = _audit(F, f"df_lemma_z12n({n})", {3: 1, 4: 1}, orders=(2, 3, 4))
    if spread != lemma_spread(n):
        raise ConstructionError(f"df_lemma_z12n({n}): unexpected spread {spread.members}")
    return F


# -- case v ≡ 3 (mod 48) --------------------------------------------------


def df_v3mod48(v):
    """DF over ``Z4 x Z_12n`` for ``v = 48n + 3``, ``n >= 1``."""
    if v % 48 != 3 or v < 51:
        raise DomainError(f"df_v3mod48 needs v ≡ 3 (mod 48) and v >= 51, got {v}")
    n = (v - 3) // 48
    G = GroupSpec.of(Cyclic(4), Cyclic(12 * n))
    blocks, rows = [], []

    def add(row, *pts):
        blocks.append([G.normalize(p) for p in pts])
        rows.append(row)

    if n % 2:
        t = (n - 1) // 2
        s = _skolem_or_fail(2 * n - 1, 2 * n + 1, f"df_v3mod48({v})")
        add("a", (0, 0), (1, 0), (3, 6 * t + 3))
        add("b", (0, 0), (1, 3 * t + 2), (1, -9 * t - 5))
        for i in range(1, 6 * t + 4):
            if i != 3 * t + 2:
                add("c", (0, 0), (1, i), (3, 12 * t + 7 - i))
        for i in range(1, 6 * t + 3):
            add("d", (0, 0), (1, 6 * t + 3 + i), (3, 6 * t + 3 - i))
        for i in range(1, 4 * t + 2):
            add("skolem", (0, 0), (0, i), (0, -s[i - 1] - 4 * t - 1))
    else:
        add("a", (0, 0), (1, 0), (1, 9 * n))
        for B in df_lemma_z12n(n).blocks:
            add("z12n", *[(0, b[0]) for b in B])
        for i in range(1, 3 * n + 1):
            add("c", (0, 0), (1, i), (3, 6 * n + 1 - i))
        for i in range(3 * n + 1, 6 * n):
            add("d", (0, 0), (1, i), (3, 6 * n - i))
    F = DifferenceFamily.from_blocks(G, blocks, rows)
    _audit(F, f"df_v3mod48({v})", {2: 3, 3: 1})
    return F


# -- case v ≡ 19 (mod 48) -------------------------------------------------


def df_v19mod48(v):
    """DF over ``Z4 x Z_{12n+4}`` for ``v = 48n + 19``."""
    if v % 48 != 19:
        raise DomainError(f"df_v19mod48 needs v ≡ 19 (mod 48), got {v}")
    n = (v - 19) // 48
    G = GroupSpec.of(Cyclic(4), Cyclic(12 * n + 4))
    blocks, rows = [], []

    def add(row, *pts):
        blocks.append([G.normalize(p) for p in pts])
        rows.append(row)

    add("a", (0, 0), (1, 0), (1, 3 * n + 1))
    if n:
        s = _skolem_or_fail(2 * n, n + 1, f"df_v19mod48({v})")
        for i in range(1, 2 * n + 1):
            add("skolem", (0, 0), (0, i), (0, -s[i - 1] - 2 * n))
    for i in range(1, 3 * n + 1):
        add("c", (0, 0), (1, i), (3, 6 * n + 2 - i))
    for i in range(1, 3 * n + 2):
        add("d", (0, 0), (1, 6 * n + 3 - i), (3, i))
    F = DifferenceFamily.from_blocks(G, blocks, rows)
    _audit(F, f"df_v19mod48({v})", {2: 3})
    return F


# -- example families -----------------------------------------------------


def df_projective(n):
    """The empty family over ``Z2^n``; every non-zero element is an involution."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    G = GroupSpec(tuple(Cyclic(2) for _ in range(n)))
    F = DifferenceFamily.from_blocks(G, [])
    _audit(F, f"df_projective({n})", {2: 2 ** n - 1})
    return F


def df_dihedral(f):
    """Image of a cyclic DF over ``Z_f`` under ``i -> x^i`` in ``D_2f``."""
    if f % 6 not in (1, 3) or f == 9:
        raise DomainError(f"dihedral example needs f ≡ 1, 3 (mod 6), f != 9; got {f}")
    G = GroupSpec.of(Dihedral(f))
    blocks = [[((b[0], 0),) for b in B] for B in cyclic_df(f).blocks]
    F = DifferenceFamily.from_blocks(G, blocks)
    expected = {2: f} if f % 6 == 1 else {2: f, 3: 1}
    _audit(F, f"df_dihedral({f})", expected)
    return F


# -- serialisation ----------------------------------------------------------


def family_to_json(F, spread=None):
    return {
        "group": F.group.descriptor,
        "blocks": [[element_to_json(e) for e in b] for b in F.blocks],
        "spread": [[element_to_json(e) for e in sorted(m)] for m in (spread.members if spread else ())],
    }


def family_from_json(data):
    from .groups import parse_descriptor

    G = parse_descriptor(data["group"])
    F = DifferenceFamily.from_blocks(G, [[element_from_json(G, e) for e in b] for b in data["blocks"]])
    spread = PartialSpread(G, tuple(frozenset(element_from_json(G, e) for e in m)
                                    for m in data.get("spread", [])))
    return F, spread
