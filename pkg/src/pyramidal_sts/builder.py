"""Develop difference families into pyramidal triple systems.

Points are ``inf1 .. inf_f`` followed by the group elements; the group acts
by right multiplication and fixes every ``inf_i``.  The block orbits are
seeded by

* ``{inf_i, 1, t_i}`` for the i-th involution ``t_i`` (orbit length |G|/2),
* each order-3 spread member (orbit length |G|/3),
* each base block of the family (orbit length |G|),
* a Steiner system on the infinities (fixed blocks).
"""

from __future__ import annotations

import numpy as np

from .errors import ConstructionError, DomainError, NonExistenceError
from .families import (
    cyclic_df,
    df_dihedral,
    df_projective,
    df_v3mod48,
    df_v7_v15,
    df_v9,
    df_v19mod48,
    infer_spread,
)
from .groups import involutions
from .system import Infinity, TripleSystem


def admissible_3pyramidal(v):
    if v < 3:
        raise DomainError(f"v must be >= 3, got {v}")
    return v % 24 in (7, 9, 15) or v % 48 in (3, 19)


def forbidden_class(v):
    """``(residue, modulus)`` of the class that rules ``v`` out, or ``None``."""
    if v % 6 not in (1, 3):
        return v % 6, 6
    if v % 24 in (1, 13, 21):
        return v % 24, 24
    if v % 48 in (27, 43):
        return v % 48, 48
    return None


def _orbit(G, f, rep):
    """Right translates of ``rep`` as deduplicated sorted-triple keys.

    ``rep`` mixes 1-based infinity indices written as ``-i`` and element
    indices ``>= 0``; a triple ``a < b < c`` is keyed ``(a*v + b)*v + c``.
    """
    n = G.order
    v = n + f
    g = np.arange(n)
    cols = []
    for p in rep:
        if p < 0:
            cols.append(np.full(n, -p - 1))
        else:
            cols.append(G.compose_indices(p, g) + f)
    rows = np.sort(np.stack(cols, axis=1), axis=1)
    return np.unique((rows[:, 0] * v + rows[:, 1]) * v + rows[:, 2])


def develop(F, spread, infinity_blocks=None, case=""):
    """Expand ``F`` and ``spread`` into a full f-pyramidal STS(|G| + f).

    ``infinity_blocks`` are triples of 1-based infinity indices forming an
    STS(f); they default to the single block for f = 3 and to nothing for
    f <= 1.
    """
    G = F.group
    if spread.group != G:
        raise ConstructionError(f"family over {G}, spread over {spread.group}")
    odd = [m for m in spread.members if len(m) not in (2, 3)]
    if odd:
        raise ConstructionError(f"spread member of order {len(odd[0])}; need orders 2 and 3 only")
    twos = spread.of_order(2)
    threes = spread.of_order(3)
    f = len(twos)
    inv = sorted(t for m in twos for t in m if t != G.identity)
    if inv != involutions(G):
        raise ConstructionError(f"order-2 spread members {inv} are not all the involutions of {G}")
    if infinity_blocks is None:
        if f == 3:
            infinity_blocks = [(1, 2, 3)]
        elif f <= 1:
            infinity_blocks = []
        else:
            raise ConstructionError(f"f={f}: an STS({f}) on the fixed points must be supplied")
    n = G.order
    orbits = []

    def add(rep, expect, name):
        rows = _orbit(G, f, rep)
        if len(rows) != expect:
            raise ConstructionError(f"{name}: orbit length {len(rows)}, expected {expect}")
        orbits.append(rows)

    for i, t in enumerate(inv, start=1):
        add((-i, 0, G.index(t)), n // 2, f"orbit of {{inf{i}, 1, {t}}}")
    for S in threes:
        add(tuple(G.index(s) for s in sorted(S)), n // 3, f"orbit of subgroup {sorted(S)}")
    for B in F.blocks:
        add(tuple(G.index(b) for b in B), n, f"orbit of base block {B}")
    v = n + f
    fixed = np.sort(np.array(infinity_blocks, dtype=np.int64).reshape(-1, 3) - 1, axis=1)
    orbits.append((fixed[:, 0] * v + fixed[:, 1]) * v + fixed[:, 2])

    keys = np.concatenate(orbits)
    expected = v * (v - 1) // 6
    predicted = len(infinity_blocks) + f * n // 2 + len(threes) * n // 3 + len(F.blocks) * n
    if predicted != expected:
        raise ConstructionError(f"block count {predicted} from orbit lengths, STS({v}) needs {expected}")
    uniq = np.unique(keys)
    if len(uniq) != len(keys):
        raise ConstructionError(f"{len(keys) - len(uniq)} blocks repeated across different orbits")
    rows = np.stack([uniq // (v * v), uniq // v % v, uniq % v], axis=1)
    points = [Infinity(i) for i in range(1, f + 1)] + G.elements()
    return TripleSystem(v, f, points, rows, group=G, case=case)


def _with_spread(F, case, orders=(2, 3)):
    spread = infer_spread(F, orders)
    if spread is None:
        raise ConstructionError(f"{case}: family has no valid spread")
    return spread


def build_3pyramidal(v):
    """A 3-pyramidal STS(v), or :class:`NonExistenceError` for forbidden v."""
    if v < 3:
        raise DomainError(f"v must be >= 3, got {v}")
    bad = forbidden_class(v)
    if bad is not None:
        residue, modulus = bad
        if modulus == 6:
            raise NonExistenceError(v, residue, modulus,
                                    f"v ≡ {residue} (mod 6): no STS({v}) exists at all")
        raise NonExistenceError(v, residue, modulus)
    if v == 3:
        # the moved part is empty; only the fixed STS(3) is left
        return TripleSystem(3, 3, [Infinity(1), Infinity(2), Infinity(3)],
                            np.array([[0, 1, 2]]), group=None, case="degenerate")
    if v % 24 in (7, 15):
        F, case = df_v7_v15(v), f"24n+{v % 24}"
    elif v == 9:
        F, case = df_dihedral(3), "24n+9"
    elif v % 24 == 9:
        F, case = df_v9(v), "24n+9"
    elif v % 48 == 3:
        F, case = df_v3mod48(v), "48n+3"
    else:
        F, case = df_v19mod48(v), "48n+19"
    return develop(F, _with_spread(F, case), case=case)


def build_projective(n):
    """(2^n - 1)-pyramidal STS(2^(n+1) - 1) under ``Z2^n``."""
    F = df_projective(n)
    spread = _with_spread(F, f"projective({n})")
    inner = None
    if n >= 3:
        sub = build_projective(n - 1)
        inner = [tuple(i + 1 for i in row) for row in sub.blocks.tolist()]
    return develop(F, spread, infinity_blocks=inner, case=f"projective({n})")


def cyclic_system(order):
    """Cyclic STS(order), developed from :func:`cyclic_df` with no fixed points."""
    F = cyclic_df(order)
    return develop(F, _with_spread(F, f"cyclic({order})"), infinity_blocks=[], case=f"cyclic({order})")


def build_dihedral(f):
    """f-pyramidal STS(3f) under ``D_2f``."""
    F = df_dihedral(f)
    spread = _with_spread(F, f"dihedral({f})")
    inner = None
    if f > 3:
        sub = cyclic_system(f)
        inner = [tuple(i + 1 for i in row) for row in sub.blocks.tolist()]
    return develop(F, spread, infinity_blocks=inner, case=f"dihedral({f})")


def build_f_pyramidal_examples(kind, param):
    if kind == "projective":
        return build_projective(param)
    if kind == "dihedral":
        return build_dihedral(param)
    raise DomainError(f"unknown example family {kind!r}")


def group_descriptor_for(v):
    """Acting group used by :func:`build_3pyramidal`, as a descriptor string."""
    if not admissible_3pyramidal(v):
        return None
    if v == 3:
        return ""
    if v % 24 == 7:
        n = v // 24
        return "Z2xZ2" + (f"xZ{6 * n + 1}" if n else "")
    if v % 24 == 15:
        n = v // 24
        return "Z2xZ2xZ3" + (f"xZ{2 * n + 1}" if n else "")
    if v % 24 == 9:
        n = v // 24
        return "D6" + (f"xZ{4 * n + 1}" if n else "")
    # 48n+3 and 48n+19
    return f"Z4xZ{(v - 3) // 4}"
