"""Independent certification of triple systems.

Nothing here reuses the constructors: only the group arithmetic is shared.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import involutions
from .system import Infinity, label_to_json

DIRECT_WORK_LIMIT = 200_000


@dataclass
class StsReport:
    ok: bool
    v: int
    blocks: int
    expected_blocks: int
    counterexample: tuple | None = None
    occurrences: int | None = None
    reason: str = ""

    def to_json(self):
        return {
            "ok": self.ok,
            "v": self.v,
            "blocks": self.blocks,
            "expected_blocks": self.expected_blocks,
            "counterexample": None if self.counterexample is None
            else [label_to_json(p) for p in self.counterexample],
            "occurrences": self.occurrences,
            "reason": self.reason,
        }


@dataclass
class PyramidalReport:
    ok: bool
    f: int
    method: str = ""
    counterexample: dict | None = None
    reason: str = ""

    def to_json(self):
        return {"ok": self.ok, "f": self.f, "method": self.method,
                "counterexample": self.counterexample, "reason": self.reason}


def _pair_counts(v, blocks):
    a, b, c = blocks[:, 0], blocks[:, 1], blocks[:, 2]
    keys = np.concatenate([a * v + b, a * v + c, b * v + c])
    return np.bincount(keys, minlength=v * v).reshape(v, v)


def verify_sts(T):
    """Every unordered pair of points in exactly one block."""
    v = T.v
    blocks = np.sort(np.asarray(T.blocks, dtype=np.int64).reshape(-1, 3), axis=1)
    nb = len(blocks)
    expected = v * (v - 1) // 6 if v % 6 in (1, 3) else -1
    report = StsReport(False, v, nb, expected)
    if nb and (blocks.min() < 0 or blocks.max() >= v):
        report.reason = "block refers to a point outside the point set"
        return report
    degenerate = (blocks[:, 0] == blocks[:, 1]) | (blocks[:, 1] == blocks[:, 2])
    if degenerate.any():
        row = blocks[np.flatnonzero(degenerate)[0]]
        report.reason = "block with a repeated point"
        report.counterexample = tuple(T.points[i] for i in row)
        return report
    counts = _pair_counts(v, blocks)
    iu = np.triu_indices(v, 1)
    per_pair = counts[iu]
    bad = np.flatnonzero(per_pair != 1)
    if len(bad):
        k = bad[0]
        p, q = int(iu[0][k]), int(iu[1][k])
        report.counterexample = (T.points[p], T.points[q])
        report.occurrences = int(per_pair[k])
        report.reason = "pair not covered" if per_pair[k] == 0 else "pair covered more than once"
        return report
    if nb != expected:
        report.reason = f"{nb} blocks, expected {expected}"
        return report
    report.ok = True
    return report


def _fail(f, method, reason, **counter):
    return PyramidalReport(False, f, method, counter or None, reason)


def _canonical_rows(T, G, f):
    """Rows in the index space ``inf_i -> i-1``, ``g -> f + G.index(g)``."""
    relabel = np.empty(T.v, dtype=np.int64)
    for i, p in enumerate(T.points):
        relabel[i] = p.index - 1 if isinstance(p, Infinity) else f + G.index(p)
    return np.sort(relabel[T.blocks], axis=1)


def _image(G, f, rows, g):
    moved = rows >= f
    out = rows.copy()
    out[moved] = G.compose_indices(rows[moved] - f, g) + f
    return np.sort(out, axis=1)


def _direct(G, f, rows, v):
    keys = np.sort(rows[:, 0] * v * v + rows[:, 1] * v + rows[:, 2])
    for g in range(G.order):
        img = _image(G, f, rows, g)
        k = img[:, 0] * v * v + img[:, 1] * v + img[:, 2]
        pos = np.clip(np.searchsorted(keys, k), 0, len(keys) - 1)
        missing = np.flatnonzero(keys[pos] != k) if len(keys) else np.arange(len(k))
        if len(missing):
            return g, rows[missing[0]], img[missing[0]]
    return None


def _quotient(G, f, rows, v):
    """Translation invariance of a Steiner system from its pairs alone.

    In an STS each ordered pair ``(p, q)`` of group points has a unique
    third point ``t``.  Every right translation preserves the blocks iff
    ``t * q^-1`` (or the fixed ``t``) depends only on ``p * q^-1``.  This
    is equivalent to checking all |G| translations, in O(|G|^2).
    """
    fixed = (rows < f).sum(axis=1)
    mixed = np.flatnonzero(fixed == 2)
    if len(mixed) and G.order > 1:
        return 1, rows[mixed[0]], _image(G, f, rows[mixed[:1]], 1)[0]
    P, Q, R = [], [], []
    for a, b, c in ((0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 0, 1), (1, 2, 0), (2, 1, 0)):
        sel = (rows[:, a] >= f) & (rows[:, b] >= f)
        P.append(rows[sel, a])
        Q.append(rows[sel, b])
        R.append(rows[sel, c])
    P, Q, R = (np.concatenate(x) for x in (P, Q, R))
    qi = G.invert_indices(Q - f)
    d = G.compose_indices(P - f, qi)
    moved = R >= f
    third = np.where(moved, G.compose_indices(np.where(moved, R - f, 0), qi) + f, R)
    _, first, inverse = np.unique(d, return_index=True, return_inverse=True)
    bad = np.flatnonzero(third != third[first][inverse.ravel()])
    if not len(bad):
        return None
    k = bad[0]
    j = first[inverse.ravel()[k]]
    # q_j * g = q_k carries (p_j, q_j) onto (p_k, q_k)
    g = int(G.compose_indices(G.invert_indices(Q[j] - f), Q[k] - f))
    block = np.sort(np.array([P[j], Q[j], R[j]]))
    return g, block, _image(G, f, block[None, :], g)[0]


def verify_pyramidal(T, G, f, method="auto"):
    """``G`` fixes exactly ``inf_1..inf_f`` and is sharply transitive on the rest.

    ``method`` picks how translation invariance is checked: ``"direct"``
    maps every block by every group element; ``"quotient"`` uses the pair
    criterion of :func:`_quotient` (needs a Steiner system); ``"auto"``
    chooses direct for small inputs or non-Steiner ones.
    """
    infinities = sorted(p.index for p in T.points if isinstance(p, Infinity))
    if infinities != list(range(1, len(infinities) + 1)) or len(infinities) != f:
        return _fail(f, "", f"fixed-point count mismatch: {len(infinities)} infinity points, expected {f}")
    if G is None:
        if T.v == f:
            return PyramidalReport(True, f, "trivial", None, "no moved points")
        return _fail(f, "", "no group attached but some points are not fixed")
    moved = [p for p in T.points if not isinstance(p, Infinity)]
    if T.v - f != G.order or set(moved) != set(G.elements()):
        return _fail(f, "", f"moved points are not the {G.order} elements of {G}")
    # regular action: x * g == x only for g = 1
    idx = np.arange(G.order)
    for start in range(1, G.order, 512):
        gs = idx[start:start + 512]
        hit = G.compose_indices(idx[:, None], gs[None, :]) == idx[:, None]
        if hit.any():
            x, j = np.argwhere(hit)[0]
            return _fail(f, "", "non-identity element fixes a point",
                         element=label_to_json(G.element(int(gs[j]))),
                         point=label_to_json(G.element(int(x))))
    rows = _canonical_rows(T, G, f)
    steiner = verify_sts(T).ok
    if method == "auto":
        method = "direct" if not steiner or G.order * len(rows) <= DIRECT_WORK_LIMIT else "quotient"
    if method == "quotient" and not steiner:
        method = "direct"
    bad = (_direct if method == "direct" else _quotient)(G, f, rows, T.v)
    if bad is not None:
        g, block, img = bad
        names = [Infinity(i + 1) for i in range(f)] + G.elements()
        return _fail(f, method, "translate of a block is not a block",
                     translation=label_to_json(G.element(int(g))),
                     block=[label_to_json(names[i]) for i in block],
                     image=[label_to_json(names[i]) for i in img])
    return PyramidalReport(True, f, method)


def involution_census(G):
    return len(involutions(G))
