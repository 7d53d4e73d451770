"""Acceptance criteria, one test (and one PASS/FAIL line) each.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in
the terminal summary.
"""

import time

import pytest

from pyramidal_sts import (
    LEMMA_TABLE,
    DifferenceFamily,
    GroupSpec,
    Cyclic,
    DomainError,
    NonExistenceError,
    PartialSpread,
    build_3pyramidal,
    build_dihedral,
    build_projective,
    df_search,
    find_extended_langford,
    find_extended_skolem,
    involution_census,
    lemma_spread,
    skolem_exists,
    validate_df,
    validate_extended_langford,
    validate_extended_skolem,
    verify_pyramidal,
    verify_sts,
)
from pyramidal_sts.system import Infinity

LIMIT = 1000


def admissible(v):
    return v % 24 in (7, 9, 15) or v % 48 in (3, 19)


def forbidden(v):
    return v % 24 in (1, 13, 21) or v % 48 in (27, 43)


@pytest.fixture(scope="module")
def sweep():
    """Build and verify every admissible v <= 1000 once; later criteria reuse it."""
    out = {}
    t0 = time.perf_counter()
    for v in range(3, LIMIT + 1):
        if not admissible(v) and v != 3:
            continue
        T = build_3pyramidal(v)
        sts = verify_sts(T)
        pyr = verify_pyramidal(T, T.group, 3)
        out[v] = (T, sts.ok, pyr.ok)
    return out, time.perf_counter() - t0


def test_criterion_1_existence_sweep(sweep, acceptance_log):
    systems, elapsed = sweep
    bad = [v for v, (_, s, p) in systems.items() if not (s and p)]
    ok = not bad and elapsed < 60.0
    acceptance_log(1, ok, f"{len(systems)} admissible v <= {LIMIT} built and verified "
                          f"(failures {bad[:5]}), {elapsed:.1f} s (< 60 s)")
    assert ok


def test_criterion_2_refusal_sweep(acceptance_log):
    wrong = []
    count = 0
    for v in range(3, LIMIT + 1):
        if not forbidden(v):
            continue
        count += 1
        try:
            build_3pyramidal(v)
            wrong.append(v)
        except NonExistenceError:
            pass
    acceptance_log(2, not wrong, f"{count} forbidden v <= {LIMIT} refused, wrongly built: {wrong[:5]}")
    assert not wrong


def test_criterion_3_counting_identities(sweep, acceptance_log):
    systems, _ = sweep
    bad_blocks = [v for v, (T, _, _) in systems.items() if len(T.blocks) != v * (v - 1) // 6]
    bad_groups = [v for v, (T, _, _) in systems.items()
                  if T.group is not None and involution_census(T.group) != 3]
    ok = not bad_blocks and not bad_groups
    acceptance_log(3, ok, f"block count v(v-1)/6 mismatches {bad_blocks[:5]}, "
                          f"groups without exactly 3 involutions {bad_groups[:5]}")
    assert ok


REFERENCE_STS9 = [
    ("inf1", "inf2", "inf3"), ("1", "x", "x2"), ("y", "xy", "x2y"),
    ("inf1", "1", "y"), ("inf1", "x", "x2y"), ("inf1", "x2", "xy"),
    ("inf2", "1", "xy"), ("inf2", "x", "y"), ("inf2", "x2", "x2y"),
    ("inf3", "1", "x2y"), ("inf3", "x", "xy"), ("inf3", "x2", "y"),
]
NAMES = {"1": (0, 0), "x": (1, 0), "x2": (2, 0), "y": (0, 1), "xy": (1, 1), "x2y": (2, 1)}


def _label(name):
    return Infinity(int(name[3:])) if name.startswith("inf") else (NAMES[name],)


def test_criterion_4_fixtures(acceptance_log):
    T = build_3pyramidal(9)
    got = {frozenset(b) for b in T.block_labels()}
    want = {frozenset(_label(p) for p in b) for b in REFERENCE_STS9}
    sts9 = got == want
    bad_rows = []
    for n, b in LEMMA_TABLE.items():
        G = GroupSpec.of(Cyclic(12 * n))
        F = DifferenceFamily.from_blocks(G, [[(0,), (i,), (bi,)] for i, bi in enumerate(b, start=1)])
        if len(b) != 2 * n - 1 or not validate_df(F, lemma_spread(n)):
            bad_rows.append(n)
    ok = sts9 and not bad_rows
    acceptance_log(4, ok, f"STS(9) equals the 12 listed blocks: {sts9}; "
                          f"table rows n in {sorted(LEMMA_TABLE)} failing: {bad_rows}")
    assert ok


def test_criterion_5_skolem_grid(acceptance_log):
    mismatches = []
    cases = 0
    for n in range(1, 21):
        for k in range(1, 2 * n + 2):
            cases += 1
            seq = find_extended_skolem(n, k)
            found = seq is not None and validate_extended_skolem(seq)
            if found != skolem_exists(n, k) or (seq is not None and not found):
                mismatches.append((n, k))
    ok = not mismatches and cases == 440
    # 440 = sum over n <= 20 of (2n + 1) pairs (n, k)
    acceptance_log(5, ok, f"{cases} (n, k) cases, found <=> parity predicate, mismatches {mismatches[:5]}")
    assert ok


def test_criterion_6_langford_grid(acceptance_log):
    failures = []
    cases = 0
    for n in range(2, 15, 4):
        for d in range(1, n // 2 + 1):
            for k in range(2, 2 * n + 2, 2):
                cases += 1
                seq = find_extended_langford(n, d, k)
                if seq is None or not validate_extended_langford(seq):
                    failures.append((n, d, k))
    acceptance_log(6, not failures, f"{cases} (n, d, k) cases with n ≡ 2 (mod 4), failures {failures[:5]}")
    assert not failures


def test_criterion_7_no_cyclic_sts9(acceptance_log):
    G = GroupSpec.of(Cyclic(9))
    spread = PartialSpread(G, (frozenset({(0,), (3,), (6,)}),))
    t0 = time.perf_counter()
    result = df_search(G, spread)
    elapsed = time.perf_counter() - t0
    ok = result is None and elapsed < 10.0
    acceptance_log(7, ok, f"(Z9, {{3}}, 3, 1)-DF search exhausted with result {result}, {elapsed:.3f} s (< 10 s)")
    assert ok


def test_criterion_8_example_pipelines(acceptance_log):
    bad = []
    for n in range(1, 5):
        T = build_projective(n)
        f = 2 ** n - 1
        if T.v != 2 ** (n + 1) - 1 or T.f != f or not verify_sts(T).ok \
                or not verify_pyramidal(T, T.group, f).ok:
            bad.append(f"projective({n})")
    for f in (3, 7, 13, 15):
        T = build_dihedral(f)
        if T.v != 3 * f or T.f != f or not verify_sts(T).ok or not verify_pyramidal(T, T.group, f).ok:
            bad.append(f"dihedral({f})")
    try:
        build_dihedral(9)
        bad.append("dihedral(9) did not error")
    except DomainError:
        pass
    acceptance_log(8, not bad, f"projective n <= 4, dihedral f in {{3,7,13,15}}, dihedral(9) refused; problems {bad}")
    assert not bad
