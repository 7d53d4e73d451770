import json

import numpy as np
import pytest

from pyramidal_sts import (
    ConstructionError,
    DomainError,
    NonExistenceError,
    PartialSpread,
    admissible_3pyramidal,
    build_3pyramidal,
    build_dihedral,
    build_projective,
    cyclic_system,
    develop,
    df_dihedral,
    df_projective,
    df_v19mod48,
    forbidden_class,
    group_descriptor_for,
    infer_spread,
    parse_descriptor,
    verify_pyramidal,
    verify_sts,
)
from pyramidal_sts.system import Infinity, TripleSystem


def test_admissibility():
    assert admissible_3pyramidal(51)
    assert not admissible_3pyramidal(27)
    assert not admissible_3pyramidal(13)
    assert admissible_3pyramidal(19) and not admissible_3pyramidal(43)
    with pytest.raises(DomainError):
        admissible_3pyramidal(2)


@pytest.mark.parametrize("v,cls", [(25, (1, 24)), (13, (13, 24)), (21, (21, 24)),
                                   (27, (27, 48)), (43, (43, 48)), (11, (5, 6))])
def test_refusals_name_the_class(v, cls):
    assert forbidden_class(v) == cls
    with pytest.raises(NonExistenceError) as info:
        build_3pyramidal(v)
    assert (info.value.residue, info.value.modulus) == cls
    assert f"(mod {cls[1]})" in str(info.value)


def test_fano_from_empty_family():
    F = df_projective(2)
    T = develop(F, infer_spread(F))
    assert T.v == 7 and len(T.blocks) == 7
    assert verify_sts(T).ok


def test_sts9_from_empty_dihedral_family():
    F = df_dihedral(3)
    T = develop(F, infer_spread(F))
    assert len(T.blocks) == 12
    assert T.to_json() == build_3pyramidal(9).to_json() | {"case": ""}


def test_v19():
    F = df_v19mod48(19)
    T = develop(F, infer_spread(F))
    assert len(T.blocks) == 57 and verify_sts(T).ok


def test_build_v9_points_and_group():
    T = build_3pyramidal(9)
    assert T.group == parse_descriptor("D6")
    assert T.points[:3] == [Infinity(1), Infinity(2), Infinity(3)]
    # inf_i is attached to the i-th involution y, xy, x^2y
    for i, t in enumerate([(0, 1), (1, 1), (2, 1)], start=1):
        assert (Infinity(i), ((0, 0),), ((t),)) in T.block_labels()


def test_degenerate_v3():
    T = build_3pyramidal(3)
    assert T.group is None and len(T.blocks) == 1
    assert verify_pyramidal(T, None, 3).ok


@pytest.mark.parametrize("v", [7, 9, 15, 19, 31, 33, 39, 51, 55, 57, 63, 67, 99, 147])
def test_group_descriptors(v):
    T = build_3pyramidal(v)
    assert T.group.descriptor == group_descriptor_for(v)
    assert T.f == 3 and T.v == v


def test_deterministic():
    a = json.dumps(build_3pyramidal(105).to_json())
    b = json.dumps(build_3pyramidal(105).to_json())
    assert a == b


def test_develop_requires_all_involutions():
    G = parse_descriptor("Z2xZ2")
    spread = PartialSpread(G, (frozenset({(0, 0), (0, 1)}),))
    with pytest.raises(ConstructionError):
        develop(df_projective(2), spread)


def test_develop_rejects_spread_of_wrong_group():
    F = df_projective(2)
    with pytest.raises(ConstructionError):
        develop(F, infer_spread(df_projective(3)))


def test_examples():
    T = build_projective(3)
    assert (T.v, T.f, len(T.blocks)) == (15, 7, 35)
    T = build_dihedral(7)
    assert (T.v, T.f) == (21, 7)
    assert verify_pyramidal(T, T.group, 7).ok
    T = cyclic_system(7)
    assert verify_pyramidal(T, T.group, 0).ok


def test_text_and_json_roundtrip():
    T = build_3pyramidal(33)
    U = TripleSystem.from_json(json.loads(json.dumps(T.to_json())))
    assert np.array_equal(U.blocks, T.blocks) and U.points == T.points
    W = TripleSystem.from_text(T.to_text(), group=T.group)
    assert {frozenset(b) for b in W.block_labels()} == {frozenset(b) for b in T.block_labels()}
