import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pyramidal_sts import (
    Cyclic,
    Dihedral,
    DomainError,
    GroupSpec,
    StructureError,
    involutions,
    parse_descriptor,
    patterned_starter,
    subgroups_of_prime_order,
)
from pyramidal_sts.groups import element_from_json, element_to_json

D6 = GroupSpec.of(Dihedral(3))
Z4Z12 = parse_descriptor("Z4xZ12")

GROUPS = [
    parse_descriptor(d)
    for d in ("Z1", "Z7", "Z24", "D6", "D10", "Z4xZ12", "D6xZ5", "Z2xZ2xZ3xZ3", "Z3xD8")
]


def test_dihedral_law():
    assert D6.compose(((1, 0),), ((1, 0),)) == ((2, 0),)
    # yx = x^-1 y
    assert D6.compose(((0, 1),), ((1, 0),)) == ((2, 1),)


def test_cyclic_products():
    assert Z4Z12.compose((3, 10), (2, 5)) == (1, 3)
    assert Z4Z12.invert((1, 5)) == (3, 7)
    assert GroupSpec.of(Cyclic(7)).invert((3,)) == (4,)


def test_reflections_are_self_inverse():
    for r in range(3):
        assert D6.invert(((r, 1),)) == ((r, 1),)


def test_right_difference():
    Z24 = GroupSpec.of(Cyclic(24))
    assert Z24.right_difference((1,), (5,)) == (20,)
    assert D6.right_difference(((1, 0),), ((0, 1),)) == ((1, 1),)
    for g in D6.elements():
        assert D6.right_difference(g, g) == D6.identity


def test_orders():
    assert parse_descriptor("D6xZ9").order == 54
    assert GroupSpec.of().order == 1
    assert len(Z4Z12.elements()) == 48


def test_involutions():
    assert involutions(D6) == [((0, 1),), ((1, 1),), ((2, 1),)]
    assert involutions(Z4Z12) == [(0, 6), (2, 0), (2, 6)]
    assert len(involutions(parse_descriptor("Z2xZ2xZ2"))) == 7
    assert len(involutions(parse_descriptor("Z10"))) == 1
    assert len(involutions(parse_descriptor("D10"))) == 5


def test_prime_order_subgroups():
    assert len(subgroups_of_prime_order(Z4Z12, 2)) == 3
    assert subgroups_of_prime_order(parse_descriptor("Z7"), 3) == []
    G = parse_descriptor("D6xZ9")
    want = frozenset({((0, 0), 0), ((1, 0), 0), ((2, 0), 0)})
    assert want in subgroups_of_prime_order(G, 3)
    with pytest.raises(DomainError):
        subgroups_of_prime_order(G, 5)


def test_patterned_starter():
    assert patterned_starter(parse_descriptor("Z5")) == [(1,), (2,)]
    assert len(patterned_starter(parse_descriptor("Z3xZ3"))) == 4
    assert patterned_starter(parse_descriptor("Z1")) == []
    with pytest.raises(DomainError):
        patterned_starter(parse_descriptor("Z4"))


@pytest.mark.parametrize("text", ["", "Q8", "D5", "Z4xx", "D0"])
def test_bad_descriptors(text):
    with pytest.raises(StructureError):
        parse_descriptor(text)


def test_descriptor_roundtrip():
    for G in GROUPS:
        assert parse_descriptor(G.descriptor) == G


def test_invalid_elements_rejected():
    with pytest.raises(StructureError):
        Z4Z12.compose((4, 0), (0, 0))
    with pytest.raises(StructureError):
        D6.compose(((0, 2),), D6.identity)
    assert (1, 1) in Z4Z12
    assert (1, 12) not in Z4Z12


def test_normalize_and_json():
    G = parse_descriptor("D6xZ5")
    assert G.normalize([[-1, 1], -2]) == ((2, 1), 3)
    e = ((2, 1), 3)
    assert element_from_json(G, element_to_json(e)) == e


def elements_of(G):
    return st.sampled_from(G.elements())


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.descriptor)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_group_axioms(G, data):
    a, b, c = (data.draw(elements_of(G)) for _ in range(3))
    assert G.compose(G.compose(a, b), c) == G.compose(a, G.compose(b, c))
    assert G.compose(a, G.invert(a)) == G.identity
    assert G.compose(G.identity, a) == a
    # right differences ignore a common right factor
    assert G.right_difference(G.compose(a, c), G.compose(b, c)) == G.right_difference(a, b)


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.descriptor)
def test_index_arithmetic_matches_elements(G):
    els = G.elements()
    idx = np.arange(G.order)
    table = G.compose_indices(idx[:, None], idx[None, :])
    inv = G.invert_indices(idx)
    for i, a in enumerate(els):
        assert els[inv[i]] == G.invert(a)
        for j, b in enumerate(els):
            assert els[table[i, j]] == G.compose(a, b)


def test_large_groups_use_arithmetic_path():
    G = parse_descriptor("D6xZ701")
    assert G.order > 4096
    a, b = ((1, 1), 600), ((2, 0), 300)
    i = G.compose_indices(G.index(a), G.index(b))
    assert G.element(int(i)) == G.compose(a, b)
    assert G.element(int(G.invert_indices(G.index(a)))) == G.invert(a)
