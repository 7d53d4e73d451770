import pytest

from pyramidal_sts import (
    DomainError,
    ExtendedLangfordSequence,
    ExtendedSkolemSequence,
    SearchLimitExceeded,
    find_extended_langford,
    find_extended_skolem,
    langford_guaranteed,
    skolem_exists,
    validate_extended_langford,
    validate_extended_skolem,
)


def test_parity_predicate():
    assert skolem_exists(4, 9)
    assert not skolem_exists(1, 2)
    assert skolem_exists(2, 2)
    with pytest.raises(DomainError):
        skolem_exists(3, 8)
    with pytest.raises(DomainError):
        skolem_exists(0, 1)


def test_small_skolem():
    assert find_extended_skolem(1, 1).entries == (2,)
    assert find_extended_skolem(2, 2).entries == (4, 1)
    assert find_extended_skolem(1, 2) is None


def test_validate_skolem():
    assert validate_extended_skolem(ExtendedSkolemSequence(4, 9, (1, 5, 3, 4)))
    assert not validate_extended_skolem(ExtendedSkolemSequence(1, 1, (3,)))
    assert validate_extended_skolem(ExtendedSkolemSequence(2, 2, (4, 1)))


def test_pairs():
    assert ExtendedSkolemSequence(4, 9, (1, 5, 3, 4)).pairs() == [(1, 2), (5, 7), (3, 6), (4, 8)]


def test_langford():
    assert find_extended_langford(2, 1, 2).entries == (4, 1)
    seq = find_extended_langford(6, 2, 2)
    assert validate_extended_langford(seq)
    assert not validate_extended_langford(ExtendedLangfordSequence(2, 2, 1, (1, 1)))
    assert validate_extended_langford(ExtendedLangfordSequence(2, 1, 2, (4, 1)))
    with pytest.raises(DomainError):
        find_extended_langford(6, 0, 2)


def test_langford_guarantee_predicate():
    assert langford_guaranteed(6, 3, 2)
    assert not langford_guaranteed(6, 4, 2)
    assert not langford_guaranteed(6, 3, 3)
    assert not langford_guaranteed(8, 2, 2)


def test_search_is_deterministic():
    assert find_extended_skolem(13, 27) == find_extended_skolem(13, 27)


def test_node_limit():
    with pytest.raises(SearchLimitExceeded):
        find_extended_langford(30, 14, 2, node_limit=5)


@pytest.mark.parametrize("n", [24, 33, 40])
def test_larger_orders(n):
    k = 2 * n + 1 if n % 4 in (0, 1) else 2 * n
    seq = find_extended_skolem(n, k)
    assert validate_extended_skolem(seq)
