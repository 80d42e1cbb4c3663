"""Unit tests for cyclic orders."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from znbook.orders import (
    CyclicOrder,
    OrderError,
    canonical_rotation_reflections,
    dihedral_images,
    natural_order,
    order_from_sequence,
    overbay_order,
    ysl_order,
)


@pytest.mark.parametrize(
    ("n", "seq"),
    [
        (16, (1, 16, 3, 14, 5, 12, 7, 10, 9, 8, 11, 6, 13, 4, 15, 2)),
        (8, (1, 8, 3, 6, 5, 4, 7, 2)),
        (4, (1, 4, 3, 2)),
    ],
)
def test_ysl_order(n, seq):
    """Odd labels ascend on even positions, even labels descend on odd ones."""
    order = ysl_order(n)
    assert order.seq == seq
    assert order.seq[-1] == 2
    assert list(order) == list(seq)


@pytest.mark.parametrize("n", range(4, 101, 2))
def test_ysl_order_structure(n):
    """Parity of label and position agree, even labels run counterclockwise."""
    seq = ysl_order(n).seq
    assert list(seq[0::2]) == list(range(1, n, 2))
    assert list(seq[1::2]) == list(range(n, 0, -2))


@pytest.mark.parametrize("n", [3, 5, 2, 0])
def test_ysl_order_error(n):
    """Only even n >= 4."""
    with pytest.raises(OrderError, match="even n >= 4"):
        ysl_order(n)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_overbay_order(n):
    """The natural order."""
    assert overbay_order(n).seq == tuple(range(1, n + 1))
    assert overbay_order(n) == natural_order(n)
    with pytest.raises(OrderError):
        overbay_order(n + 1)


def test_order_from_sequence():
    """Permutations of 1..n."""
    order = order_from_sequence([1, 3, 2])
    assert order.n == len(order) == 3
    assert order.position_of(3) == 1
    with pytest.raises(OrderError, match="Duplicate label 1"):
        order_from_sequence([1, 1, 2])
    with pytest.raises(OrderError, match="missing the labels"):
        order_from_sequence([1, 2, 4])


def test_order_is_immutable():
    """Orders are frozen records with value equality."""
    order = CyclicOrder(seq=[2, 1])
    assert order.seq == (2, 1)
    with pytest.raises(TypeError):
        order.seq = (1, 2)
    assert order == order_from_sequence((2, 1))
    assert hash(order) == hash(order_from_sequence((2, 1)))


@given(st.permutations(list(range(1, 10))))
def test_position_of(seq):
    """position_of inverts the sequence."""
    order = order_from_sequence(seq)
    assert [order.position_of(label) for label in seq] == list(range(9))


@pytest.mark.parametrize("label", [0, -1, 4, 10])
def test_position_of_off_spine(label):
    """Labels outside 1..n have no position."""
    with pytest.raises(OrderError, match=f"Label {label} is not on the spine 1..3"):
        order_from_sequence([1, 3, 2]).position_of(label)


@pytest.mark.parametrize(
    ("seq", "canonical"),
    [
        ([2, 3, 1], (1, 2, 3)),
        ([1, 3, 2], (1, 2, 3)),
        ([1, 6, 3, 4, 5, 2], (1, 2, 5, 4, 3, 6)),
    ],
)
def test_canonical_rotation_reflections(seq, canonical):
    """Least sequence among rotations and reflections."""
    assert canonical_rotation_reflections(order_from_sequence(seq)) == canonical


@given(st.permutations(list(range(1, 8))))
def test_canonical_is_dihedral_invariant(seq):
    """Every rotation and reflection shares the canonical form."""
    order = order_from_sequence(seq)
    canonical = canonical_rotation_reflections(order)
    images = list(dihedral_images(order))
    assert len(images) == 14
    assert canonical[0] == 1
    assert {canonical_rotation_reflections(image) for image in images} == {canonical}
