"""Cyclic vertex orders around the spine.

Spine positions are 0-based and run clockwise, vertex labels are 1-based. A
label at a 1-based "odd position" therefore sits at an even index here.
"""

from __future__ import annotations

import functools
import logging
import typing

from znbook.descriptor import Field
from znbook.record import Record

log = logging.getLogger(__name__)


class OrderError(ValueError):
    """Invalid cyclic order or order parameters."""


class CyclicOrder(Record):
    """Bijection from clockwise spine positions 0..n-1 to the labels 1..n."""

    seq: typing.Tuple[int, ...] = Field(on_setattr=tuple)

    def _post_init_(self):
        n = len(self.seq)
        seen = set()
        for label in self.seq:
            if label in seen:
                raise OrderError(f"Duplicate label {label} in order {self.seq}")
            seen.add(label)
        missing = sorted(set(range(1, n + 1)) - seen)
        if missing:
            raise OrderError(f"Order of length {n} is missing the labels {missing}")

    @property
    def n(self) -> int:
        """Number of spine positions."""
        return len(self.seq)

    @functools.cached_property
    def _positions(self) -> typing.Tuple[int, ...]:
        positions = [0] * (self.n + 1)
        for position, label in enumerate(self.seq):
            positions[label] = position
        return tuple(positions)

    def position_of(self, label: int) -> int:
        """Get the spine position of a label in O(1).

        Raises
        ------
        OrderError: for labels outside 1..n.
        """
        if not 1 <= label <= self.n:
            raise OrderError(f"Label {label} is not on the spine 1..{self.n}")
        return self._positions[label]

    def __len__(self):
        """Get the number of spine positions."""
        return self.n

    def __iter__(self):
        """Iterate over the labels clockwise from position 0."""
        return iter(self.seq)


def _check_even(n: int, kind: str):
    if n % 2 or n < 4:
        raise OrderError(f"The {kind} order needs an even n >= 4, got n={n}")


def order_from_sequence(seq: typing.Iterable[int]) -> CyclicOrder:
    """Wrap a permutation of 1..n as cyclic order.

    Raises
    ------
    OrderError: for duplicate or missing labels.
    """
    return CyclicOrder(seq=list(seq))


def natural_order(n: int) -> CyclicOrder:
    """Get the order 1, 2, ..., n clockwise."""
    return CyclicOrder(seq=range(1, n + 1))


def ysl_order(n: int) -> CyclicOrder:
    """Get the YSL order for n = 2k.

    Odd labels keep their natural clockwise order on the even positions, even labels
    run counterclockwise on the odd positions with 2 immediately counterclockwise
    of 1: 1, 2k, 3, 2k-2, 5, ..., 2k-3, 4, 2k-1, 2.
    """
    _check_even(n, "YSL")
    seq = [0] * n
    for j in range(n // 2):
        seq[2 * j] = 2 * j + 1
        seq[2 * j + 1] = n - 2 * j
    return CyclicOrder(seq=seq)


def overbay_order(n: int) -> CyclicOrder:
    """Get Overbay's order for n = 2k, the natural order.

    Its parallel families on C(2k, {1, 3, ..., mu(k)}) carry the palindromic jump
    profile 1, 3, ..., mu(k), ..., 3, 1.
    """
    _check_even(n, "Overbay")
    return natural_order(n)


def canonical_rotation_reflections(order: CyclicOrder) -> typing.Tuple[int, ...]:
    """Get the lexicographically least sequence over all rotations and reflections."""
    seq = order.seq
    best = seq
    for candidate in (seq, seq[::-1]):
        for shift in range(len(candidate)):
            rotated = candidate[shift:] + candidate[:shift]
            if rotated < best:
                best = rotated
    return best


def dihedral_images(order: CyclicOrder) -> typing.Iterator[CyclicOrder]:
    """Iterate over all rotations and reflections of an order."""
    seq = order.seq
    for candidate in (seq, seq[::-1]):
        for shift in range(len(candidate)):
            yield CyclicOrder(seq=candidate[shift:] + candidate[:shift])
