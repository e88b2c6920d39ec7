"""Exact arithmetic in Z[delta] / (delta**N + delta - 1).

Elements are length-N integer vectors, ``coeffs[l]`` being the coefficient of
``delta**l``. The distinguished element ``delta**(N-1) + 1`` equals
``1/delta``; the coefficient of ``delta**(N-1)`` in its n-th power is the
auxiliary sequence value kappa_n, which obeys kappa_n = kappa_{n-1} +
kappa_{n-N} with kappa_0 = 0 and kappa_1 = ... = kappa_{N-1} = 1.

A whole window of kappa values is available from one power::

    (delta**(N-1) + 1)**m == kappa_{m+1} + sum_{l>=1} kappa_{m-N+1+l} delta**l

so no separate exponentiations are needed per index.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import kernels
from .errors import IndexRangeError, InvalidOrderError, OrderMismatchError

__all__ = [
    "MulCounter",
    "RingElement",
    "base_element",
    "count_multiplications",
    "delta_element",
    "identity",
    "kappa",
    "kappa_window",
    "power_window",
    "ring_mul",
    "ring_pow",
]


class MulCounter:
    """Tallies ring multiplications performed inside ``count_multiplications``."""

    def __init__(self) -> None:
        self.squarings = 0
        self.products = 0
        self.shifts = 0

    @property
    def total(self) -> int:
        return self.squarings + self.products + self.shifts

    def __repr__(self) -> str:
        return (f"MulCounter(squarings={self.squarings}, products={self.products}, "
                f"shifts={self.shifts})")


_counter: contextvars.ContextVar[MulCounter | None] = contextvars.ContextVar(
    "auxseq_mul_counter", default=None)


@contextlib.contextmanager
def count_multiplications() -> Iterator[MulCounter]:
    """Count ring multiplications in the current context (thread/task local)."""
    counter = MulCounter()
    token = _counter.set(counter)
    try:
        yield counter
    finally:
        _counter.reset(token)


def _check_order(order: int) -> None:
    if not isinstance(order, int) or isinstance(order, bool) or order < 2:
        raise InvalidOrderError(f"order must be an integer >= 2, got {order!r}")


@dataclass(frozen=True)
class RingElement:
    """Immutable, fully reduced element of the quotient ring of order N."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_order(self.order)
        coeffs = tuple(self.coeffs)
        if len(coeffs) != self.order:
            raise ValueError(
                f"expected {self.order} coefficients, got {len(coeffs)}")
        if not all(isinstance(c, int) for c in coeffs):
            raise TypeError("coefficients must be Python ints")
        object.__setattr__(self, "coeffs", coeffs)

    def __mul__(self, other: RingElement) -> RingElement:
        if not isinstance(other, RingElement):
            return NotImplemented
        return ring_mul(self, other)

    def __pow__(self, n: int) -> RingElement:
        return ring_pow(self, n)

    def __getitem__(self, degree: int) -> int:
        return self.coeffs[degree]

    def __str__(self) -> str:
        terms = []
        for deg in range(self.order - 1, -1, -1):
            c = self.coeffs[deg]
            if not c:
                continue
            if deg == 0:
                body = str(abs(c))
            else:
                mono = "d" if deg == 1 else f"d^{deg}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def identity(order: int) -> RingElement:
    _check_order(order)
    return RingElement(order, (1,) + (0,) * (order - 1))


def delta_element(order: int) -> RingElement:
    """The generator delta itself."""
    _check_order(order)
    return RingElement(order, (0, 1) + (0,) * (order - 2))


def base_element(order: int) -> RingElement:
    """delta**(N-1) + 1, the inverse of delta."""
    _check_order(order)
    return RingElement(order, (1,) + (0,) * (order - 2) + (1,))


def _tick(kind: str) -> None:
    counter = _counter.get()
    if counter is not None:
        setattr(counter, kind, getattr(counter, kind) + 1)


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    if a.order != b.order:
        raise OrderMismatchError(
            f"cannot multiply elements of order {a.order} and {b.order}")
    n = a.order
    if a is b or a.coeffs == b.coeffs:
        _tick("squarings")
        out = kernels.sqr_reduce(list(a.coeffs), n)
    else:
        _tick("products")
        out = kernels.mul_reduce(list(a.coeffs), list(b.coeffs), n)
    return RingElement(n, tuple(out))


def ring_mul_delta(a: RingElement) -> RingElement:
    """a * delta, an O(N) shift. Counted as one multiplication."""
    _tick("shifts")
    return RingElement(a.order, tuple(kernels.mul_delta(list(a.coeffs), a.order)))


def ring_pow(base: RingElement, n: int) -> RingElement:
    """base**n by left-to-right square-and-multiply.

    Performs floor(log2 n) squarings and popcount(n) - 1 general products.
    """
    if n < 0:
        raise IndexRangeError(f"exponent must be >= 0, got {n}")
    order = base.order
    if n == 0:
        return identity(order)
    b = list(base.coeffs)
    acc = list(b)
    counter = _counter.get()
    for bit in bin(n)[3:]:
        acc = kernels.sqr_reduce(acc, order)
        if counter is not None:
            counter.squarings += 1
        if bit == "1":
            acc = kernels.mul_reduce(acc, b, order)
            if counter is not None:
                counter.products += 1
    return RingElement(order, tuple(acc))


def _validate_index(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise IndexRangeError(f"index must be an integer >= 0, got {n!r}")


def kappa(order: int, n: int) -> int:
    """kappa_n: the delta**(N-1) coefficient of (delta**(N-1) + 1)**n."""
    _check_order(order)
    _validate_index(n)
    return ring_pow(base_element(order), n).coeffs[order - 1]


def power_window(power: RingElement) -> tuple[int, ...]:
    """Read (kappa_{m+1}, kappa_m, ..., kappa_{m-N+2}) off (1/delta)**m."""
    c = power.coeffs
    return (c[0],) + tuple(reversed(c[1:]))


def kappa_window(order: int, top: int) -> tuple[int, ...]:
    """(kappa_top, kappa_{top-1}, ..., kappa_{top-N+1}) from a single power."""
    _check_order(order)
    _validate_index(top)
    if top < order - 1:
        raise IndexRangeError(
            f"window of length {order} needs top >= {order - 1}, got {top}")
    return power_window(ring_pow(base_element(order), top - 1))


def as_element(order: int, coeffs: Sequence[int]) -> RingElement:
    return RingElement(order, tuple(coeffs))
