"""Terms of a_n = a_{n-1} + a_{n-N} through the auxiliary kappa sequence.

For n >= N - 1::

    a_n = alpha_0 * kappa_{n+1} + sum_{l=1}^{N-1} (alpha_l - alpha_{l-1}) * kappa_{n+1-l}

and every kappa on the right is a coefficient of (1/delta)**n, so one ring
exponentiation gives the whole term. Multiplicative recursions
a_n = a_{n-1} * a_{n-N} are handled by tracking the exponent of each initial
value, each of which follows the additive recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import IndexRangeError, InvalidOrderError, TooLargeToExpand
from .ring import base_element, kappa_window, power_window, ring_pow

__all__ = [
    "DEFAULT_MAX_DIGITS",
    "FactoredInteger",
    "MultiplicativeSpec",
    "RecurrenceSpec",
    "kappa_window",
    "term",
    "term_multiplicative",
]

DEFAULT_MAX_DIGITS = 10**6


def _check(order: int, initials: Sequence[int]) -> tuple[int, ...]:
    if not isinstance(order, int) or isinstance(order, bool) or order < 2:
        raise InvalidOrderError(f"order must be an integer >= 2, got {order!r}")
    initials = tuple(initials)
    if len(initials) != order:
        raise ValueError(f"need exactly {order} initial values, got {len(initials)}")
    if not all(isinstance(a, int) and not isinstance(a, bool) for a in initials):
        raise TypeError("initial values must be integers")
    return initials


@dataclass(frozen=True)
class RecurrenceSpec:
    """a_n = a_{n-1} + a_{n-N} with a_0..a_{N-1} = initials."""

    order: int
    initials: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "initials", _check(self.order, self.initials))

    @property
    def differences(self) -> tuple[int, ...]:
        """alpha_l - alpha_{l-1}, with alpha_{-1} = 0."""
        prev = (0,) + self.initials[:-1]
        return tuple(a - p for a, p in zip(self.initials, prev))


@dataclass(frozen=True)
class MultiplicativeSpec:
    """a_n = a_{n-1} * a_{n-N} with positive integer initials."""

    order: int
    initials: tuple[int, ...]

    def __post_init__(self) -> None:
        initials = _check(self.order, self.initials)
        if any(a < 1 for a in initials):
            raise ValueError("multiplicative initial values must be >= 1")
        object.__setattr__(self, "initials", initials)


@dataclass(frozen=True)
class FactoredInteger:
    """Product of powers. ``factors`` keeps one slot per initial value."""

    factors: tuple[tuple[int, int], ...]

    def merged(self) -> tuple[tuple[int, int], ...]:
        """Factors with equal bases combined; base 1 and zero exponents dropped."""
        acc: dict[int, int] = {}
        for base, exp in self.factors:
            if base == 1 or exp == 0:
                continue
            acc[base] = acc.get(base, 0) + exp
        return tuple(sorted(acc.items()))

    def estimated_digits(self) -> int:
        logs = sum(e * math.log10(b) for b, e in self.merged())
        return int(logs) + 1

    def expand(self, max_digits: int | None = DEFAULT_MAX_DIGITS) -> int:
        if max_digits is not None:
            digits = self.estimated_digits()
            if digits > max_digits:
                raise TooLargeToExpand(digits, max_digits)
        out = 1
        for base, exp in self.merged():
            out *= base ** exp
        return out

    def __str__(self) -> str:
        parts = [f"{b}^{e}" if e != 1 else str(b) for b, e in self.merged()]
        return " * ".join(parts) if parts else "1"


def _combine(initials: Sequence[int], window: Sequence[int]) -> int:
    # window = (kappa_{n+1}, kappa_n, ..., kappa_{n+2-N})
    total = 0
    prev = 0
    for a, k in zip(initials, window):
        d = a - prev
        if d:
            total += d * k
        prev = a
    return total


def _window_for_term(order: int, n: int) -> tuple[int, ...]:
    return power_window(ring_pow(base_element(order), n))


def term(spec: RecurrenceSpec, n: int) -> int:
    """Exact a_n via one exponentiation of 1/delta."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise IndexRangeError(f"index must be an integer >= 0, got {n!r}")
    if n < spec.order:
        return spec.initials[n]
    return _combine(spec.initials, _window_for_term(spec.order, n))


def term_multiplicative(spec: MultiplicativeSpec, n: int) -> FactoredInteger:
    """a_n as a product of powers of the initial values."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise IndexRangeError(f"index must be an integer >= 0, got {n!r}")
    order = spec.order
    if n < order:
        exps = [0] * order
        exps[n] = 1
    else:
        window = _window_for_term(order, n)
        exps = []
        for slot in range(order):
            unit = [0] * order
            unit[slot] = 1
            exps.append(_combine(unit, window))
    return FactoredInteger(tuple(zip(spec.initials, exps)))
