"""Reference values: plain iteration and generating-function coefficients.

Nothing here touches the quotient ring, so these routines serve as the
independent side of every cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import kernels
from .closed_form import RootSet
from .errors import IndexRangeError, InvalidOrderError
from .sequence import RecurrenceSpec

__all__ = [
    "C",
    "GeneralRecurrenceSpec",
    "RationalSeries",
    "SeriesCursor",
    "genfunc",
    "genfunc_general",
    "naive_table",
    "naive_term",
    "series_coeff",
    "series_table",
]


def _strip(poly: Sequence[int]) -> tuple[int, ...]:
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


@dataclass(frozen=True)
class GeneralRecurrenceSpec:
    """a_{n+N} = sum_u A_u a_{n+N-u}; ``weights`` holds A_1..A_N.

    N = 1 is accepted (a geometric sequence).
    """

    order: int
    weights: tuple[int, ...]
    initials: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.order, int) or self.order < 1:
            raise InvalidOrderError(f"order must be >= 1, got {self.order!r}")
        weights, initials = tuple(self.weights), tuple(self.initials)
        if len(weights) != self.order or len(initials) != self.order:
            raise ValueError("weights and initials must both have length N")
        if weights[-1] == 0:
            raise ValueError("A_N must be nonzero")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "initials", initials)

    @classmethod
    def from_two_term(cls, spec: RecurrenceSpec) -> GeneralRecurrenceSpec:
        weights = [0] * spec.order
        weights[0] += 1
        weights[-1] += 1
        return cls(spec.order, tuple(weights), spec.initials)


@dataclass(frozen=True)
class RationalSeries:
    """numerator(x) / denominator(x), polynomials stored lowest degree first."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def __post_init__(self) -> None:
        num, den = _strip(self.numerator), _strip(self.denominator)
        if not den or den[0] != 1:
            raise ValueError("denominator must have constant term 1")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def cursor(self) -> SeriesCursor:
        return SeriesCursor(self)

    def __str__(self) -> str:
        return f"({_poly_str(self.numerator)}) / ({_poly_str(self.denominator)})"


def _poly_str(poly: Sequence[int]) -> str:
    out = ""
    for deg, c in enumerate(poly):
        if not c:
            continue
        mono = "" if deg == 0 else ("x" if deg == 1 else f"x^{deg}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


class SeriesCursor:
    """Streams Taylor coefficients of a RationalSeries in O(deg Q) memory.

    Single owner: do not share one cursor between threads.
    """

    def __init__(self, series: RationalSeries) -> None:
        self._num = series.numerator
        self._den = series.denominator
        self._tail: list[int] = []  # most recent coefficients, newest last
        self.index = 0

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        k = self.index
        c = self._num[k] if k < len(self._num) else 0
        tail = self._tail
        den = self._den
        for j in range(1, min(len(tail), len(den) - 1) + 1):
            if den[j]:
                c -= den[j] * tail[-j]
        tail.append(c)
        if len(tail) >= len(den):
            del tail[0]
        self.index += 1
        return c


def genfunc(spec: RecurrenceSpec) -> RationalSeries:
    """sum (alpha_n - alpha_{n-1}) x^n / (1 - x - x^N)."""
    den = [0] * (spec.order + 1)
    den[0] = 1
    den[1] -= 1
    den[spec.order] -= 1
    return RationalSeries(spec.differences, tuple(den))


def genfunc_general(spec: GeneralRecurrenceSpec) -> RationalSeries:
    """Generating function of the weighted recursion.

    Numerator: sum alpha_n x^n - sum_{u=1}^{N-1} sum_{n=0}^{N-u-1} A_u alpha_n x^{u+n}.
    """
    order = spec.order
    den = [1] + [-a for a in spec.weights]
    num = list(spec.initials)
    for u in range(1, order):
        a_u = spec.weights[u - 1]
        for n in range(order - u):
            num[u + n] -= a_u * spec.initials[n]
    return RationalSeries(tuple(num), tuple(den))


def series_coeff(series: RationalSeries, k: int) -> int:
    """Exact coefficient of x^k."""
    if k < 0:
        raise IndexRangeError(f"coefficient index must be >= 0, got {k}")
    return kernels.series_coeffs(list(series.numerator), list(series.denominator),
                                 k + 1)[k]


def series_table(series: RationalSeries, count: int) -> list[int]:
    return kernels.series_coeffs(list(series.numerator), list(series.denominator),
                                 count)


def naive_term(spec: RecurrenceSpec | GeneralRecurrenceSpec, n: int) -> int:
    """a_n by direct iteration of the recursion."""
    if n < 0:
        raise IndexRangeError(f"index must be >= 0, got {n}")
    order = spec.order
    if n < order:
        return spec.initials[n]
    steps = n - order + 1
    if isinstance(spec, RecurrenceSpec):
        window = kernels.advance_two_term(list(spec.initials), order, steps)
    else:
        window = kernels.advance_linear(list(spec.weights), list(spec.initials), steps)
    return window[-1]


def naive_table(spec: RecurrenceSpec | GeneralRecurrenceSpec, count: int) -> list[int]:
    """a_0 .. a_{count-1} by iteration."""
    out = list(spec.initials[:count])
    if count <= spec.order:
        return out
    if isinstance(spec, RecurrenceSpec):
        order = spec.order
        for k in range(order, count):
            out.append(out[k - 1] + out[k - order])
    else:
        weights = spec.weights
        for k in range(spec.order, count):
            out.append(sum(a * out[k - 1 - u] for u, a in enumerate(weights) if a))
    return out


def C(rs: RootSet, n: int, ell: int):
    """Taylor coefficient of x^n in x^ell / (1 - x - x^N), summed over the zeros.

    Depends on n - ell only: C(n, ell) == D_{n-ell}.
    """
    if not 0 <= ell < rs.order:
        raise IndexRangeError(f"ell must lie in 0..{rs.order - 1}, got {ell}")
    if n < 0:
        raise IndexRangeError(f"n must be >= 0, got {n}")
    order = rs.order
    total = rs.ctx.mpc(0)
    for x in rs.roots:
        total += x ** ell / ((order - (order - 1) * x) * x ** n)
    return rs.real_part(total, f"C_{n},{ell}")
