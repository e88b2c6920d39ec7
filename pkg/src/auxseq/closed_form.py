"""Floating-point closed forms built on the zeros of x^N + x - 1.

Everything runs in a private :class:`mpmath.MPContext` owned by the
:class:`RootSet`, so different precisions can coexist across threads.
Every float-to-integer step reports how far it was from an integer; nothing
is rounded silently.

Sum over the zeros x_k (all simple)::

    D_n = sum_k 1 / ((N - (N-1) x_k) x_k^n)          D_n == kappa_{n+1}
    a_n = sum_k (alpha_0 + sum_l (alpha_l - alpha_{l-1}) x_k^l) / ((N - (N-1) x_k) x_k^n)

For N = 3 the pairwise products p_n = (x1 x2)^n + (x2 x3)^n + (x3 x1)^n admit
a Chebyshev form and, for n > 10, the floor form round((delta^2 + 1)^n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import mpmath

from .errors import ConvergenceError, IndexRangeError, OrderMismatchError, PrecisionError
from .sequence import RecurrenceSpec

__all__ = [
    "FloatConfig",
    "Rounded",
    "RootSet",
    "D",
    "D_N3_via_p",
    "binet",
    "binet_rounded",
    "chebyshev_t",
    "fib_floor",
    "find_roots",
    "kappa_floor_N3",
    "p",
    "q_explicit",
    "residues",
    "residues_alt",
    "round_eps_power",
    "safe_index_bound",
    "term_N3_via_p",
    "term_float",
    "term_floor_N3",
]

P_METHODS = ("root-products", "chebyshev", "floor")

# floor form for p_n is proven only above this index
FLOOR_MIN_INDEX = 10


@dataclass(frozen=True)
class FloatConfig:
    precision: int = 256
    round_tolerance: float = 0.25

    def __post_init__(self) -> None:
        if self.precision < 64:
            raise ValueError(f"precision must be >= 64 bits, got {self.precision}")
        if not 0 < self.round_tolerance < 0.5:
            raise ValueError("round_tolerance must lie in (0, 0.5)")


@dataclass(frozen=True)
class Rounded:
    """A real result together with its nearest integer."""

    raw: Any
    value: int
    distance: float
    confident: bool

    def require(self, what: str = "value") -> int:
        if not self.confident:
            raise PrecisionError(
                f"{what}: {mpmath.nstr(self.raw, 20)} is {self.distance:.3g} from "
                f"the nearest integer", self.distance)
        return self.value


@dataclass(frozen=True)
class RootSet:
    """All N zeros of x^N + x - 1; ``roots[delta]`` is the real zero in (0, 1).

    Roots are ordered by argument in (-pi, pi], then by modulus.
    """

    order: int
    roots: tuple
    delta: int
    precision: int
    config: FloatConfig = field(default_factory=FloatConfig)
    ctx: Any = field(default=None, compare=False, repr=False)

    @property
    def delta_value(self):
        return self.ctx.re(self.roots[self.delta])

    @property
    def tol(self):
        """2^(-precision/2): the agreement tolerance used for float identities."""
        return self.ctx.ldexp(1, -(self.precision // 2))

    def residuals(self) -> tuple:
        ctx = self.ctx
        return tuple(abs(x ** self.order + x - 1) for x in self.roots)

    def real_part(self, z, what: str):
        """Drop the imaginary part of z after checking it is negligible."""
        ctx = self.ctx
        z = ctx.mpc(z)
        scale = max(ctx.mpf(1), abs(z))
        if abs(z.imag) > self.tol * scale:
            raise PrecisionError(
                f"{what}: imaginary residue {mpmath.nstr(z.imag, 5)} exceeds tolerance",
                float(abs(z.imag)))
        return z.real

    def round(self, x) -> Rounded:
        return _rounded(self.ctx, x, self.precision, self.config.round_tolerance)


# bits of working precision assumed lost to rounding in a closed-form sum
GUARD_BITS = 8


def _rounded(ctx, x, precision: int, tolerance: float) -> Rounded:
    """Nearest integer to x; ``distance`` includes the representation error.

    Once |x| approaches 2^precision the fractional part is no longer
    represented, so the error bound |x| * 2^(GUARD_BITS - precision) is added
    to the observed gap; otherwise huge values would round "exactly".
    """
    nearest = int(ctx.nint(x))
    err = max(ctx.mpf(1), abs(x)) * ctx.ldexp(1, GUARD_BITS - precision)
    distance = float(abs(x - nearest) + err)
    return Rounded(x, nearest, distance, distance <= tolerance)


def _make_ctx(precision: int):
    ctx = mpmath.MPContext()
    ctx.prec = precision
    return ctx


def _delta_real(ctx, order: int, budget: int = 400):
    """The zero of x^N + x - 1 in (0, 1): bisection to a bracket, then Newton."""
    f = lambda x: x ** order + x - 1
    lo, hi = ctx.mpf(0), ctx.mpf(1)
    for _ in range(60):
        mid = (lo + hi) / 2
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    x = (lo + hi) / 2
    eps = ctx.ldexp(1, -ctx.prec + 4)
    for _ in range(budget):
        step = f(x) / (order * x ** (order - 1) + 1)
        x -= step
        if abs(step) <= eps:
            return x
    raise ConvergenceError("Newton iteration for delta did not converge",
                           [abs(f(x))])


def _newton(ctx, order: int, z, steps: int = 4):
    for _ in range(steps):
        dz = order * z ** (order - 1) + 1
        if dz == 0:
            break
        z -= (z ** order + z - 1) / dz
    return z


def _durand_kerner(ctx, order: int, budget: int):
    seed = ctx.mpc("0.4", "0.9")
    zs = [seed ** k for k in range(order)]
    eps = ctx.ldexp(1, -ctx.prec + 8)
    for _ in range(budget):
        biggest = ctx.mpf(0)
        new = []
        for i, z in enumerate(zs):
            denom = ctx.mpc(1)
            for j, w in enumerate(zs):
                if j != i:
                    denom *= z - w
            step = (z ** order + z - 1) / denom
            new.append(z - step)
            biggest = max(biggest, abs(step) / max(ctx.mpf(1), abs(z)))
        zs = new
        if biggest <= eps:
            return zs
    raise ConvergenceError(
        f"Durand-Kerner did not converge for N={order} within {budget} sweeps",
        [float(abs(z ** order + z - 1)) for z in zs])


def find_roots(order: int, cfg: FloatConfig | None = None, budget: int = 2000) -> RootSet:
    """All zeros of x^N + x - 1 at ``cfg.precision`` bits."""
    if not isinstance(order, int) or order < 2:
        from .errors import InvalidOrderError

        raise InvalidOrderError(f"order must be an integer >= 2, got {order!r}")
    cfg = cfg or FloatConfig()
    work = _make_ctx(cfg.precision + 32)
    delta = _delta_real(work, order)
    zs = [_newton(work, order, z) for z in _durand_kerner(work, order, budget)]

    real_tol = work.ldexp(1, -(cfg.precision // 2))
    cleaned = []
    for z in zs:
        if abs(z.imag) <= real_tol * max(1, abs(z)):
            z = work.mpc(_newton(work, order, work.mpf(z.real)))
        cleaned.append(z)
    # the (0, 1) zero is replaced by the bracketed one
    idx = min(range(order), key=lambda i: abs(cleaned[i] - delta))
    cleaned[idx] = work.mpc(delta)
    # enforce exact conjugate pairs
    upper = [z for z in cleaned if z.imag > 0]
    lower = [z for z in cleaned if z.imag < 0]
    if len(upper) != len(lower):
        raise ConvergenceError("non-real zeros do not pair into conjugates",
                               [float(abs(z ** order + z - 1)) for z in cleaned])
    for z in upper:
        partner = min(lower, key=lambda w: abs(w - work.conj(z)))
        lower.remove(partner)
    cleaned = [z for z in cleaned if z.imag == 0] + upper + [work.conj(z) for z in upper]

    ctx = _make_ctx(cfg.precision)
    roots = [ctx.mpc(z) for z in cleaned]
    roots.sort(key=lambda z: (float(ctx.arg(z)) if z.imag != 0 else
                              (0.0 if z.real > 0 else math.pi), float(abs(z))))
    delta_idx = next(i for i, z in enumerate(roots)
                     if z.imag == 0 and 0 < z.real < 1)
    rs = RootSet(order, tuple(roots), delta_idx, cfg.precision, cfg, ctx)

    residuals = rs.residuals()
    bound = rs.tol
    if any(r >= bound for r in residuals):
        raise ConvergenceError("root residuals above 2^(-precision/2)",
                               [float(r) for r in residuals])
    for i in range(order):
        for j in range(i + 1, order):
            if abs(roots[i] - roots[j]) <= bound:
                raise ConvergenceError("zeros are not distinct at this precision",
                                       [float(r) for r in residuals])
    return rs


def residues(rs: RootSet) -> tuple:
    """Partial-fraction coefficients r_k = -1 / (1 + N x_k^(N-1))."""
    n = rs.order
    return tuple(-1 / (1 + n * x ** (n - 1)) for x in rs.roots)


def residues_alt(rs: RootSet) -> tuple:
    """The same residues as -x_k / (N - (N-1) x_k), using x_k^N = 1 - x_k."""
    n = rs.order
    return tuple(-x / (n - (n - 1) * x) for x in rs.roots)


def _kernel_sum(rs: RootSet, n: int, weight: Callable[[Any], Any]) -> Any:
    order = rs.order
    total = rs.ctx.mpc(0)
    for x in rs.roots:
        total += weight(x) / ((order - (order - 1) * x) * x ** n)
    return total


def D(rs: RootSet, n: int):
    """D_n = sum_k 1 / ((N - (N-1) x_k) x_k^n); equals kappa_{n+1}."""
    if n < -(rs.order - 1):
        raise IndexRangeError(f"D_n is defined here for n >= {-(rs.order - 1)}, got {n}")
    return rs.real_part(_kernel_sum(rs, n, lambda x: 1), f"D_{n}")


def term_float(spec: RecurrenceSpec, rs: RootSet, n: int) -> Rounded:
    """a_n from the partial-fraction sum over all zeros."""
    if spec.order != rs.order:
        raise OrderMismatchError(f"spec has N={spec.order}, roots have N={rs.order}")
    if n < 0:
        raise IndexRangeError(f"index must be >= 0, got {n}")
    diffs = spec.differences

    def weight(x):
        acc = rs.ctx.mpc(diffs[0])
        xl = rs.ctx.mpc(1)
        for d in diffs[1:]:
            xl *= x
            if d:
                acc += d * xl
        return acc

    raw = rs.real_part(_kernel_sum(rs, n, weight), f"a_{n}")
    return rs.round(raw)


def safe_index_bound(order: int, precision: int, guard_bits: int = 16) -> int:
    """Largest n for which the float sums keep ~guard_bits of fractional accuracy.

    The dominant term grows like (1/delta)^n, so each unit of n costs
    log2(1/delta) bits.
    """
    lo, hi = 0.0, 1.0
    for _ in range(80):
        mid = (lo + hi) / 2
        if mid ** order + mid - 1 > 0:
            hi = mid
        else:
            lo = mid
    return int((precision - guard_bits) / -math.log2(lo))


def binet_rounded(n: int, cfg: FloatConfig | None = None) -> Rounded:
    if n < 0:
        raise IndexRangeError(f"index must be >= 0, got {n}")
    cfg = cfg or FloatConfig()
    ctx = _make_ctx(cfg.precision)
    root5 = ctx.sqrt(5)
    phi = (1 + root5) / 2
    psi = (1 - root5) / 2
    raw = (phi ** n - psi ** n) / root5
    return _rounded(ctx, raw, cfg.precision, cfg.round_tolerance)


def binet(n: int, cfg: FloatConfig | None = None) -> int:
    """F_n from Binet's formula; raises PrecisionError when rounding is unsafe."""
    return binet_rounded(n, cfg).require(f"F_{n}")


def _floor_half(ctx, x, err, what: str) -> int:
    """floor(x + 1/2), refusing when x + 1/2 is within err of an integer."""
    y = x + ctx.mpf(0.5)
    f = ctx.floor(y)
    if y - f <= err or f + 1 - y <= err:
        raise PrecisionError(f"{what}: floor argument within {mpmath.nstr(err, 3)} of "
                             f"an integer", float(min(y - f, f + 1 - y)))
    return int(f)


def fib_floor(n: int, cfg: FloatConfig | None = None) -> int:
    """F_n = floor(phi^n / sqrt(5) + 1/2)."""
    if n < 0:
        raise IndexRangeError(f"index must be >= 0, got {n}")
    cfg = cfg or FloatConfig()
    ctx = _make_ctx(cfg.precision)
    root5 = ctx.sqrt(5)
    x = ((1 + root5) / 2) ** n / root5
    err = max(ctx.mpf(1), x) * ctx.ldexp(1, GUARD_BITS - cfg.precision)
    return _floor_half(ctx, x, err, f"F_{n}")


def chebyshev_t(n: int, x):
    """T_n(x) by the three-term recurrence T_{k+1} = 2x T_k - T_{k-1}."""
    n = abs(n)
    if n == 0:
        return x * 0 + 1
    prev, cur = x * 0 + 1, x
    for _ in range(n - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def _require_n3(rs: RootSet) -> None:
    if rs.order != 3:
        raise OrderMismatchError(f"this formula needs N=3, got N={rs.order}")


def _pair_products(rs: RootSet):
    x1, x2, x3 = rs.roots
    return x1 * x2, x2 * x3, x3 * x1


def round_eps_power(rs: RootSet, m: int) -> int:
    """floor(eps^m + 1/2) with eps = delta^(N-1) + 1 = 1/delta."""
    ctx = rs.ctx
    d = rs.delta_value
    eps = d ** (rs.order - 1) + 1
    x = eps ** m
    err = max(ctx.mpf(1), x) * ctx.ldexp(1, GUARD_BITS - rs.precision)
    return _floor_half(ctx, x, err, f"round(eps^{m})")


def p(rs: RootSet, n: int, method: str = "root-products"):
    """p_n = (x1 x2)^n + (x2 x3)^n + (x3 x1)^n for N = 3.

    ``root-products`` and ``chebyshev`` return reals; ``floor`` returns an int
    and is accepted only for n > 10.
    """
    _require_n3(rs)
    ctx = rs.ctx
    if method == "root-products":
        return rs.real_part(sum(z ** n for z in _pair_products(rs)), f"p_{n}")
    if method == "chebyshev":
        if n < 0:
            raise IndexRangeError("chebyshev route needs n >= 0")
        d = rs.delta_value
        sd = ctx.sqrt(d)
        return 2 * (-sd) ** n * chebyshev_t(n, d * sd / 2) + (d ** 2 + 1) ** n
    if method == "floor":
        if n <= FLOOR_MIN_INDEX:
            raise IndexRangeError(f"floor route for p_n requires n > {FLOOR_MIN_INDEX}, got {n}")
        return round_eps_power(rs, n)
    raise ValueError(f"unknown method {method!r}; expected one of {P_METHODS}")


def q_explicit(rs: RootSet, n: int):
    """q_n from its six-term definition (should equal p_{n+1} - p_{n+2})."""
    _require_n3(rs)
    x1, x2, x3 = rs.roots
    total = 0
    for a, b in ((x1, x2), (x2, x3), (x3, x1)):
        total += a ** (n + 1) * b ** n + a ** n * b ** (n + 1)
    return rs.real_part(total, f"q_{n}")


def _agree(rs: RootSet, a, b, what: str):
    ctx = rs.ctx
    scale = max(ctx.mpf(1), abs(a), abs(b))
    gap = abs(a - b)
    if gap > rs.tol * scale:
        raise PrecisionError(f"{what}: routes differ by {mpmath.nstr(gap, 5)}", float(gap))


def D_N3_via_p(rs: RootSet, n: int, method: str = "root-products"):
    """D_n = (9 p_n - 2 p_{n+1} + 6 p_{n+2}) / 31, checked against :func:`D`."""
    _require_n3(rs)
    val = (9 * p(rs, n, method) - 2 * p(rs, n + 1, method) + 6 * p(rs, n + 2, method)) / 31
    _agree(rs, val, D(rs, n), f"D_{n}")
    return val


def term_N3_via_p(rs: RootSet, n: int, method: str = "root-products") -> Rounded:
    """a_n for N=3, alpha=(0,1,2): (6 p_{n+1} + 4 p_n + 7 p_{n-1} + 9 p_{n-2}) / 31."""
    _require_n3(rs)
    val = (6 * p(rs, n + 1, method) + 4 * p(rs, n, method)
           + 7 * p(rs, n - 1, method) + 9 * p(rs, n - 2, method)) / 31
    return rs.round(val)


_floor_cache: dict[int, RootSet] = {}


def _n3_roots(rs: RootSet | None) -> RootSet:
    if rs is not None:
        _require_n3(rs)
        return rs
    cached = _floor_cache.get(256)
    if cached is None:
        cached = find_roots(3)
        _floor_cache[256] = cached
    return cached


def _exact_31(total: int, what: str) -> int:
    q, r = divmod(total, 31)
    if r:
        raise PrecisionError(f"{what}: combination {total} not divisible by 31 "
                             f"(remainder {r})", r)
    return q


def term_floor_N3(n: int, rs: RootSet | None = None) -> int:
    """a_n for N=3, alpha=(0,1,2) from rounded powers of eps, n > 10."""
    if n <= FLOOR_MIN_INDEX:
        raise IndexRangeError(f"floor formula requires n > {FLOOR_MIN_INDEX}, got {n}")
    rs = _n3_roots(rs)
    f = lambda m: round_eps_power(rs, m)
    total = 6 * f(n + 1) + 4 * f(n) + 7 * f(n - 1) + 9 * f(n - 2)
    return _exact_31(total, f"a_{n}")


def kappa_floor_N3(n: int, rs: RootSet | None = None) -> int:
    """kappa_n for N=3 from rounded powers of eps, n > 10."""
    if n <= FLOOR_MIN_INDEX:
        raise IndexRangeError(f"floor formula requires n > {FLOOR_MIN_INDEX}, got {n}")
    rs = _n3_roots(rs)
    f = lambda m: round_eps_power(rs, m)
    total = 6 * f(n + 1) - 2 * f(n) + 9 * f(n - 1)
    return _exact_31(total, f"kappa_{n}")
