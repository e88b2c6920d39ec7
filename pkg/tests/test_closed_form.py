import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from auxseq.closed_form import (
    FloatConfig,
    D,
    D_N3_via_p,
    binet,
    binet_rounded,
    chebyshev_t,
    fib_floor,
    find_roots,
    kappa_floor_N3,
    p,
    q_explicit,
    residues,
    residues_alt,
    round_eps_power,
    safe_index_bound,
    term_N3_via_p,
    term_float,
    term_floor_N3,
)
from auxseq.errors import IndexRangeError, OrderMismatchError, PrecisionError
from auxseq.ring import kappa
from auxseq.sequence import RecurrenceSpec, term

from .conftest import WORKED_SPECS, iterate, kappa_ref

HP = mpmath.MPContext()
HP.prec = 300


def radical_delta():
    r = HP.sqrt(93) / 18
    return HP.cbrt(r + HP.mpf(1) / 2) - HP.cbrt(r - HP.mpf(1) / 2)


def radical_eps():
    r = HP.sqrt(93) / 18
    c = HP.mpf(29) / 54
    return HP.cbrt(c + r) + HP.cbrt(c - r) + HP.mpf(1) / 3


# --- configuration ----------------------------------------------------------

def test_float_config_validation():
    with pytest.raises(ValueError):
        FloatConfig(precision=32)
    with pytest.raises(ValueError):
        FloatConfig(round_tolerance=0.5)
    assert FloatConfig().precision == 256


# --- roots -----------------------------------------------------------------

def test_roots_n2_golden():
    rs = find_roots(2)
    got = sorted(float(x.real) for x in rs.roots)
    assert got == pytest.approx([(-1 - math.sqrt(5)) / 2, (-1 + math.sqrt(5)) / 2], abs=1e-15)
    assert abs(rs.delta_value - (HP.sqrt(5) - 1) / 2) < mpmath.mpf(2) ** -200


def test_delta_matches_radical(roots3):
    assert abs(roots3.delta_value - radical_delta()) < mpmath.mpf(2) ** -200


def test_eps_consistency(roots3):
    d = roots3.delta_value
    eps = d ** 2 + 1
    assert abs(eps - 1 / d) < mpmath.mpf(2) ** -200
    assert abs(eps - radical_eps()) < mpmath.mpf(2) ** -200


@pytest.mark.parametrize("order", range(2, 13))
def test_root_invariants(order):
    rs = find_roots(order)
    assert len(rs.roots) == order
    assert all(r < rs.tol for r in rs.residuals())
    reals = [x for x in rs.roots if x.imag == 0 and 0 < x.real < 1]
    assert len(reals) == 1 and rs.roots[rs.delta] == reals[0]
    for i in range(order):
        for j in range(i + 1, order):
            assert abs(rs.roots[i] - rs.roots[j]) > 1e-3
    # conjugate closure
    for x in rs.roots:
        assert any(abs(y - rs.ctx.conj(x)) == 0 for y in rs.roots)
    # independent oracle
    ref = np.roots([1] + [0] * (order - 2) + [1, -1])
    for x in rs.roots:
        assert np.min(np.abs(ref - complex(x))) < 1e-9


@pytest.mark.parametrize("order", [2, 4, 6])
def test_even_order_has_negative_real_root(order):
    rs = find_roots(order)
    negatives = [x for x in rs.roots if x.imag == 0 and x.real < 0]
    assert len(negatives) == 1


def test_roots_deterministic_order():
    a, b = find_roots(7), find_roots(7)
    assert a.roots == b.roots
    args = [float(a.ctx.arg(x)) if x.imag != 0 else (0.0 if x.real > 0 else math.pi)
            for x in a.roots]
    assert args == sorted(args)


@pytest.mark.parametrize("order", range(2, 9))
def test_reciprocal_characteristic_roots(order):
    rs = find_roots(order)
    ref = np.roots([1, -1] + [0] * (order - 2) + [-1])
    for x in rs.roots:
        assert np.min(np.abs(ref - complex(1 / x))) < 1e-9


def test_symmetric_functions_n3(roots3):
    x1, x2, x3 = roots3.roots
    tol = roots3.tol
    assert abs(x1 + x2 + x3) < tol
    assert abs(x1 * x2 + x2 * x3 + x3 * x1 - 1) < tol
    assert abs(x1 * x2 * x3 - 1) < tol


def test_higher_precision_roots():
    rs = find_roots(5, FloatConfig(precision=512))
    assert all(r < mpmath.mpf(2) ** -256 for r in rs.residuals())


# --- residues --------------------------------------------------------------

def test_residue_forms_agree(roots_by_order):
    for rs in roots_by_order.values():
        for a, b in zip(residues(rs), residues_alt(rs)):
            assert abs(a - b) < rs.tol


def test_product_3_minus_2x_is_31(roots3):
    prod = roots3.ctx.fprod(3 - 2 * x for x in roots3.roots)
    assert abs(prod - 31) < 1e-20


def test_residues_reproduce_series(roots_by_order):
    # 1/(1 - x - x^N) = sum r_k / (x - x_k): Taylor coefficient m is -sum r_k x_k^-(m+1)
    for order, rs in roots_by_order.items():
        ref = kappa_ref(order, 30)
        for m in range(25):
            coeff = -sum(r / x ** (m + 1) for r, x in zip(residues(rs), rs.roots))
            assert abs(coeff - ref[m + 1]) < 1e-30


def test_fibonacci_first_term_via_partial_fractions():
    rs = find_roots(2)
    assert term_float(RecurrenceSpec(2, (0, 1)), rs, 1).value == 1


# --- D_n ------------------------------------------------------------------

def test_D_examples(roots3, roots_by_order):
    assert abs(D(roots3, 14) - 129) < 1e-10
    assert abs(D(roots_by_order[2], 0) - 1) < 1e-10
    assert abs(D(roots_by_order[5], 30) - kappa(5, 31)) < 1e-8


def test_D_equals_shifted_kappa(roots_by_order):
    for order, rs in roots_by_order.items():
        ref = kappa_ref(order, 62)
        for n in range(0, 60):
            assert abs(D(rs, n) - ref[n + 1]) < 1e-30
        for n in range(1, order):
            assert abs(D(rs, -n)) < 1e-40


def test_D_domain(roots3):
    with pytest.raises(IndexRangeError):
        D(roots3, -3)


# --- term_float -------------------------------------------------------------

def test_term_float_examples(roots3):
    rs2 = find_roots(2)
    assert term_float(RecurrenceSpec(2, (0, 1)), rs2, 40).value == 102334155
    r = term_float(RecurrenceSpec(3, (0, 1, 2)), roots3, 16)
    assert r.value == 318 and r.confident and r.distance < 1e-50
    assert term_float(RecurrenceSpec(3, (0, 1, 2)), roots3, 0).value == 0


def test_term_float_cross_backend(roots_by_order):
    for order, init in WORKED_SPECS:
        spec = RecurrenceSpec(order, init)
        rs = roots_by_order[order]
        for n in range(61):
            r = term_float(spec, rs, n)
            assert r.confident and r.distance < 0.25
            assert r.value == term(spec, n)


def test_term_float_flags_low_confidence(roots3):
    spec = RecurrenceSpec(3, (0, 1, 2))
    r = term_float(spec, roots3, 2000)
    assert not r.confident
    with pytest.raises(PrecisionError):
        r.require()


def test_term_float_order_mismatch(roots3):
    with pytest.raises(OrderMismatchError):
        term_float(RecurrenceSpec(2, (0, 1)), roots3, 4)


def test_safe_bound_is_honest():
    assert safe_index_bound(2, 256) >= 300
    for order in (2, 3, 5):
        bound = safe_index_bound(order, 256)
        rs = find_roots(order)
        spec = RecurrenceSpec(order, (1,) * order)
        r = term_float(spec, rs, bound)
        assert r.confident and r.value == term(spec, bound)


# --- Binet / Fibonacci floor -------------------------------------------------

def test_binet_examples():
    assert binet(40) == 102334155
    assert binet(0) == 0 and binet(1) == 1
    fib = RecurrenceSpec(2, (0, 1))
    assert binet(90) == term(fib, 90)
    for n in range(301):
        r = binet_rounded(n)
        assert r.confident and r.value == term(fib, n)


def test_binet_precision_exceeded():
    with pytest.raises(PrecisionError):
        binet(1000)
    assert binet(1000, FloatConfig(precision=1024)) == term(RecurrenceSpec(2, (0, 1)), 1000)


def test_fib_floor():
    fib = RecurrenceSpec(2, (0, 1))
    assert fib_floor(40) == 102334155
    assert fib_floor(0) == 0
    assert fib_floor(200) == term(fib, 200)
    assert [fib_floor(n) for n in range(50)] == iterate(2, (0, 1), 50)
    with pytest.raises(PrecisionError):
        fib_floor(2000)


# --- Chebyshev and p_n --------------------------------------------------------

def test_chebyshev_low_degrees():
    x = HP.mpf("0.3")
    assert chebyshev_t(0, x) == 1
    assert chebyshev_t(3, x) == pytest.approx(float(4 * x ** 3 - 3 * x))
    assert chebyshev_t(5, x) == pytest.approx(float(16 * x ** 5 - 20 * x ** 3 + 5 * x))


@settings(max_examples=100, deadline=None)
@given(n=st.integers(0, 30), x=st.floats(-1, 1))
def test_chebyshev_parity_and_bound(n, x):
    t = chebyshev_t(n, x)
    assert chebyshev_t(n, -x) == pytest.approx((-1) ** n * t, abs=1e-9)
    assert abs(t) <= 1 + 1e-9
    assert t == pytest.approx(math.cos(n * math.acos(x)), abs=1e-8)


def test_p_examples(roots3):
    assert abs(p(roots3, 0) - 3) < 1e-40
    assert abs(p(roots3, 1) - 1) < 1e-40
    assert p(roots3, 16, "floor") == 453


def test_p_routes_agree(roots3):
    for n in range(0, 61):
        a = p(roots3, n, "root-products")
        b = p(roots3, n, "chebyshev")
        assert abs(a - b) < 1e-8
        if n > 10:
            assert abs(p(roots3, n, "floor") - a) < 1e-8


def test_p_is_power_sum_of_reciprocals(roots3):
    # x1 x2 = 1/x3 etc., so p_n = sum eps_k^n with eps_k roots of x^3 - x^2 - 1
    ref = [3, 1, 1]
    for n in range(3, 40):
        ref.append(ref[n - 1] + ref[n - 3])
    for n in range(40):
        assert abs(p(roots3, n) - ref[n]) < 1e-40


def test_p_floor_domain(roots3):
    with pytest.raises(IndexRangeError):
        p(roots3, 10, "floor")
    with pytest.raises(ValueError):
        p(roots3, 12, "bogus")
    with pytest.raises(OrderMismatchError):
        p(find_roots(4), 12)


def test_floor_validity_window(roots3):
    d = roots3.delta_value
    for n in range(11, 121):
        assert abs(p(roots3, n) - (d ** 2 + 1) ** n) < 0.25


def test_floor_rounding_below_threshold_is_empirical(roots3):
    # outside the proven range the rounding is not guaranteed; pin what happens
    nint = roots3.ctx.nint
    misses = [m for m in range(0, 11) if round_eps_power(roots3, m) != int(nint(p(roots3, m)))]
    assert misses == [0, 2, 3, 5]
    assert all(round_eps_power(roots3, m) == int(nint(p(roots3, m))) for m in range(6, 400))


def test_q_identity(roots3):
    for n in range(41):
        lhs = q_explicit(roots3, n)
        rhs = p(roots3, n + 1) - p(roots3, n + 2)
        assert abs(lhs - rhs) < 1e-10


def test_D_via_p(roots3):
    assert abs(D_N3_via_p(roots3, 2) - 1) < 1e-10
    assert abs(D_N3_via_p(roots3, 15) - 189) < 1e-8
    for n in range(0, 40):
        assert abs(D_N3_via_p(roots3, n, "chebyshev") - D(roots3, n)) < 1e-30


def test_term_via_p(roots3):
    assert term_N3_via_p(roots3, 3).value == 2
    spec = RecurrenceSpec(3, (0, 1, 2))
    for n in range(2, 60):
        r = term_N3_via_p(roots3, n)
        assert r.confident and r.value == term_float(spec, roots3, n).value == term(spec, n)


# --- N=3 floor formulas -------------------------------------------------------

def test_eps_power_pins(roots3):
    assert [round_eps_power(roots3, m) for m in (17, 16, 15, 14)] == [664, 453, 309, 211]


def test_term_floor_examples(roots3):
    assert (6 * 664 + 4 * 453 + 7 * 309 + 9 * 211) == 31 * 318
    assert term_floor_N3(16) == 318
    assert kappa_floor_N3(16) == 189
    assert term_floor_N3(11, roots3) == iterate(3, (0, 1, 2), 12)[11] == 47


def test_floor_formulas_exact_range(roots3):
    ref = iterate(3, (0, 1, 2), 122)
    kref = kappa_ref(3, 122)
    for n in range(11, 121):
        assert term_floor_N3(n, roots3) == ref[n]
        assert kappa_floor_N3(n, roots3) == kref[n]


def test_floor_formula_domain():
    with pytest.raises(IndexRangeError):
        term_floor_N3(10)
    with pytest.raises(IndexRangeError):
        kappa_floor_N3(3)


def test_floor_formula_refuses_past_precision(roots3):
    with pytest.raises(PrecisionError):
        term_floor_N3(2000, roots3)


def test_floor_mod31_detects_corruption(roots3, monkeypatch):
    import auxseq.closed_form as cf

    real = cf.round_eps_power
    monkeypatch.setattr(cf, "round_eps_power", lambda rs, m: real(rs, m) + (m == 17))
    with pytest.raises(PrecisionError) as info:
        cf.term_floor_N3(16, roots3)
    assert info.value.distance == 6
