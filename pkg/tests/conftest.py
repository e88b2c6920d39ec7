import pytest

from auxseq import kernels
from auxseq.closed_form import find_roots

# (N, initials) of the additive worked examples, plus the additive image of
# the multiplicative one (log-lift initial values are not integers, so the
# exponent spec with the same recursion stands in for it)
WORKED_SPECS = [
    (2, (0, 1)),
    (3, (0, 1, 2)),
    (3, (1, 2, 3)),
    (4, (0, 1, 2, 3)),
    (4, (1, 1, 1, 1)),
    (5, (0, 1, 2, 1, 1)),
]


def iterate(order, initials, count):
    """Independent reference: list a_0..a_{count-1} of a_n = a_{n-1} + a_{n-N}."""
    out = list(initials)
    while len(out) < count:
        out.append(out[-1] + out[-order])
    return out[:count]


def kappa_ref(order, count):
    return iterate(order, [0] + [1] * (order - 1), count)


@pytest.fixture(scope="session")
def roots3():
    return find_roots(3)


@pytest.fixture(scope="session")
def roots_by_order():
    return {n: find_roots(n) for n in range(2, 9)}


KERNEL_BACKENDS = [pytest.param(kernels.python_backend, id="python")]
if kernels.compiled_backend is not None:
    KERNEL_BACKENDS.append(pytest.param(kernels.compiled_backend, id="cython"))


def pytest_configure(config):
    import sys

    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
