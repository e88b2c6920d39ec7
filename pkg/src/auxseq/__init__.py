"""Terms of a_n = a_{n-1} + a_{n-N} by exact ring exponentiation.

The exact path raises 1/delta = delta^(N-1) + 1 to the n-th power in
Z[delta]/(delta^N + delta - 1) and reads the answer off the coefficients.
Float closed forms and plain iteration are provided for cross-checking.
"""

from .closed_form import (
    FloatConfig,
    RootSet,
    Rounded,
    D,
    binet,
    fib_floor,
    find_roots,
    kappa_floor_N3,
    term_float,
    term_floor_N3,
)
from .errors import (
    ConvergenceError,
    IndexRangeError,
    InvalidOrderError,
    OrderMismatchError,
    PrecisionError,
    RecurrenceError,
    TooLargeToExpand,
)
from .kernels import BACKEND
from .oracle import (
    GeneralRecurrenceSpec,
    RationalSeries,
    genfunc,
    genfunc_general,
    naive_term,
    series_coeff,
)
from .ring import (
    RingElement,
    base_element,
    count_multiplications,
    kappa,
    kappa_window,
    ring_mul,
    ring_pow,
)
from .sequence import (
    FactoredInteger,
    MultiplicativeSpec,
    RecurrenceSpec,
    term,
    term_multiplicative,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConvergenceError",
    "D",
    "FactoredInteger",
    "FloatConfig",
    "GeneralRecurrenceSpec",
    "IndexRangeError",
    "InvalidOrderError",
    "MultiplicativeSpec",
    "OrderMismatchError",
    "PrecisionError",
    "RationalSeries",
    "RecurrenceError",
    "RecurrenceSpec",
    "RingElement",
    "RootSet",
    "Rounded",
    "TooLargeToExpand",
    "base_element",
    "binet",
    "count_multiplications",
    "fib_floor",
    "find_roots",
    "genfunc",
    "genfunc_general",
    "kappa",
    "kappa_floor_N3",
    "kappa_window",
    "naive_term",
    "ring_mul",
    "ring_pow",
    "series_coeff",
    "term",
    "term_float",
    "term_floor_N3",
    "term_multiplicative",
]
