"""Command-line front end.

    auxseq term   --N 2 --init 0,1 --n 40
    auxseq kappa  --N 3 --n 16
    auxseq table  --N 3 --init 0,1,2 --n 0..20 --output csv
    auxseq verify                       # every worked example, n = 0..200
    auxseq bench  --N 3 --init 0,1,2 --n 100000
    auxseq roots  --N 5

Exit status: 0 ok, 1 usage error, 2 backends disagree, 3 precision error.

Method ``auto`` always picks ``ring`` for exact answers. With ``--fast`` it
picks ``floor`` for N=3, alpha=(0,1,2), n > 10 (and Fibonacci), else
``float`` when n is inside the precision-safe bound, else ``ring``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Callable, Iterable

import mpmath

from . import closed_form as cf
from .errors import PrecisionError, RecurrenceError
from .kernels import BACKEND
from .oracle import (
    GeneralRecurrenceSpec,
    genfunc,
    genfunc_general,
    naive_table,
    naive_term,
    series_coeff,
    series_table,
)
from .ring import count_multiplications, kappa
from .sequence import (
    DEFAULT_MAX_DIGITS,
    FactoredInteger,
    MultiplicativeSpec,
    RecurrenceSpec,
    term,
    term_multiplicative,
)

EXIT_OK, EXIT_USAGE, EXIT_DIVERGED, EXIT_PRECISION = 0, 1, 2, 3

METHODS = ("auto", "ring", "naive", "series", "float", "floor", "binet")
CHUNK_DIGITS = 10_000
CHUNK_WIDTH = 100
DIRECT_PRODUCT_BITS = 100_000

# the worked examples: (N, initials, multiplicative)
WORKED_SPECS = (
    (2, (0, 1), False),
    (3, (0, 1, 2), False),
    (3, (1, 2, 3), True),
    (4, (0, 1, 2, 3), False),
    (4, (1, 1, 1, 1), False),
    (5, (0, 1, 2, 1, 1), False),
)


class UsageError(RecurrenceError):
    pass


class Diverged(RecurrenceError):
    def __init__(self, message, detail):
        super().__init__(message)
        self.detail = detail


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _index_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an index or lo..hi, got {text!r}")
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad index range {text!r}")
    return lo, hi


def _default_precision() -> int:
    env = os.environ.get("RECUR_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return 256


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="auxseq", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--N", type=int, dest="order", help="order gap N")
    common.add_argument("--init", type=_int_list, help="initial values, comma separated "
                        "(use --init=-1,2 for a leading minus)")
    common.add_argument("--weights", type=_int_list,
                        help="A_1..A_N for a_{n+N} = sum A_u a_{n+N-u}")
    common.add_argument("--multiplicative", action="store_true",
                        help="a_n = a_{n-1} * a_{n-N}")
    common.add_argument("--method", choices=METHODS, default="auto")
    common.add_argument("--output", choices=("plain", "csv", "json-lines"), default="plain")
    common.add_argument("--precision", type=int, default=_default_precision(),
                        help="working precision in bits (env RECUR_PRECISION)")
    common.add_argument("--fast", action="store_true",
                        help="let 'auto' pick a float/floor backend when safe")

    p = sub.add_parser("term", parents=[common], help="a single term a_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--expand", action="store_true",
                   help="expand multiplicative results to a plain integer")
    p.add_argument("--max-digits", type=int, default=DEFAULT_MAX_DIGITS)

    p = sub.add_parser("kappa", parents=[common], help="auxiliary value kappa_n")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("table", parents=[common], help="rows n,value over a range")
    p.add_argument("--n", type=_index_range, required=True, metavar="LO..HI")

    p = sub.add_parser("verify", parents=[common], help="cross-check every backend")
    p.add_argument("--n", type=_index_range, default=(0, 200), metavar="LO..HI")

    p = sub.add_parser("bench", parents=[common], help="time each backend")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--trials", type=int, default=3)

    sub.add_parser("roots", parents=[common], help="zeros of x^N + x - 1")
    return parser


@dataclass
class _Spec:
    order: int
    initials: tuple[int, ...]
    weights: tuple[int, ...] | None = None
    multiplicative: bool = False

    @property
    def two_term(self) -> RecurrenceSpec:
        return RecurrenceSpec(self.order, self.initials)

    @property
    def general(self) -> GeneralRecurrenceSpec:
        return GeneralRecurrenceSpec(self.order, self.weights, self.initials)

    @property
    def is_fibonacci(self) -> bool:
        return self.weights is None and self.order == 2 and self.initials == (0, 1)

    @property
    def is_n3_example(self) -> bool:
        return self.weights is None and self.order == 3 and self.initials == (0, 1, 2)

    def label(self) -> str:
        parts = [f"N={self.order}", "init=" + ",".join(map(str, self.initials))]
        if self.weights is not None:
            parts.append("weights=" + ",".join(map(str, self.weights)))
        if self.multiplicative:
            parts.append("multiplicative")
        return " ".join(parts)


def _spec_from_args(args, require_init: bool = True) -> _Spec:
    if args.order is None:
        raise UsageError("--N is required")
    if args.order < 1 or (args.weights is None and args.order < 2):
        raise UsageError("--N must be >= 2 (>= 1 with --weights)")
    init = args.init
    if init is None:
        if require_init:
            raise UsageError("--init is required")
        init = (0,) + (1,) * (args.order - 1)
    if len(init) != args.order:
        raise UsageError(f"--init needs exactly {args.order} values")
    if args.weights is not None:
        if args.multiplicative:
            raise UsageError("--weights and --multiplicative are exclusive")
        if len(args.weights) != args.order or args.weights[-1] == 0:
            raise UsageError(f"--weights needs {args.order} values with A_N != 0")
    if args.multiplicative and any(a < 1 for a in init):
        raise UsageError("multiplicative initial values must be >= 1")
    return _Spec(args.order, tuple(init), args.weights, args.multiplicative)


def _resolve_method(spec: _Spec, method: str, n: int, precision: int, fast: bool) -> str:
    if spec.weights is not None:
        allowed = ("naive", "series")
        if method == "auto":
            return "series"
    elif spec.multiplicative:
        allowed = ("ring", "naive")
        if method == "auto":
            return "ring"
    else:
        allowed = ("ring", "naive", "series", "float")
        if spec.is_n3_example or spec.is_fibonacci:
            allowed += ("floor",)
        if spec.is_fibonacci:
            allowed += ("binet",)
        if method == "auto":
            if fast:
                if spec.is_fibonacci or (spec.is_n3_example and n > cf.FLOOR_MIN_INDEX):
                    if n <= cf.safe_index_bound(spec.order, precision):
                        return "floor"
                if n <= cf.safe_index_bound(spec.order, precision):
                    return "float"
            return "ring"
    if method not in allowed:
        raise UsageError(f"method {method!r} does not apply to {spec.label()}; "
                         f"choose from {', '.join(allowed)}")
    return method


class _Backends:
    """Lazily-built root sets shared by one command."""

    def __init__(self, precision: int) -> None:
        self.cfg = cf.FloatConfig(precision=precision)
        self._roots: dict[int, cf.RootSet] = {}

    def roots(self, order: int) -> cf.RootSet:
        if order not in self._roots:
            self._roots[order] = cf.find_roots(order, self.cfg)
        return self._roots[order]

    def additive(self, spec: _Spec, method: str, n: int) -> tuple[int, str | None]:
        """Value and optional residual string."""
        if method == "series":
            series = genfunc_general(spec.general) if spec.weights else genfunc(spec.two_term)
            return series_coeff(series, n), None
        if method == "naive":
            return naive_term(spec.general if spec.weights else spec.two_term, n), None
        if method == "ring":
            return term(spec.two_term, n), None
        if method == "float":
            r = cf.term_float(spec.two_term, self.roots(spec.order), n)
            return r.require(f"a_{n}"), f"{r.distance:.3e}"
        if method == "binet":
            r = cf.binet_rounded(n, self.cfg)
            return r.require(f"F_{n}"), f"{r.distance:.3e}"
        if method == "floor":
            if spec.is_fibonacci:
                return cf.fib_floor(n, self.cfg), None
            if n <= cf.FLOOR_MIN_INDEX:
                raise UsageError(f"floor method needs n > {cf.FLOOR_MIN_INDEX}")
            return cf.term_floor_N3(n, self.roots(3)), None
        raise UsageError(f"unknown method {method!r}")

    def multiplicative(self, spec: _Spec, method: str, n: int) -> FactoredInteger:
        mspec = MultiplicativeSpec(spec.order, spec.initials)
        if method == "ring":
            return term_multiplicative(mspec, n)
        exps = []
        for slot in range(spec.order):
            unit = [0] * spec.order
            unit[slot] = 1
            exps.append(naive_term(RecurrenceSpec(spec.order, tuple(unit)), n))
        return FactoredInteger(tuple(zip(spec.initials, exps)))


class _Writer:
    def __init__(self, mode: str, out) -> None:
        self.mode = mode
        self.out = out
        self._header = False

    def line(self, text: str) -> None:
        self.out.write(text + "\n")

    def json(self, obj) -> None:
        self.out.write(json.dumps(obj, sort_keys=False) + "\n")

    def value(self, n: int, value: int, method: str, residual: str | None = None,
              single: bool = False) -> None:
        text = str(value)
        digits = len(text.lstrip("-"))
        if self.mode == "json-lines":
            obj = {"n": n, "value": text, "digits": digits, "method": method}
            if residual is not None:
                obj["residual"] = residual
            self.json(obj)
        elif self.mode == "csv":
            if not self._header:
                self.line("n,value,method")
                self._header = True
            self.line(f"{n},{text},{method}")
        else:
            body = text
            if digits > CHUNK_DIGITS:
                body = "\n".join(text[i:i + CHUNK_WIDTH]
                                 for i in range(0, len(text), CHUNK_WIDTH))
                body += f"\n({digits} digits)"
            self.line(body if single else f"{n}\t{body}")


def _cmd_term(args, w: _Writer) -> int:
    spec = _spec_from_args(args)
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    method = _resolve_method(spec, args.method, args.n, args.precision, args.fast)
    be = _Backends(args.precision)
    if spec.multiplicative:
        fac = be.multiplicative(spec, method, args.n)
        expanded = fac.expand(args.max_digits) if args.expand else None
        if w.mode == "json-lines":
            obj = {"n": args.n, "value": str(fac), "method": method,
                   "factors": [[str(b), str(e)] for b, e in fac.merged()]}
            if expanded is not None:
                obj["value"] = str(expanded)
                obj["digits"] = len(str(expanded))
                obj["factored"] = str(fac)
            w.json(obj)
        elif w.mode == "csv":
            w.value(args.n, expanded if expanded is not None else fac, method)
        else:
            w.line(str(fac))
            if expanded is not None:
                text = str(expanded)
                if len(text) > CHUNK_DIGITS:
                    w.value(args.n, expanded, method, single=True)
                else:
                    w.line(text)
                    w.line(f"({len(text)} digits)")
        return EXIT_OK
    value, residual = be.additive(spec, method, args.n)
    w.value(args.n, value, method, residual, single=True)
    return EXIT_OK


def _cmd_kappa(args, w: _Writer) -> int:
    if args.order is None or args.order < 2:
        raise UsageError("--N >= 2 is required")
    n = args.n
    if n < 0:
        raise UsageError("--n must be >= 0")
    order = args.order
    method = args.method
    if method == "auto":
        method = "ring"
    kspec = _Spec(order, (0,) + (1,) * (order - 1))
    residual = None
    if method == "ring":
        value = kappa(order, n)
    elif method in ("naive", "series"):
        value, _ = _Backends(args.precision).additive(kspec, method, n)
    elif method == "float":
        rs = cf.find_roots(order, cf.FloatConfig(precision=args.precision))
        r = rs.round(cf.D(rs, n - 1))
        value, residual = r.require(f"kappa_{n}"), f"{r.distance:.3e}"
    elif method == "floor":
        if order != 3:
            raise UsageError("floor method for kappa needs N=3")
        if n <= cf.FLOOR_MIN_INDEX:
            raise UsageError(f"floor method needs n > {cf.FLOOR_MIN_INDEX}")
        rs = cf.find_roots(3, cf.FloatConfig(precision=args.precision))
        value = cf.kappa_floor_N3(n, rs)
    else:
        raise UsageError(f"method {method!r} does not apply to kappa")
    w.value(n, value, method, residual, single=True)
    return EXIT_OK


def _cmd_table(args, w: _Writer) -> int:
    spec = _spec_from_args(args)
    lo, hi = args.n
    be = _Backends(args.precision)
    if spec.multiplicative:
        method = _resolve_method(spec, args.method, hi, args.precision, args.fast)
        for n in range(lo, hi + 1):
            fac = be.multiplicative(spec, method, n)
            if w.mode == "json-lines":
                w.json({"n": n, "value": str(fac), "method": method})
            elif w.mode == "csv":
                w.value(n, fac, method)
            else:
                w.line(f"{n}\t{fac}")
        return EXIT_OK
    method = _resolve_method(spec, args.method, hi, args.precision, args.fast)
    if method in ("naive", "series"):
        if method == "naive":
            rows = naive_table(spec.general if spec.weights else spec.two_term, hi + 1)
        else:
            series = genfunc_general(spec.general) if spec.weights else genfunc(spec.two_term)
            rows = series_table(series, hi + 1)
        for n in range(lo, hi + 1):
            w.value(n, rows[n], method)
        return EXIT_OK
    for n in range(lo, hi + 1):
        m = method
        if m == "floor" and spec.is_n3_example and n <= cf.FLOOR_MIN_INDEX:
            m = "ring"
        value, residual = be.additive(spec, m, n)
        w.value(n, value, m, residual)
    return EXIT_OK


def _verify_spec(spec: _Spec, lo: int, hi: int, be: _Backends) -> list[str]:
    """Raise Diverged on the first disagreement; return the backend names used."""
    if spec.multiplicative:
        mspec = MultiplicativeSpec(spec.order, spec.initials)
        # direct products only while they stay small
        direct = list(spec.initials)
        for n in range(spec.order, hi + 1):
            nxt = direct[n - 1] * direct[n - spec.order]
            if nxt.bit_length() > DIRECT_PRODUCT_BITS:
                break
            direct.append(nxt)
        for n in range(lo, hi + 1):
            ring_f = term_multiplicative(mspec, n)
            naive_f = be.multiplicative(spec, "naive", n)
            if ring_f.factors != naive_f.factors:
                raise Diverged(f"{spec.label()}: exponents differ at n={n}",
                               {"n": n, "ring": str(ring_f), "naive": str(naive_f)})
            if n < len(direct):
                if ring_f.expand() != direct[n]:
                    raise Diverged(f"{spec.label()}: product differs at n={n}",
                                   {"n": n, "ring": str(ring_f.expand()),
                                    "direct": str(direct[n])})
        return ["ring", "naive", "direct"]

    if spec.weights is not None:
        naive = naive_table(spec.general, hi + 1)
        series = series_table(genfunc_general(spec.general), hi + 1)
        for n in range(lo, hi + 1):
            if naive[n] != series[n]:
                raise Diverged(f"{spec.label()}: backends differ at n={n}",
                               {"n": n, "naive": str(naive[n]), "series": str(series[n])})
        return ["naive", "series"]

    rspec = spec.two_term
    naive = naive_table(rspec, hi + 1)
    series = series_table(genfunc(rspec), hi + 1)
    bound = cf.safe_index_bound(spec.order, be.cfg.precision)
    used = ["ring", "naive", "series"]
    if lo <= bound:
        used.append("float")
    if spec.is_fibonacci:
        used += ["binet", "floor"]
    elif spec.is_n3_example and hi > cf.FLOOR_MIN_INDEX:
        used.append("floor")
    for n in range(lo, hi + 1):
        values = {"ring": term(rspec, n), "naive": naive[n], "series": series[n]}
        if n <= bound:
            values["float"] = be.additive(spec, "float", n)[0]
            if spec.is_fibonacci:
                values["binet"] = be.additive(spec, "binet", n)[0]
                values["floor"] = be.additive(spec, "floor", n)[0]
        if spec.is_n3_example and n > cf.FLOOR_MIN_INDEX and n <= bound:
            values["floor"] = be.additive(spec, "floor", n)[0]
        if len(set(values.values())) != 1:
            raise Diverged(f"{spec.label()}: backends differ at n={n}",
                           {"n": n, **{k: str(v) for k, v in values.items()}})
    return used


def _cmd_verify(args, w: _Writer) -> int:
    lo, hi = args.n
    if args.order is None:
        specs = [_Spec(N, init, None, mult) for N, init, mult in WORKED_SPECS]
    else:
        specs = [_spec_from_args(args)]
    be = _Backends(args.precision)
    for spec in specs:
        used = _verify_spec(spec, lo, hi, be)
        if w.mode == "json-lines":
            w.json({"spec": spec.label(), "n": [lo, hi], "backends": used, "status": "agree"})
        elif w.mode == "csv":
            pass
        else:
            w.line(f"{spec.label()} n={lo}..{hi}: {', '.join(used)} agree")
    if w.mode == "json-lines":
        w.json({"status": "agree", "specs": len(specs)})
    elif w.mode == "csv":
        w.line("spec,lo,hi,status")
        for spec in specs:
            w.line(f"{spec.label()},{lo},{hi},agree")
    else:
        w.line("all backends agree")
    return EXIT_OK


def _time(fn: Callable[[], object], trials: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(max(1, trials)):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def _cmd_bench(args, w: _Writer) -> int:
    spec = _spec_from_args(args, require_init=False)
    if spec.multiplicative or spec.weights is not None:
        raise UsageError("bench supports the additive two-term recursion only")
    n = args.n
    be = _Backends(args.precision)
    if args.method == "auto":
        methods = ["ring", "naive", "series"]
        if n <= cf.safe_index_bound(spec.order, args.precision):
            methods.append("float")
            if spec.is_fibonacci or (spec.is_n3_example and n > cf.FLOOR_MIN_INDEX):
                methods.append("floor")
            if spec.is_fibonacci:
                methods.append("binet")
    else:
        methods = [_resolve_method(spec, args.method, n, args.precision, False)]
    if "float" in methods or "floor" in methods:
        be.roots(spec.order)
    if w.mode == "plain":
        w.line(f"# kernels={BACKEND} {spec.label()} n={n} trials={args.trials}")
    elif w.mode == "csv":
        w.line("method,seconds,ring_mults,digits")
    for method in methods:
        with count_multiplications() as counter:
            secs, result = _time(lambda: be.additive(spec, method, n)[0], args.trials)
        mults = counter.total // max(1, args.trials)
        digits = len(str(abs(result))) if result.bit_length() < 200_000 else \
            int(result.bit_length() * 0.30103) + 1
        if w.mode == "json-lines":
            w.json({"method": method, "n": n, "seconds": f"{secs:.6f}",
                    "ring_mults": mults, "digits": digits, "kernels": BACKEND})
        elif w.mode == "csv":
            w.line(f"{method},{secs:.6f},{mults},{digits}")
        else:
            w.line(f"{method:<8}{secs:>12.6f} s{mults:>8} ring mults{digits:>10} digits")
    return EXIT_OK


def _cmd_roots(args, w: _Writer) -> int:
    if args.order is None or args.order < 2:
        raise UsageError("--N >= 2 is required")
    rs = cf.find_roots(args.order, cf.FloatConfig(precision=args.precision))
    digits = max(15, int(args.precision * 0.30103) - 5)
    residuals = rs.residuals()
    if w.mode == "csv":
        w.line("k,real,imag,residual,delta")
    for k, (x, r) in enumerate(zip(rs.roots, residuals)):
        re_s = mpmath.nstr(x.real, digits, min_fixed=-1, max_fixed=2)
        im_s = mpmath.nstr(x.imag, digits, min_fixed=-1, max_fixed=2)
        res_s = mpmath.nstr(r, 5)
        is_delta = k == rs.delta
        if w.mode == "json-lines":
            w.json({"k": k, "real": re_s, "imag": im_s, "residual": res_s,
                    "delta": is_delta})
        elif w.mode == "csv":
            w.line(f"{k},{re_s},{im_s},{res_s},{int(is_delta)}")
        else:
            mark = "  <- delta" if is_delta else ""
            w.line(f"x_{k} = {re_s} {'+' if x.imag >= 0 else '-'} "
                   f"{mpmath.nstr(abs(x.imag), digits, min_fixed=-1, max_fixed=2)}i"
                   f"   |p(x)| = {res_s}{mark}")
    return EXIT_OK


COMMANDS = {
    "term": _cmd_term,
    "kappa": _cmd_kappa,
    "table": _cmd_table,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
    "roots": _cmd_roots,
}


def run(argv: Iterable[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if hasattr(sys, "set_int_max_str_digits"):
        # values routinely exceed the default 4300-digit str() guard
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    w = _Writer(args.output, out)

    def fail(code: int, kind: str, message: str, detail=None) -> int:
        if args.output == "json-lines":
            obj = {"error": kind, "message": message}
            if detail:
                obj["detail"] = detail
            w.json(obj)
        else:
            err.write(f"auxseq: {message}\n")
        return code

    try:
        return COMMANDS[args.verb](args, w)
    except Diverged as exc:
        return fail(EXIT_DIVERGED, "divergence", str(exc), exc.detail)
    except PrecisionError as exc:
        detail = {"distance": str(exc.distance)} if exc.distance is not None else None
        return fail(EXIT_PRECISION, "precision", str(exc), detail)
    except (RecurrenceError, ValueError) as exc:
        return fail(EXIT_USAGE, "usage", str(exc))


def main(argv: Iterable[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
