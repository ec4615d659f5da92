"""Command-line front end.

JSON results go to stdout (or ``--out``), diagnostics to stderr.  Exact
values are rational strings, floats use ``repr`` (shortest round-trip form)
and complex numbers are ``[re, im]`` pairs.

Exit codes: 0 success, 1 bad input, 2 numerical non-convergence, 3 a
verification suite found a counterexample.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from . import current as cur
from . import fock
from . import group as grp
from . import operators as ops
from . import vacuum as vac
from . import verify
from .errors import ConvergenceError, ValidationError
from .poly import rat_str, to_rat

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for non-convergence here
    def error(self, message: str):
        raise ValidationError(f"{self.prog}: {message}")


def load_payload(text: str) -> Any:
    """Inline JSON, ``@path``, or the path of an existing file."""
    if text.startswith("@"):
        path = text[1:]
    elif os.path.isfile(text):
        path = text
    else:
        path = None
    try:
        if path is not None:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(text)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON payload: {exc}") from exc


def parse_list(text: str) -> list:
    """A JSON array or a comma-separated list."""
    text = text.strip()
    if text.startswith("["):
        data = load_payload(text)
        if not isinstance(data, list):
            raise ValidationError("expected a JSON array")
        return data
    return [x.strip() for x in text.split(",") if x.strip()]


def real(text: str) -> float:
    # accepts rationals such as 1/3 as well as decimals
    return float(to_rat(text))


def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def element(data: Any, n: int | None) -> grp.GroupElement:
    coeffs = data.get("coeffs") if isinstance(data, dict) else None
    if n is not None and isinstance(coeffs, list) and len(coeffs) != n + 1:
        raise ValidationError(f"expected {n + 1} coefficients for N={n}, got {len(coeffs)}")
    g = grp.GroupElement.from_json(data, n)
    if n is not None and g.bound != n:
        raise ValidationError(f"payload has bound {g.bound}, expected {n}")
    return g


def element_out(g: grp.GroupElement) -> dict:
    return {"u": rat_str(g.u), "coeffs": [rat_str(c) for c in g.poly.coeffs]}


# -- subcommands -------------------------------------------------------------


def cmd_compose(args) -> Any:
    g1, g2 = element(load_payload(args.lhs), args.n), element(load_payload(args.rhs), args.n)
    return element_out(grp.compose(g1, g2))


def cmd_sigma(args) -> Any:
    g1, g2 = element(load_payload(args.lhs), args.n), element(load_payload(args.rhs), args.n)
    fn = grp.sigma_closed if args.closed else grp.sigma
    return rat_str(fn(g1, g2))


def cmd_tw_matrix(args) -> Any:
    if args.inverse:
        m = ops.t_inverse(args.w, args.n)
    elif args.power is not None:
        m = ops.t_power_closed(args.w, args.power, args.n)
    else:
        m = ops.t_matrix(args.w, args.n)
    return m.to_json()


def cmd_su_matrix(args) -> Any:
    return ops.s_matrix(args.u, args.n).to_json()


def cmd_charfn(args) -> Any:
    heis = [args.A, args.B, args.C, args.t]
    if args.u is not None or args.poly is not None:
        if any(x is not None for x in heis):
            raise ValidationError("give either --A --B --C --t or --u --poly, not both")
        if args.u is None or args.poly is None:
            raise ValidationError("--u and --poly go together")
        g = grp.GroupElement.make(args.u, parse_list(args.poly))
        if args.method == "oracle":
            return complex_pair(fock.oracle_charfn(*g.to_floats(), args.dim))
        if args.method == "closed":
            raise ValidationError("--method closed needs the --A --B --C --t form")
        return complex_pair(vac.charfn_general(g, _spec(args)))
    if any(x is None for x in heis):
        raise ValidationError("charfn needs --A --B --C --t (or --u --poly)")
    a, b, c, t = (real(x) for x in heis)
    if args.method == "closed":
        return complex_pair(vac.charfn_heis2(a, b, c, t))
    u, coeffs = vac.heis2_to_group(a, b, c, t)
    if args.method == "oracle":
        return complex_pair(fock.oracle_charfn(u, coeffs, args.dim))
    return complex_pair(vac.charfn_general((u, coeffs), _spec(args)))


def _spec(args) -> vac.QuadratureSpec:
    return vac.QuadratureSpec(nodes=args.nodes)


def cmd_moments(args) -> Any:
    if args.max_n < 0:
        raise ValidationError("--max-n must be non-negative")
    fn = vac.moments_oracle if args.oracle else vac.moments_heis2
    a, b, c = real(args.A), real(args.B), real(args.C)
    return [fn(a, b, c, n) for n in range(args.max_n + 1)]


def _triple(text: str) -> tuple[float, float, float]:
    vals = parse_list(text)
    if len(vals) != 3:
        raise ValidationError(f"expected three values a,b,g, got {text!r}")
    return tuple(real(str(v)) for v in vals)  # type: ignore[return-value]


def cmd_overlap(args) -> Any:
    p1, p2, t = _triple(args.p1), _triple(args.p2), real(args.t)
    if args.oracle:
        h1 = t * fock.heis2_observable(*p1, args.dim)
        h2 = t * fock.heis2_observable(*p2, args.dim)
        return complex_pair(fock.oracle_overlap(h1, h2))
    return complex_pair(vac.overlap_heis2(p1, p2, t))


def cmd_current_compose(args) -> Any:
    e1 = cur.CurrentElement.from_json(load_payload(args.lhs), args.n)
    e2 = cur.CurrentElement.from_json(load_payload(args.rhs), args.n)
    if args.closed:
        return cur.galilei_compose_closed(e1, e2).to_json()
    return cur.current_compose(e1, e2).to_json()


def cmd_verify(args) -> Any:
    if args.cases < 1:
        raise ValidationError("--cases must be positive")
    report = verify.run_suite(args.suite, args.seed, args.cases)
    for f in report.failures:
        print(f"FAIL {args.suite} case {f.case}: {f.identity}", file=sys.stderr)
    return report


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heispoly", description="Polynomial Heisenberg group toolkit.")
    p.add_argument("--out", help="write the JSON result to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def pair(name: str, fn, help: str):
        s = sub.add_parser(name, help=help)
        s.add_argument("--n", type=int, required=True, help="degree bound N")
        s.add_argument("--lhs", required=True, help="JSON payload, @file or file path")
        s.add_argument("--rhs", required=True, help="JSON payload, @file or file path")
        s.set_defaults(func=fn)
        return s

    pair("compose", cmd_compose, "compose two group elements")
    pair("sigma", cmd_sigma, "scalar phase of a product").add_argument(
        "--closed", action="store_true", help="use the explicit double-sum formula"
    )

    s = sub.add_parser("tw-matrix", help="matrix of T_w, its inverse or T(w)^k")
    s.add_argument("--w", type=to_rat, required=True)
    s.add_argument("--n", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--inverse", action="store_true")
    g.add_argument("--power", type=int, metavar="K")
    s.set_defaults(func=cmd_tw_matrix)

    s = sub.add_parser("su-matrix", help="matrix of the shift S_u")
    s.add_argument("--u", type=to_rat, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_su_matrix)

    s = sub.add_parser("charfn", help="vacuum characteristic function")
    for flag in ("--A", "--B", "--C", "--t"):
        s.add_argument(flag)
    s.add_argument("--u", help="momentum coefficient of a general element")
    s.add_argument("--poly", help="coefficients of P', e.g. 0,1/2,1 or a JSON array")
    s.add_argument("--method", choices=("closed", "quadrature", "oracle"), default=None)
    s.add_argument("--nodes", type=int, default=200, help="initial quadrature nodes")
    s.add_argument("--dim", type=int, default=128, help="Fock truncation for --method oracle")
    s.set_defaults(func=cmd_charfn)

    s = sub.add_parser("moments", help="vacuum moments E[X^n], n = 0..max-n")
    for flag in ("--A", "--B", "--C"):
        s.add_argument(flag, required=True)
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--oracle", action="store_true", help="compute on a Fock truncation instead")
    s.set_defaults(func=cmd_moments)

    s = sub.add_parser("overlap", help="overlap of two evolved vacua")
    s.add_argument("--p1", required=True, help="a,b,g of the first observable")
    s.add_argument("--p2", required=True, help="a,b,g of the second observable")
    s.add_argument("--t", required=True)
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--dim", type=int, default=256)
    s.set_defaults(func=cmd_overlap)

    pair("current-compose", cmd_current_compose, "compose two step-function elements").add_argument(
        "--closed", action="store_true", help="use the N = 2 pairing formula"
    )

    s = sub.add_parser("verify", help="run a randomized identity suite")
    s.add_argument("--suite", choices=verify.SUITES, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=100)
    s.set_defaults(func=cmd_verify)
    return p


def _default_method(args) -> None:
    if getattr(args, "func", None) is cmd_charfn and args.method is None:
        args.method = "quadrature" if args.u is not None or args.poly is not None else "closed"


def emit(result: Any, out: str | None) -> None:
    text = json.dumps(result, allow_nan=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _default_method(args)
        result = args.func(args)
        code = EXIT_OK
        if isinstance(result, verify.SuiteReport):
            code = EXIT_OK if result.passed else EXIT_VERIFY
            result = result.to_json()
        emit(result, args.out)
        return code
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
