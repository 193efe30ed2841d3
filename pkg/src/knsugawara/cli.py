"""Command line front end: ``knsugawara {basis,tables,kappa,verify}``.

Exit codes: 0 success, 1 usage or parse error, 2 failed precondition
(non-unique basis element, critical level, insufficient depth), 3 failed
verification.  Every run writes one JSON document followed by a newline.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

from .cocycle import locality_bound, table_to_json, vectorfield_cocycle_table
from .errors import (
    BadDimension,
    CentralChargeMismatch,
    ConfigError,
    CriticalLevel,
    DegenerateForm,
    DepthExceeded,
    NonScalarDefect,
    NonUniqueElement,
    NotCohomologous,
    NotScalarOnAdjoint,
    OrderSlack,
)
from .findim import kappa, parse_algebra
from .funcfield import format_point
from .knbasis import KNBasisTable, PointConfig, almost_grading_bounds, bracket_constants, product_constants
from .representations import vacuum_module
from .sugawara import (
    SugawaraCoefficients,
    SugawaraOperator,
    central_charge,
    classical_virasoro_check,
    verify_current_commutator,
    verify_virasoro,
)

PRECONDITION = (NonUniqueElement, OrderSlack, CriticalLevel, DepthExceeded, NotScalarOnAdjoint, DegenerateForm)
VERIFICATION = (NonScalarDefect, NotCohomologous, CentralChargeMismatch)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like LO:HI, got {text!r}") from None


def _level(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad level {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="knsugawara", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=["basis", "tables", "kappa", "verify"])
    parser.add_argument("--config", type=Path, help="JSON file with point configuration and defaults")
    parser.add_argument("--algebra", help='"abelian:d" or "sl:n"')
    parser.add_argument("--level", type=_level)
    parser.add_argument("--depth", type=int)
    parser.add_argument("--nmax", type=int)
    parser.add_argument("--lambda", dest="lam", type=int)
    parser.add_argument("--window", type=_window)
    parser.add_argument("--out", type=Path)
    return parser


DEFAULTS = {"algebra": "sl:2", "level": Fraction(1), "depth": 4, "nmax": 2, "lam": -1, "window": None}


def resolve(args: argparse.Namespace) -> tuple[PointConfig, dict]:
    """Merge the config file with flags; flags win."""
    doc = {}
    if args.config is not None:
        try:
            doc = json.loads(args.config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
    config = PointConfig.from_json(doc) if "in" in doc or "out" in doc else PointConfig.classical()
    opts = dict(DEFAULTS)
    for key, conv in (("algebra", str), ("level", _level), ("depth", int), ("nmax", int), ("lambda", int)):
        if key in doc:
            try:
                opts["lam" if key == "lambda" else key] = conv(doc[key])
            except (TypeError, ValueError, argparse.ArgumentTypeError):
                raise ConfigError(f"bad value for {key!r}") from None
    if "window" in doc:
        try:
            opts["window"] = _window(str(doc["window"]))
        except argparse.ArgumentTypeError as exc:
            raise ConfigError(str(exc)) from None
    for key in ("algebra", "level", "depth", "nmax", "lam", "window"):
        val = getattr(args, key)
        if val is not None:
            opts[key] = val
    if opts["depth"] < 0:
        raise ConfigError("depth must be >= 0")
    if opts["nmax"] < 0:
        raise ConfigError("nmax must be >= 0")
    return config, opts


def _poly_json(p) -> list[str]:
    return [str(c) for c in p.coeffs]


def cmd_basis(config: PointConfig, opts: dict) -> tuple[dict, int]:
    table = KNBasisTable(config)
    lo, hi = opts["window"] or (-2, 2)
    elements = []
    for n in range(lo, hi + 1):
        for p in table.labels():
            el = table.element(opts["lam"], n, p)
            elements.append(
                {
                    "n": n,
                    "p": p,
                    "numerator": _poly_json(el.form.rep.num),
                    "denominator": _poly_json(el.form.rep.den),
                    "form": str(el.form.rep),
                    "orders": {format_point(P): o for P, o in el.orders.items()},
                }
            )
    return {"config": config.to_json(), "lambda": opts["lam"], "elements": elements}, 0


def _constants_json(table, constants, degrees) -> list[dict]:
    idx = [(n, p) for n in degrees for p in table.labels()]
    out = []
    for a, b in itertools.product(idx, repeat=2):
        if constants is bracket_constants and a >= b:
            continue
        if constants is product_constants and a > b:
            continue
        vals = constants(table, a, b)
        out.append(
            {
                "a": list(a),
                "b": list(b),
                "value": [{"index": list(h), "coef": str(c)} for h, c in sorted(vals.items())],
            }
        )
    return out


def cmd_tables(config: PointConfig, opts: dict) -> tuple[dict, int]:
    table = KNBasisTable(config)
    lo, hi = opts["window"] or (-3, 3)
    degrees = list(range(lo, hi + 1))
    doc = {"config": config.to_json(), "window": [lo, hi]}
    if degrees:
        R, S = almost_grading_bounds(table, degrees)
        chi = vectorfield_cocycle_table(table, degrees)
        doc.update(
            {
                "R": R,
                "S": S,
                "brackets": _constants_json(table, bracket_constants, degrees),
                "products": _constants_json(table, product_constants, degrees),
                "cocycle": table_to_json(chi),
                "bound_T": locality_bound(chi),
            }
        )
    return doc, 0


def cmd_kappa(config: PointConfig, opts: dict) -> tuple[dict, int]:
    g = parse_algebra(opts["algebra"])
    return {"algebra": opts["algebra"], "dim": g.dim, "kappa": str(kappa(g))}, 0


def cmd_verify(config: PointConfig, opts: dict) -> tuple[dict, int]:
    g = parse_algebra(opts["algebra"])
    level, depth, nmax = opts["level"], opts["depth"], opts["nmax"]
    expected = central_charge(level, g)
    required = 2 * nmax
    if required > depth:
        raise DepthExceeded(f"nmax {nmax} needs depth >= {required}, got {depth}")
    table = KNBasisTable(config)
    module = vacuum_module(table, g, level, depth)
    window = [(k, s) for k in range(-nmax, nmax + 1) for s in table.labels()]
    report = {
        "config": config.to_json(),
        "algebra": opts["algebra"],
        "level": str(level),
        "depth": depth,
        "nmax": nmax,
        "required_headroom": required,
    }
    coeffs = SugawaraCoefficients(table)
    currents = 0
    current_failures = []
    for k, s in window:
        L = SugawaraOperator(module, k, s, coeffs)
        for n in range(-nmax, nmax + 1):
            for p in table.labels():
                for x in range(g.dim):
                    currents += 1
                    if verify_current_commutator(module, L, x, (n, p)):
                        current_failures.append({"k": [k, s], "x": x, "n": [n, p]})
    report["current_commutator"] = {"checked": currents, "failures": current_failures}
    ok = not current_failures
    if config == PointConfig.classical() and opts["algebra"] == "abelian:1" and level == 1:
        fock = classical_virasoro_check(depth, nmax)
        report["fock"] = fock
        ok = ok and fock["pass"]
    try:
        report.update(verify_virasoro(module, window))
    except VERIFICATION as exc:
        report.update({"pass": False, "error": f"{type(exc).__name__}: {exc}", "expected": str(expected)})
        return report, 3
    report["pass"] = bool(ok and report["pass"])
    return report, 0 if report["pass"] else 3


COMMANDS = {"basis": cmd_basis, "tables": cmd_tables, "kappa": cmd_kappa, "verify": cmd_verify}


def _emit(doc: dict, out: Path | None) -> None:
    text = json.dumps(doc, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _glue_window(argv: list[str]) -> list[str]:
    # "--window -2:2" would otherwise read -2:2 as an option
    out = []
    it = iter(argv)
    for a in it:
        if a == "--window":
            out.append("--window=" + next(it, ""))
        else:
            out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_window(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
        config, opts = resolve(args)
    except (UsageError, ConfigError, BadDimension) as exc:
        _emit({"error": f"{type(exc).__name__}: {exc}"}, None)
        return 1
    try:
        doc, code = COMMANDS[args.command](config, opts)
    except (ConfigError, BadDimension) as exc:
        doc, code = {"error": f"{type(exc).__name__}: {exc}"}, 1
    except PRECONDITION as exc:
        doc, code = {"error": f"{type(exc).__name__}: {exc}"}, 2
    _emit(doc, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
