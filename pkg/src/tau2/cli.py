"""Command-line front end.

Subcommands:

    analyze <presentation>                structural report
    experiment <config>                   seeded estimates as CSV
    encode <presentation> <equations>     emit the integer constraint system
    odot <presentation> <a> <b> --window T   window check of the ring encoding

Exit codes are stable: 0 success, 1 usage/parse error, 2 precondition
failure, 3 budget exceeded, 4 internal invariant violation.  All output is
deterministic given the inputs and seed; no timestamps are ever emitted
(pass --version-header for an identifying first line).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .core import (
    element_from_text,
    invariant_report,
    load_presentation,
)
from .dioph import (
    box_solve,
    encode_system,
    format_system,
    parse_equations,
    ring_window_report,
)
from .errors import (
    BudgetExceededError,
    InternalInvariantError,
    ParseError,
    PreconditionError,
    Tau2Error,
)
from .randmodel import (
    DEFAULT_ENUM_BUDGET,
    POLYCYCLIC_PROPERTIES,
    TAU2_PROPERTIES,
    PolycyclicModelParams,
    Tau2ModelParams,
    exact_fraction,
    montecarlo,
    wilson_interval,
)
from .structure import format_structure_report, structure_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we want exit 1
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="tau2", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=None, help="override config/experiment seed")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for trials")
    parser.add_argument("--out", default=None, help="write output to a file instead of stdout")
    parser.add_argument(
        "--version-header",
        action="store_true",
        help="prefix output with a '# tau2 <version>' line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="structural report for a presentation file")
    p_an.add_argument("presentation")

    p_ex = sub.add_parser("experiment", help="run a seeded experiment config, emit CSV")
    p_ex.add_argument("config")

    p_en = sub.add_parser("encode", help="encode group equations as an integer system")
    p_en.add_argument("presentation")
    p_en.add_argument("equations")
    p_en.add_argument("--box", type=int, default=None, help="also enumerate solutions in [-B, B]")

    p_od = sub.add_parser("odot", help="verify the ring encoding on a window")
    p_od.add_argument("presentation")
    p_od.add_argument("a", help="first base element, e.g. a1")
    p_od.add_argument("b", help="second base element, e.g. a2")
    p_od.add_argument("--window", type=int, default=5)
    return parser


def _emit(args, text: str):
    if args.version_header:
        text = f"# tau2 {__version__}\n" + text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    p = load_presentation(args.presentation)
    report = structure_report(p)
    inv = invariant_report(p)
    if not (inv.span_identity_holds and inv.sandwich_holds):
        raise InternalInvariantError("rank identities failed for a valid presentation")
    text = format_structure_report(report)
    text += f"rank_g_mod_center = {inv.rank_g_mod_center}\n"
    text += f"rank_g_mod_c = {inv.rank_g_mod_c}\n"
    text += f"span_identity_holds = {'true' if inv.span_identity_holds else 'false'}\n"
    text += f"sandwich_holds = {'true' if inv.sandwich_holds else 'false'}\n"
    _emit(args, text)
    return EXIT_OK


# -- experiment configs ---------------------------------------------------------
#
#   model = tau2 | polycyclic | nilpotent
#   n = 3
#   m = 2              (tau2 only)
#   s = inf inf inf    (polycyclic models; optional, default all inf)
#   ell = 1 2 3
#   properties = center_is_C regular
#   trials = 10000
#   seed = 7
#   mode = mc | exact | auto     (default mc; exact/auto are tau2-only)


def _parse_config(text: str) -> dict:
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, val = line.partition("=")
        if not eq:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno)
        key = key.strip()
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", lineno)
        fields[key] = val.strip()

    def split_list(s: str) -> list[str]:
        return [tok for tok in s.replace(",", " ").split() if tok]

    cfg: dict = {}
    model = fields.get("model", "tau2")
    if model not in ("tau2", "polycyclic", "nilpotent"):
        raise ParseError(f"unknown model {model!r}")
    cfg["model"] = model
    try:
        cfg["n"] = int(fields["n"])
    except KeyError:
        raise ParseError("config must set n")
    except ValueError:
        raise ParseError("n must be an integer")
    if model == "tau2":
        try:
            cfg["m"] = int(fields["m"])
        except KeyError:
            raise ParseError("tau2 config must set m")
        except ValueError:
            raise ParseError("m must be an integer")
    else:
        s_text = fields.get("s", "")
        if s_text:
            entries = split_list(s_text)
            if len(entries) != cfg["n"]:
                raise ParseError(f"s must list {cfg['n']} entries")
            cfg["s"] = tuple(None if e in ("inf", "none") else int(e) for e in entries)
        else:
            cfg["s"] = (None,) * cfg["n"]
    try:
        cfg["ell"] = [int(x) for x in split_list(fields["ell"])]
    except KeyError:
        raise ParseError("config must set ell")
    except ValueError:
        raise ParseError("ell entries must be integers")
    if not cfg["ell"]:
        raise ParseError("ell list must not be empty")
    try:
        cfg["properties"] = split_list(fields["properties"])
    except KeyError:
        raise ParseError("config must set properties")
    if not cfg["properties"]:
        raise ParseError("properties list must not be empty")
    registry = TAU2_PROPERTIES if model == "tau2" else POLYCYCLIC_PROPERTIES
    for prop in cfg["properties"]:
        if prop not in registry:
            raise ParseError(f"unknown property {prop!r} for model {model}")
    try:
        cfg["trials"] = int(fields["trials"])
    except KeyError:
        raise ParseError("config must set trials")
    except ValueError:
        raise ParseError("trials must be an integer")
    if cfg["trials"] < 1:
        raise ParseError("trials must be >= 1")
    try:
        cfg["seed"] = int(fields.get("seed", "0"))
    except ValueError:
        raise ParseError("seed must be an integer")
    mode = fields.get("mode", "mc")
    if mode not in ("mc", "exact", "auto"):
        raise ParseError(f"unknown mode {mode!r}")
    if mode in ("exact", "auto") and model != "tau2":
        raise ParseError("exact enumeration is only supported for the tau2 model")
    cfg["mode"] = mode
    return cfg


def _float(x: float) -> str:
    return repr(float(x))


def cmd_experiment(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = _parse_config(fh.read())
    seed = args.seed if args.seed is not None else cfg["seed"]
    rows = ["property,ell,mode,trials,successes,estimate,fraction,ci_low,ci_high,seed"]
    for prop in cfg["properties"]:
        for ell in cfg["ell"]:
            if cfg["model"] == "tau2":
                params = Tau2ModelParams(cfg["n"], cfg["m"], ell)
                mode = cfg["mode"]
                if mode == "auto":
                    mode = "exact" if params.sample_space_size <= DEFAULT_ENUM_BUDGET else "mc"
            else:
                params = PolycyclicModelParams(cfg["n"], cfg["s"], ell, cfg["model"])
                mode = "mc"
            if mode == "exact":
                hits, total = exact_fraction(prop, params)
                frac = Fraction(hits, total) if total else Fraction(0)
                est = hits / total
                low, high = wilson_interval(hits, total)
                rows.append(
                    f"{prop},{ell},exact,{total},{hits},{_float(est)},"
                    f"{frac.numerator}/{frac.denominator},{_float(low)},{_float(high)},{seed}"
                )
            else:
                res = montecarlo(prop, params, cfg["trials"], seed, threads=args.threads)
                frac = Fraction(res.successes, res.trials)
                rows.append(
                    f"{prop},{ell},mc,{res.trials},{res.successes},{_float(res.estimate)},"
                    f"{frac.numerator}/{frac.denominator},{_float(res.ci_low)},"
                    f"{_float(res.ci_high)},{seed}"
                )
    _emit(args, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_encode(args) -> int:
    p = load_presentation(args.presentation)
    with open(args.equations, "r", encoding="utf-8") as fh:
        eq_text = fh.read()
    system = encode_system(p, parse_equations(p, eq_text))
    text = format_system(system)
    if args.box is not None:
        solutions = box_solve(system, args.box)
        text += f"# solutions in box [-{args.box}, {args.box}]: {len(solutions)}\n"
        for sol in solutions:
            assigns = " ".join(f"{v}={sol[v]}" for v in system.variables)
            text += f"# solution: {assigns}\n"
    _emit(args, text)
    return EXIT_OK


def cmd_odot(args) -> int:
    p = load_presentation(args.presentation)
    a = element_from_text(p, args.a)
    b = element_from_text(p, args.b)
    if args.window < 0:
        raise PreconditionError("window must be >= 0")
    failures = ring_window_report(p, a, b, args.window)
    lines = []
    for f in failures:
        lines.append(f"FAIL t1={f.t1} t2={f.t2}: {f.reason}")
    points = (2 * args.window + 1) ** 2
    if failures:
        lines.append(f"FAIL {len(failures)}/{points} window points")
        _emit(args, "\n".join(lines) + "\n")
        raise InternalInvariantError("ring window verification failed")
    lines.append(f"PASS {points}/{points} window points (window {args.window})")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "experiment":
            return cmd_experiment(args)
        if args.command == "encode":
            return cmd_encode(args)
        if args.command == "odot":
            return cmd_odot(args)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Tau2Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
